//! Working on the reduced formula and extending the results back: trigger
//! expressions through the extension rules, weights through the power rule.

use std::collections::BTreeMap;

use progtab::equiv::{equivalent_partition, extend_boolean, extend_weights, reduce};
use progtab::ltl::simplify;
use progtab::parse;
use progtab::synth::synthesize;
use progtab::table::{build_table, CountMode, Mode, Weight};

fn main() -> Result<(), progtab::Error> {
    let f = parse("F (a1 & a2 & a3 & a4 & a5) | G (b1 & b2 & b3 & b4)")?;
    let rm = reduce(&f, &equivalent_partition(&f));
    println!("original {f}");
    println!("reduced  {}", rm.reduced);

    let t = build_table(&rm.reduced, Mode::Progression)?;
    for target in [parse("true")?, simplify(&parse("X F (a1 & a2)")?)] {
        let b = synthesize(&t, &target)?;
        let (ext, ext_target) = extend_boolean(&b, &target, &rm)?;
        println!(
            "\n{target}\n  reduced  {b}\n  extended {ext_target}: {} terms\n  {ext}",
            ext.terms.len()
        );
    }

    // Weights stated for the reduced formula: the a-class has weight one and
    // each b-variable two thirds.
    let w = |numerator, denominator| Weight {
        numerator,
        denominator,
        mode: CountMode::StepOnly,
    };
    let reduced_weights = BTreeMap::from([
        ("a1".to_string(), w(1, 1)),
        ("a2".to_string(), w(1, 1)),
        ("b1".to_string(), w(2, 3)),
        ("b2".to_string(), w(2, 3)),
    ]);
    println!();
    for (atom, ew) in extend_weights(&rm, &reduced_weights, CountMode::StepOnly)? {
        let exact = ew.exact.map(|x| x.to_string()).unwrap_or_default();
        println!("  {atom:<3} {exact:>9} {:.6}", ew.value);
    }
    Ok(())
}
