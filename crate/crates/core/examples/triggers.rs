//! Trigger expressions: for every result of a progression table, the
//! minimized sum of products of the configurations that produce it, and the
//! smallest set of values a process has to share.

use progtab::ltl::{Assignment, Truth3};
use progtab::parse;
use progtab::synth::{minimal_set, synthesize};
use progtab::table::{build_table, row_result, Mode};

fn main() -> Result<(), progtab::Error> {
    let f = parse("F (a1 & a2 & b1 & b2)")?;
    let t = build_table(&f, Mode::Progression)?;
    let mut sops = Vec::new();
    for target in t.results() {
        let s = synthesize(&t, target)?;
        println!("{:<40} <= {}", target.to_string(), s);
        sops.push(s);
    }

    let local = Assignment::new()
        .with("a1", Truth3::Bot)
        .with("a2", Truth3::Top);
    let current = row_result(&f, Mode::Progression, &local);
    println!("\nlocal a1=⊥ a2=⊤ gives {current}");
    println!(
        "values to share: {:?}",
        minimal_set(&sops, &local, &current)
    );
    Ok(())
}
