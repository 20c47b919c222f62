//! Detecting variables with equivalent influence and contracting them.

use progtab::equiv::{equivalent_partition, reduce};
use progtab::parse;

fn main() -> Result<(), progtab::Error> {
    for text in [
        "a | (b & c)",
        "F (a & b) | G (c & d)",
        "F (a & b) | G (a & c)",
        "F (b | (a1 & a2 & c))",
        "G (a1 & a2 & a3 & a4) | F (b1 & b2 & b3)",
    ] {
        let f = parse(text)?;
        let p = equivalent_partition(&f);
        let rm = reduce(&f, &p);
        println!("{text}");
        println!("  classes    {:?}", p.classes);
        println!("  singletons {:?}", p.singletons);
        println!(
            "  reduced    {} ({} -> {} variables)",
            rm.reduced,
            f.props().len(),
            rm.reduced.props().len()
        );
    }
    Ok(())
}
