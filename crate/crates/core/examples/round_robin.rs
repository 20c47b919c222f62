//! The setup phase for a three-process system: weights, influence factors
//! and the resulting communication ring, exported as JSON.

use progtab::monitor::{plan, Topology};
use progtab::parse;
use progtab::table::CountMode;

fn main() -> Result<(), progtab::Error> {
    let f = parse("F (b | (a1 & a2 & c))")?;
    let topo: Topology = "A:a1,a2;B:b;C:c".parse()?;
    let p = plan(&f, &topo, CountMode::StepOnly)?;

    for (id, factor) in &p.factors {
        let exact = factor.exact.map(|r| r.to_string()).unwrap_or_default();
        println!("IF({id}) = {exact}");
    }
    println!("ring: {} -> {}", p.ring.join(" -> "), p.ring[0]);
    println!("{}", serde_json::to_string_pretty(&p.to_json()).unwrap());
    Ok(())
}
