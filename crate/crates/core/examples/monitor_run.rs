//! Monitoring one seeded trace three ways: the decentralized protocol, the
//! formula-forwarding baseline and a central observer.

use progtab::monitor::{centralized, plan, run, run_baseline, Monitor, Topology};
use progtab::parse;
use progtab::patterns::gen_trace;
use progtab::table::CountMode;

fn main() -> Result<(), progtab::Error> {
    let f = parse("G (!a0 | F (b0 & c0))")?;
    let topo: Topology = "A:a0;B:b0;C:c0".parse()?;
    let trace = gen_trace(&topo.alphabet(), 12, 42);
    let p = plan(&f, &topo, CountMode::StepOnly)?;

    let mut m = Monitor::new(&p);
    for (t, step) in trace.steps.iter().take(4).enumerate() {
        let out = m.step(&topo.split(step))?;
        println!("step {t}: {step:?}");
        for msg in &out.messages {
            let facts: Vec<String> = msg
                .facts
                .iter()
                .map(|f| format!("{}@{}={}", f.atom, f.step, f.value))
                .collect();
            println!("  {} -> {}  [{}]", msg.from, msg.to, facts.join(", "));
        }
    }

    let (v, metrics) = run(&p, &trace)?;
    let (vb, baseline) = run_baseline(&f, &topo, &trace)?;
    let (vc, len) = centralized(&f, &trace);
    println!("\ndecentralized {v}  {metrics:?}");
    println!("baseline      {vb}  {baseline:?}");
    println!("centralized   {vc}  after {len} steps");
    Ok(())
}
