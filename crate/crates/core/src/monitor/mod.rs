//! Decentralized monitoring: topologies, the setup plan (weights, factors,
//! ring, triggers), the synchronous run loop, a centralized oracle and a
//! formula-forwarding baseline.
//!
//! A process that cannot see an atom at step `t` keeps it symbolic as the
//! pending atom `name@t`; values arriving later resolve it.

mod baseline;
mod plan;
mod run;
mod topology;

use serde::Serialize;

use crate::ltl::{progress, progress_by, Assignment, Formula, Trace, Truth3};

pub use baseline::run_baseline;
pub use plan::{obligation_parts, plan, plan_with_cap, Factor, MonitorPlan};
pub use run::{run, Fact, Message, Monitor, MonitorState, StepOutcome};
pub use topology::{Process, Topology};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RunMetrics {
    pub msg_count: u64,
    pub msg_bits: u64,
    pub trace_len: u64,
    pub mem_bits: u64,
}

/// `⌈log2 |AP|⌉ + 1` bits for one atom and its value.
pub(crate) fn fact_bits(alphabet: usize) -> u64 {
    let mut bits = 0;
    while (1usize << bits) < alphabet {
        bits += 1;
    }
    bits as u64 + 1
}

pub fn pending_name(atom: &str, step: usize) -> String {
    format!("{atom}@{step}")
}

/// Splits a pending atom into its base name and step.
pub fn parse_pending(name: &str) -> Option<(&str, usize)> {
    let (a, s) = name.split_once('@')?;
    Some((a, s.parse().ok()?))
}

/// Progresses `obl` at step `t`. `known(atom, step)` gives the values
/// available; step atoms without a value become pending.
pub(crate) fn progress_known(
    obl: &Formula,
    t: usize,
    known: impl Fn(&str, usize) -> Option<bool>,
) -> Formula {
    progress_by(obl, |a| match parse_pending(a) {
        Some((base, s)) => known(base, s).map(Formula::constant),
        None => Some(match known(a, t) {
            Some(v) => Formula::constant(v),
            None => Formula::atom(pending_name(a, t)),
        }),
    })
}

/// The constant reached by the first obligation that reached one.
pub(crate) fn verdict_of(obligations: &[Formula]) -> Truth3 {
    obligations
        .iter()
        .find_map(Formula::as_constant)
        .map_or(Truth3::Unknown, Truth3::from_bool)
}

/// Progresses `f` through the whole trace with full observation. Returns the
/// verdict and the number of steps consumed.
pub fn centralized(f: &Formula, trace: &Trace) -> (Truth3, usize) {
    let mut obl = f.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        obl = progress(&obl, &Assignment::from(step));
        if let Some(v) = obl.as_constant() {
            return (Truth3::from_bool(v), i + 1);
        }
    }
    (Truth3::Unknown, trace.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{parse, Step};
    use crate::table::CountMode;

    fn trace(steps: &[&[(&str, bool)]]) -> Trace {
        Trace::new(
            steps
                .iter()
                .map(|s| s.iter().map(|(a, v)| (a.to_string(), *v)).collect::<Step>())
                .collect(),
        )
    }

    #[test]
    fn bits_per_fact() {
        assert_eq!(fact_bits(1), 1);
        assert_eq!(fact_bits(2), 2);
        assert_eq!(fact_bits(5), 4);
        assert_eq!(fact_bits(8), 4);
    }

    #[test]
    fn centralized_examples() {
        let f = parse("F a").unwrap();
        assert_eq!(
            centralized(&f, &trace(&[&[("a", false)], &[("a", true)]])),
            (Truth3::Top, 2)
        );
        let g = parse("G a").unwrap();
        assert_eq!(
            centralized(&g, &trace(&[&[("a", true)], &[("a", false)]])),
            (Truth3::Bot, 2)
        );
        let fg = parse("F G a").unwrap();
        assert_eq!(
            centralized(&fg, &trace(&[&[("a", true)][..]; 6])).0,
            Truth3::Unknown
        );
    }

    #[test]
    fn pending_atoms_resolve() {
        let f = parse("G (a & b)").unwrap();
        let pending = progress_known(&f, 0, |a, _| (a == "a").then_some(true));
        assert!(pending.contains_atom("b@0"));
        let resolved = progress_known(&pending, 1, |a, s| match (a, s) {
            ("b", 0) => Some(false),
            _ => None,
        });
        assert_eq!(resolved, Formula::False);
    }

    #[test]
    fn single_atom_verdict_without_messages() {
        let f = parse("F a").unwrap();
        let p = plan(&f, &"A:a".parse().unwrap(), CountMode::StepOnly).unwrap();
        let (v, m) = run(&p, &trace(&[&[("a", true)]])).unwrap();
        assert_eq!(v, Truth3::Top);
        assert_eq!(m.msg_count, 0);
        assert_eq!(m.msg_bits, 0);
        assert_eq!(m.trace_len, 1);
    }

    #[test]
    fn conjunction_sends_one_atom() {
        let f = parse("F (a1 & a2 & b1 & b2)").unwrap();
        let p = plan(&f, &"A:a1,a2;B:b1,b2".parse().unwrap(), CountMode::StepOnly).unwrap();
        let mut m = Monitor::new(&p);
        let step = trace(&[&[("a1", false), ("a2", true), ("b1", true), ("b2", true)]]);
        let out = m.step(&p.topology.split(&step.steps[0])).unwrap();
        let from_a = out.messages.iter().find(|m| m.from == "A").unwrap();
        assert_eq!(from_a.facts.len(), 1);
        assert_eq!(from_a.facts[0].atom, "a1");
        assert!(!from_a.facts[0].value);
    }

    #[test]
    fn same_step_violation() {
        let f = parse("G (a & b)").unwrap();
        let p = plan(&f, &"A:a;B:b".parse().unwrap(), CountMode::StepOnly).unwrap();
        let t = trace(&[&[("a", true), ("b", false)]]);
        assert_eq!(run(&p, &t).unwrap().0, Truth3::Bot);
        assert_eq!(centralized(&f, &t).0, Truth3::Bot);
        assert_eq!(run_baseline(&f, &p.topology, &t).unwrap().0, Truth3::Bot);
    }

    #[test]
    fn event_alphabets_are_checked() {
        let f = parse("a & b").unwrap();
        let p = plan(&f, &"A:a;B:b".parse().unwrap(), CountMode::StepOnly).unwrap();
        let mut m = Monitor::new(&p);
        let bad = vec![crate::ltl::Event {
            process: "A".into(),
            props: [("a".to_string(), true)].into(),
        }];
        assert!(m.step(&bad).is_err());
    }

    #[test]
    fn late_values_resolve_through_relay() {
        // Three processes: C's value has to travel two hops to reach A.
        let f = parse("X false | (a & b & c)").unwrap();
        let p = plan(&f, &"A:a;B:b;C:c".parse().unwrap(), CountMode::StepOnly).unwrap();
        let t = trace(&[
            &[("a", true), ("b", true), ("c", true)],
            &[("a", true), ("b", true), ("c", true)],
            &[("a", true), ("b", true), ("c", true)],
        ]);
        let (v, m) = run(&p, &t).unwrap();
        assert_eq!(v, centralized(&f, &t).0);
        assert!(m.trace_len <= 3);
    }
}
