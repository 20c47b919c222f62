use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::ltl::{Assignment, Event, Formula, Trace, Truth3};

use super::{fact_bits, progress_known, verdict_of, MonitorPlan, RunMetrics};

/// A definite value of `atom` observed at step `step`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Fact {
    pub atom: String,
    pub value: bool,
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Message {
    pub from: String,
    pub to: String,
    pub step: usize,
    pub facts: Vec<Fact>,
}

/// Per-process monitor state, indexed by ring position.
#[derive(Debug, Clone)]
pub struct MonitorState {
    pub t: usize,
    pub obligations: Vec<Formula>,
    /// Values known for the current step; cleared after progression.
    pub knowledge: Vec<Assignment>,
    /// Facts received last step, to be passed on.
    pub relay: Vec<Vec<Fact>>,
    pub verdict: Truth3,
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub messages: Vec<Message>,
    pub verdict: Truth3,
}

pub struct Monitor<'a> {
    plan: &'a MonitorPlan,
    state: MonitorState,
    bits_per_fact: u64,
}

impl<'a> Monitor<'a> {
    pub fn new(plan: &'a MonitorPlan) -> Self {
        let n = plan.ring.len();
        Monitor {
            plan,
            state: MonitorState {
                t: 0,
                obligations: vec![plan.formula.clone(); n],
                knowledge: vec![Assignment::new(); n],
                relay: vec![Vec::new(); n],
                verdict: Truth3::Unknown,
            },
            bits_per_fact: fact_bits(plan.topology.alphabet().len()),
        }
    }

    pub fn state(&self) -> &MonitorState {
        &self.state
    }

    /// One synchronous round. Returns the messages sent and the verdict.
    pub fn step(&mut self, events: &[Event]) -> Result<StepOutcome> {
        let (outcome, _) = self.step_measured(events)?;
        Ok(outcome)
    }

    fn step_measured(&mut self, events: &[Event]) -> Result<(StepOutcome, u64)> {
        let plan = self.plan;
        let by_id = plan.topology.index_events(events)?;
        let n = plan.ring.len();
        let t = self.state.t;
        let props = plan.formula.props();

        for (i, id) in plan.ring.iter().enumerate() {
            let e = by_id[id.as_str()];
            self.state.knowledge[i] = e
                .props
                .iter()
                .filter(|(a, _)| props.contains(*a))
                .map(|(a, v)| (a.clone(), Truth3::from_bool(*v)))
                .collect();
        }

        let mut messages = Vec::new();
        if n > 1 {
            for (i, id) in plan.ring.iter().enumerate() {
                let local = &self.state.knowledge[i];
                let to = &plan.ring[(i + 1) % n];
                let mut facts: Vec<Fact> = plan
                    .minimal_atoms(local)
                    .into_iter()
                    .filter_map(|a| {
                        local.get(&a).definite().map(|value| Fact {
                            atom: a,
                            value,
                            step: t,
                        })
                    })
                    .collect();
                facts.extend(
                    self.state.relay[i]
                        .iter()
                        .filter(|f| plan.topology.owner(&f.atom) != Some(to.as_str()))
                        .cloned(),
                );
                messages.push(Message {
                    from: id.clone(),
                    to: to.clone(),
                    step: t,
                    facts,
                });
            }
        }

        let mut received: Vec<Vec<Fact>> = vec![Vec::new(); n];
        for (i, m) in messages.iter().enumerate() {
            received[(i + 1) % n] = m.facts.clone();
        }
        // Values held during the step: local ones, facts just received and
        // the relay buffer from the previous step.
        let held: usize = self
            .state
            .knowledge
            .iter()
            .map(Assignment::len)
            .sum::<usize>()
            + self.state.relay.iter().map(Vec::len).sum::<usize>()
            + received.iter().map(Vec::len).sum::<usize>();
        for (i, facts) in received.iter().enumerate() {
            for f in facts.iter().filter(|f| f.step == t) {
                self.state.knowledge[i].set(f.atom.clone(), Truth3::from_bool(f.value));
            }
        }

        for (i, facts) in received.into_iter().enumerate() {
            let past: BTreeMap<(&str, usize), bool> = facts
                .iter()
                .map(|f| ((f.atom.as_str(), f.step), f.value))
                .collect();
            let now = &self.state.knowledge[i];
            self.state.obligations[i] = progress_known(&self.state.obligations[i], t, |a, s| {
                if s == t {
                    now.get(a).definite()
                } else {
                    past.get(&(a, s)).copied()
                }
            });
            self.state.relay[i] = facts;
            self.state.knowledge[i] = Assignment::new();
        }

        let obligations: usize = self.state.obligations.iter().map(Formula::size).sum();
        let mem = obligations as u64 * 8 + held as u64 * 2;

        self.state.t += 1;
        if self.state.verdict == Truth3::Unknown {
            self.state.verdict = verdict_of(&self.state.obligations);
        }
        Ok((
            StepOutcome {
                messages,
                verdict: self.state.verdict,
            },
            mem,
        ))
    }

    fn header_and_payload(&self, m: &Message) -> u64 {
        8 + m.facts.len() as u64 * self.bits_per_fact
    }
}

/// Runs the decentralized monitor over `trace` until a verdict or the end.
pub fn run(plan: &MonitorPlan, trace: &Trace) -> Result<(Truth3, RunMetrics)> {
    let mut m = Monitor::new(plan);
    let mut metrics = RunMetrics::default();
    let mut verdict = Truth3::Unknown;
    for step in &trace.steps {
        let events = plan.topology.split(step);
        let (outcome, mem) = m.step_measured(&events)?;
        metrics.trace_len += 1;
        metrics.mem_bits = metrics.mem_bits.max(mem);
        for msg in &outcome.messages {
            metrics.msg_bits += m.header_and_payload(msg);
            if !msg.facts.is_empty() {
                metrics.msg_count += 1;
            }
        }
        verdict = outcome.verdict;
        if verdict.is_definite() {
            break;
        }
    }
    Ok((verdict, metrics))
}
