use std::collections::{BTreeSet, VecDeque};

use crate::error::Result;
use crate::ltl::{simplify, substitute_atoms, Formula, Step, Trace, Truth3};

use super::{parse_pending, progress_known, verdict_of, RunMetrics, Topology};

struct Local {
    atoms: BTreeSet<String>,
    /// `(step, values)` for the last few steps, newest last.
    history: VecDeque<(usize, Step)>,
    obligation: Formula,
}

impl Local {
    fn lookup(&self, atom: &str, step: usize) -> Option<bool> {
        if !self.atoms.contains(atom) {
            return None;
        }
        self.history
            .iter()
            .find(|(s, _)| *s == step)
            .and_then(|(_, v)| v.get(atom).copied())
    }

    fn resolve_own(&self, f: &Formula) -> Formula {
        simplify(&substitute_atoms(f, |a| {
            let (base, s) = parse_pending(a)?;
            self.lookup(base, s).map(Formula::constant)
        }))
    }
}

/// Formula-forwarding baseline on a static alphabetical ring: every process
/// progresses the obligation it holds with its own values only and passes the
/// whole rewritten formula to its successor, which takes it over and resolves
/// any of its own values still pending in it.
pub fn run_baseline(f: &Formula, topo: &Topology, trace: &Trace) -> Result<(Truth3, RunMetrics)> {
    topo.check_covers(f)?;
    let props = f.props();
    let mut procs: Vec<(&str, Local)> = topo
        .processes
        .iter()
        .map(|p| {
            (
                p.id.as_str(),
                Local {
                    atoms: p.alphabet.intersection(&props).cloned().collect(),
                    history: VecDeque::new(),
                    obligation: f.clone(),
                },
            )
        })
        .collect();
    procs.sort_by(|a, b| a.0.cmp(b.0));
    let n = procs.len();

    let mut metrics = RunMetrics::default();
    let mut verdict = Truth3::Unknown;
    for (t, step) in trace.steps.iter().enumerate() {
        let events = topo.split(step);
        let by_id = topo.index_events(&events)?;
        let mut sent = Vec::with_capacity(n);
        for (id, local) in procs.iter_mut() {
            let own: Step = by_id[*id]
                .props
                .iter()
                .filter(|(a, _)| local.atoms.contains(*a))
                .map(|(a, v)| (a.clone(), *v))
                .collect();
            local.history.push_back((t, own));
            if local.history.len() > n {
                local.history.pop_front();
            }
            let l: &Local = local;
            sent.push(progress_known(&l.obligation, t, |a, s| l.lookup(a, s)));
        }
        metrics.trace_len += 1;
        verdict = verdict_of(&sent);

        let mut mem = 0u64;
        for (i, (_, local)) in procs.iter_mut().enumerate() {
            // The sender hands its obligation over and keeps nothing.
            let incoming = &sent[(i + n - 1) % n];
            local.obligation = local.resolve_own(incoming);
            mem += local.obligation.size() as u64 * 8;
            let entries: usize = local.history.iter().map(|(_, v)| v.len()).sum();
            mem += entries as u64 * 2;
        }
        metrics.mem_bits = metrics.mem_bits.max(mem);
        if n > 1 {
            for s in &sent {
                metrics.msg_count += 1;
                metrics.msg_bits += s.size() as u64 * 8;
            }
        }
        if !verdict.is_definite() {
            let obligations: Vec<Formula> =
                procs.iter().map(|(_, l)| l.obligation.clone()).collect();
            verdict = verdict_of(&obligations);
        }
        if verdict.is_definite() {
            break;
        }
    }
    Ok((verdict, metrics))
}
