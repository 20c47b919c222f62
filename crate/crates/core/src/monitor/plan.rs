use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::equiv::{
    equivalent_partition, extend_boolean_unchecked, extend_weights, reduce, ExtendedWeight,
    ReductionMap,
};
use crate::error::{Error, Result};
use crate::ltl::{Assignment, Formula, Truth3};
use crate::synth::{ranked_terms, synthesize, SumOfProducts};
use crate::table::{
    build_table_with_cap, influence_weights, row_result, CountMode, Mode, DEFAULT_VARIABLE_CAP,
};

use super::Topology;

/// Sum of a process's influence weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub value: f64,
    pub exact: Option<Ratio<u64>>,
}

impl Factor {
    fn cmp_desc(&self, other: &Factor) -> Ordering {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => b.cmp(&a),
            _ => other.value.total_cmp(&self.value),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MonitorPlan {
    pub formula: Formula,
    pub topology: Topology,
    pub count_mode: CountMode,
    pub reduction: ReductionMap,
    pub weights: BTreeMap<String, ExtendedWeight>,
    pub factors: BTreeMap<String, Factor>,
    /// Process ids in send order; the last one sends to the first.
    pub ring: Vec<String>,
    pub triggers: Vec<SumOfProducts>,
    /// Reduced results whose trigger could not be extended.
    pub skipped_targets: Vec<Formula>,
    residues: Vec<Formula>,
}

/// `f`, its `F`/`G`/`U` subformulas and the operands of its `X` nodes: every
/// formula an obligation can be built from.
pub fn obligation_parts(f: &Formula) -> Vec<Formula> {
    fn walk(g: &Formula, out: &mut BTreeSet<Formula>) {
        match g {
            Formula::Eventually(_) | Formula::Globally(_) | Formula::Until(..) => {
                out.insert(g.clone());
            }
            Formula::Next(h) => {
                out.insert((**h).clone());
            }
            _ => {}
        }
        for c in g.children() {
            walk(c, out);
        }
    }
    let mut set = BTreeSet::new();
    set.insert(f.clone());
    walk(f, &mut set);
    set.into_iter().collect()
}

pub fn plan(f: &Formula, topo: &Topology, cm: CountMode) -> Result<MonitorPlan> {
    plan_with_cap(f, topo, cm, DEFAULT_VARIABLE_CAP)
}

pub fn plan_with_cap(
    f: &Formula,
    topo: &Topology,
    cm: CountMode,
    cap: usize,
) -> Result<MonitorPlan> {
    topo.check_covers(f)?;
    let rm = reduce(f, &equivalent_partition(f));
    let reduced_table = build_table_with_cap(&rm.reduced, Mode::Progression, cap)?;

    let n = f.props().len();
    let weights = if n <= cap && !rm.is_trivial() {
        let full = build_table_with_cap(f, Mode::Progression, cap)?;
        exact_weights(&influence_weights(&full, cm))
    } else if rm.is_trivial() {
        exact_weights(&influence_weights(&reduced_table, cm))
    } else {
        extend_weights(&rm, &influence_weights(&reduced_table, cm), cm)?
    };

    let mut triggers = Vec::new();
    let mut skipped_targets = Vec::new();
    for target in reduced_table.results() {
        let sop = synthesize(&reduced_table, target)?;
        if rm.is_trivial() {
            triggers.push(sop);
            continue;
        }
        match extend_boolean_unchecked(&sop, target, &rm) {
            Ok((ext, _)) => triggers.push(ext),
            Err(Error::AsymmetricTarget(_)) => skipped_targets.push(target.clone()),
            Err(e) => return Err(e),
        }
    }

    let factors: BTreeMap<String, Factor> = topo
        .processes
        .iter()
        .map(|p| {
            let ws: Vec<&ExtendedWeight> =
                p.alphabet.iter().filter_map(|a| weights.get(a)).collect();
            let value = ws.iter().map(|w| w.value).sum();
            let exact = ws
                .iter()
                .map(|w| w.exact.map(|x| x.ratio()))
                .try_fold(Ratio::from_integer(0u64), |acc, r| r.map(|r| acc + r));
            (p.id.clone(), Factor { value, exact })
        })
        .collect();
    let mut ring: Vec<String> = topo.processes.iter().map(|p| p.id.clone()).collect();
    ring.sort_by(|a, b| factors[a].cmp_desc(&factors[b]).then_with(|| a.cmp(b)));

    Ok(MonitorPlan {
        formula: f.clone(),
        topology: topo.clone(),
        count_mode: cm,
        reduction: rm,
        weights,
        factors,
        ring,
        triggers,
        skipped_targets,
        residues: obligation_parts(f),
    })
}

fn exact_weights(w: &BTreeMap<String, crate::table::Weight>) -> BTreeMap<String, ExtendedWeight> {
    w.iter()
        .map(|(a, w)| {
            let r = w.ratio();
            let reduced = crate::table::Weight {
                numerator: *r.numer(),
                denominator: *r.denom(),
                mode: w.mode,
            };
            (
                a.clone(),
                ExtendedWeight {
                    value: w.value(),
                    exact: Some(reduced),
                    approximate: false,
                },
            )
        })
        .collect()
}

impl MonitorPlan {
    pub fn ring_position(&self, id: &str) -> Option<usize> {
        self.ring.iter().position(|p| p == id)
    }

    pub fn successor(&self, id: &str) -> Option<&str> {
        let i = self.ring_position(id)?;
        Some(&self.ring[(i + 1) % self.ring.len()])
    }

    /// The atoms a process must send given its local values this step: the
    /// smallest satisfied trigger term that fixes every obligation part the
    /// same way the full local assignment does, or every local atom of the
    /// formula when no term qualifies.
    pub fn minimal_atoms(&self, local: &Assignment) -> BTreeSet<String> {
        let props = self.formula.props();
        let relevant: Assignment = local
            .iter()
            .filter(|(a, v)| props.contains(*a) && v.is_definite())
            .map(|(a, v)| (a.clone(), v))
            .collect();
        if relevant.is_empty() {
            return BTreeSet::new();
        }
        let current = row_result(&self.formula, Mode::Progression, &relevant);
        let reference: Vec<Formula> = self
            .residues
            .iter()
            .map(|h| row_result(h, Mode::Progression, &relevant))
            .collect();
        for term in ranked_terms(&self.triggers, &relevant, &current) {
            let partial: Assignment = term
                .literals()
                .map(|l| (l.atom.to_string(), Truth3::from_bool(l.positive)))
                .collect();
            let sufficient = self
                .residues
                .iter()
                .zip(&reference)
                .all(|(h, r)| row_result(h, Mode::Progression, &partial) == *r);
            if sufficient {
                return term.atoms().cloned().collect();
            }
        }
        relevant.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn trigger_for(&self, target: &Formula) -> Option<&SumOfProducts> {
        self.triggers.iter().find(|s| s.target == *target)
    }

    /// Ring order, weights as `num/den`, factors and rendered triggers.
    pub fn to_json(&self) -> Value {
        let frac = |w: &ExtendedWeight| match w.exact {
            Some(x) => Value::String(x.to_string()),
            None => json!(w.value),
        };
        json!({
            "formula": self.formula.to_string(),
            "reduced": self.reduction.reduced.to_string(),
            "classes": self.reduction.partition.classes,
            "count_mode": self.count_mode.to_string(),
            "ring": self.ring,
            "weights": self.weights.iter().map(|(a, w)| (a.clone(), json!({
                "weight": frac(w),
                "value": w.value,
                "approximate": w.approximate,
            }))).collect::<serde_json::Map<_, _>>(),
            "factors": self.factors.iter().map(|(p, f)| (p.clone(), match f.exact {
                Some(r) => Value::String(r.to_string()),
                None => json!(f.value),
            })).collect::<serde_json::Map<_, _>>(),
            "triggers": self.triggers.iter().map(|s| json!({
                "target": s.target.to_string(),
                "expression": s.to_string(),
            })).collect::<Vec<_>>(),
            "skipped_targets": self.skipped_targets.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}
