//! Variables with equivalent logical influence: detection, contraction of a
//! formula to two representatives per class, and extension of results on
//! the contracted formula back to the original.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ltl::{rename, simplify, substitute_atoms, Assignment, Formula, Truth3};
use crate::synth::{absorb, SumOfProducts, Term};
use crate::table::{build_table, row_result, CountMode, Mode, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalencePartition {
    /// Each class has at least two atoms and is sorted.
    pub classes: Vec<Vec<String>>,
    pub singletons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub original: Formula,
    pub reduced: Formula,
    pub partition: EquivalencePartition,
    /// `(r1, r2)` per class, in class order.
    pub representatives: Vec<(String, String)>,
    pub dropped: Vec<Vec<String>>,
}

impl ReductionMap {
    pub fn is_trivial(&self) -> bool {
        self.dropped.iter().all(Vec::is_empty)
    }

    /// The class index of `atom`, if it belongs to one.
    pub fn class_of(&self, atom: &str) -> Option<usize> {
        self.partition
            .classes
            .iter()
            .position(|c| c.iter().any(|a| a == atom))
    }
}

/// Swaps two atoms everywhere; no simplification.
pub fn swap(f: &Formula, a: &str, b: &str) -> Formula {
    substitute_atoms(f, |x| {
        if x == a {
            Some(Formula::atom(b))
        } else if x == b {
            Some(Formula::atom(a))
        } else {
            None
        }
    })
}

fn step_with(f: &Formula, atom: &str, value: bool) -> Formula {
    row_result(
        f,
        Mode::Progression,
        &Assignment::new().with(atom, Truth3::from_bool(value)),
    )
}

/// Whether `a` and `b` have equivalent influence on `f`: fixing either one
/// to the same truth value gives the same one-step result up to exchanging
/// the two names.
pub fn equivalent(f: &Formula, a: &str, b: &str) -> bool {
    [true, false].into_iter().all(|v| {
        let lhs = step_with(f, a, v);
        let rhs = simplify(&swap(&step_with(f, b, v), a, b));
        lhs == rhs
    })
}

pub fn equivalent_partition(f: &Formula) -> EquivalencePartition {
    let atoms: Vec<String> = f.props().into_iter().collect();
    let mut taken = vec![false; atoms.len()];
    let mut classes = Vec::new();
    let mut singletons = Vec::new();
    for i in 0..atoms.len() {
        if taken[i] {
            continue;
        }
        taken[i] = true;
        let mut class = vec![atoms[i].clone()];
        for j in i + 1..atoms.len() {
            if !taken[j] && equivalent(f, &atoms[i], &atoms[j]) {
                taken[j] = true;
                class.push(atoms[j].clone());
            }
        }
        if class.len() > 1 {
            classes.push(class);
        } else {
            singletons.extend(class);
        }
    }
    EquivalencePartition {
        classes,
        singletons,
    }
}

/// Keeps the two smallest atoms of each class and renames the rest to the
/// first of them.
pub fn reduce(f: &Formula, p: &EquivalencePartition) -> ReductionMap {
    let mut reduced = f.clone();
    let mut representatives = Vec::new();
    let mut dropped = Vec::new();
    for class in &p.classes {
        let mut sorted = class.clone();
        sorted.sort();
        let (r1, r2) = (sorted[0].clone(), sorted[1].clone());
        for d in &sorted[2..] {
            reduced = rename(&reduced, d, &r1);
        }
        dropped.push(sorted[2..].to_vec());
        representatives.push((r1, r2));
    }
    ReductionMap {
        original: f.clone(),
        reduced: simplify(&reduced),
        partition: p.clone(),
        representatives,
        dropped,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedWeight {
    pub value: f64,
    /// Present when the fraction is known exactly and fits in `u64`.
    pub exact: Option<Weight>,
    /// Inherited from the representative without a supporting result.
    pub approximate: bool,
}

fn ratio_pow(r: Ratio<u64>, e: u32) -> Option<Ratio<u64>> {
    Some(Ratio::new_raw(
        r.numer().checked_pow(e)?,
        r.denom().checked_pow(e)?,
    ))
}

/// Lifts weights of `rm.reduced` to every atom of `rm.original`.
pub fn extend_weights(
    rm: &ReductionMap,
    w_reduced: &BTreeMap<String, Weight>,
    cm: CountMode,
) -> Result<BTreeMap<String, ExtendedWeight>> {
    if let Some(w) = w_reduced.values().find(|w| w.mode != cm) {
        return Err(Error::ModeMismatch {
            expected: cm,
            found: w.mode,
        });
    }
    let lookup = |a: &str| {
        w_reduced
            .get(a)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(a.to_string()))
    };
    let props = rm.original.props();
    let kept = rm.reduced.props();
    let n = props.len() as u32;
    let all_in_classes = rm.partition.singletons.is_empty() && !rm.partition.classes.is_empty();
    let mut out = BTreeMap::new();
    for atom in &props {
        let source = match rm.class_of(atom) {
            Some(c) => &rm.representatives[c].0,
            None => atom,
        };
        // Simplification removed the atom: it has no influence at all.
        let w = if kept.contains(source) {
            lookup(source)?
        } else {
            Weight {
                numerator: 0,
                denominator: 1,
                mode: cm,
            }
        };
        let exact = |r: Ratio<u64>| ExtendedWeight {
            value: *r.numer() as f64 / *r.denom() as f64,
            exact: Some(Weight {
                numerator: *r.numer(),
                denominator: *r.denom(),
                mode: cm,
            }),
            approximate: false,
        };
        let ext = if w.is_one() || rm.class_of(atom).is_none() {
            exact(w.ratio())
        } else if all_in_classes {
            let base = w.ratio();
            match ratio_pow(base, n - 1) {
                Some(r) => exact(r),
                None => ExtendedWeight {
                    value: w.value().powi(n as i32 - 1),
                    exact: None,
                    approximate: false,
                },
            }
        } else {
            ExtendedWeight {
                value: w.value(),
                exact: Some(w),
                approximate: true,
            }
        };
        out.insert(atom.clone(), ext);
    }
    Ok(out)
}

/// Inserts every dropped atom next to `r1` in each `&`/`|` chain that holds
/// `r1` but not `r2`.
fn extend_target(f: &Formula, r1: &str, r2: &str, dropped: &[String]) -> Formula {
    fn chain(f: &Formula, and: bool, out: &mut Vec<Formula>) {
        match (f, and) {
            (Formula::And(l, r), true) | (Formula::Or(l, r), false) => {
                chain(l, and, out);
                chain(r, and, out);
            }
            _ => out.push(f.clone()),
        }
    }
    let rec = |g: &Formula| extend_target(g, r1, r2, dropped);
    match f {
        Formula::And(..) | Formula::Or(..) => {
            let and = matches!(f, Formula::And(..));
            let mut ops = Vec::new();
            chain(f, and, &mut ops);
            let mut out = Vec::new();
            for op in ops {
                let (has1, has2) = (op.contains_atom(r1), op.contains_atom(r2));
                if has1 && !has2 {
                    out.extend(dropped.iter().map(|d| rename(&op, r1, d)));
                    out.push(op);
                } else if has1 && has2 {
                    out.push(rec(&op));
                } else {
                    out.push(op);
                }
            }
            if and {
                Formula::and_all(out)
            } else {
                Formula::or_all(out)
            }
        }
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(rec(g)),
        Formula::Next(g) => Formula::next(rec(g)),
        Formula::Eventually(g) => Formula::eventually(rec(g)),
        Formula::Globally(g) => Formula::globally(rec(g)),
        Formula::Until(l, r) => Formula::until(rec(l), rec(r)),
    }
}

fn extend_terms(terms: &BTreeSet<Term>, r1: &str, r2: &str, dropped: &[String]) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for t in terms {
        out.insert(t.clone());
        match (t.sign(r1), t.sign(r2)) {
            (Some(s), None) | (None, Some(s)) => {
                let rep = if t.sign(r1).is_some() { r1 } else { r2 };
                for d in dropped {
                    let mut copy = t.clone();
                    copy.remove(rep);
                    copy.insert(d.clone(), s);
                    out.insert(copy);
                }
            }
            (Some(s1), Some(s2)) if s1 == s2 => {
                let mut grown = t.clone();
                for d in dropped {
                    grown.insert(d.clone(), s1);
                }
                out.remove(t);
                out.insert(grown);
            }
            _ => {}
        }
    }
    out
}

/// Extends a trigger expression synthesized on the reduced table, without
/// checking that `target` is one of its results.
pub fn extend_boolean_unchecked(
    b: &SumOfProducts,
    target: &Formula,
    rm: &ReductionMap,
) -> Result<(SumOfProducts, Formula)> {
    let mut terms = b.terms.clone();
    let mut target_out = target.clone();
    for ((r1, r2), dropped) in rm.representatives.iter().zip(&rm.dropped) {
        if dropped.is_empty() {
            continue;
        }
        if target.contains_atom(r1) || target.contains_atom(r2) {
            if simplify(&swap(target, r1, r2)) != *target {
                return Err(Error::AsymmetricTarget(target.to_string()));
            }
            target_out = extend_target(&target_out, r1, r2, dropped);
        }
        terms = extend_terms(&terms, r1, r2, dropped);
    }
    let target_out = simplify(&target_out);
    Ok((
        SumOfProducts {
            target: target_out.clone(),
            terms: absorb(terms),
        },
        target_out,
    ))
}

/// Extends `b`, the trigger of `target` on the reduced formula's progression
/// table, to the original formula. Returns the new expression and target.
pub fn extend_boolean(
    b: &SumOfProducts,
    target: &Formula,
    rm: &ReductionMap,
) -> Result<(SumOfProducts, Formula)> {
    let table = build_table(&rm.reduced, Mode::Progression)?;
    if !table.rows.iter().any(|r| r.result == *target) {
        return Err(Error::NotAReducedTarget(target.to_string()));
    }
    extend_boolean_unchecked(b, target, rm)
}
