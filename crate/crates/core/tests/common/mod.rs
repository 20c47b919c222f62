#![allow(dead_code)]

use std::collections::BTreeMap;

use progtab::ltl::{Formula, Step, Trace};
use progtab::synth::SumOfProducts;
use rand::Rng;

pub fn atoms(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random formula over `atoms`; temporal operators only when `temporal`.
pub fn random_formula(rng: &mut impl Rng, atoms: &[String], depth: u32, temporal: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..12) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())].clone()),
        };
    }
    let ops = if temporal { 8 } else { 3 };
    let sub = |rng: &mut _| random_formula(rng, atoms, depth - 1, temporal);
    match rng.gen_range(0..ops) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::next(sub(rng)),
        4 => Formula::eventually(sub(rng)),
        5 => Formula::globally(sub(rng)),
        6 => Formula::until(sub(rng), sub(rng)),
        _ => Formula::and(sub(rng), sub(rng)),
    }
}

/// Boolean value of `f` when every step of the trace equals `v`: under a
/// constant trace every temporal operator collapses onto its operand.
pub fn eval_constant(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => v[a],
        Formula::Not(g) => !eval_constant(g, v),
        Formula::And(l, r) => eval_constant(l, v) && eval_constant(r, v),
        Formula::Or(l, r) => eval_constant(l, v) || eval_constant(r, v),
        Formula::Next(g) | Formula::Eventually(g) | Formula::Globally(g) => eval_constant(g, v),
        Formula::Until(_, r) => eval_constant(r, v),
    }
}

/// Truth of `f` at position `i` of the infinite word `prefix · cycle^ω`.
/// Positions are `0..prefix.len() + cycle.len()`; the last one loops back to
/// the start of the cycle.
pub fn eval_lasso(f: &Formula, prefix: &[Step], cycle: &[Step], i: usize) -> bool {
    let len = prefix.len() + cycle.len();
    let succ = |k: usize| if k + 1 < len { k + 1 } else { prefix.len() };
    let path = |mut k: usize| {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(k);
            k = succ(k);
        }
        out
    };
    let ev = |g: &Formula, k: usize| eval_lasso(g, prefix, cycle, k);
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => {
            let step = if i < prefix.len() {
                &prefix[i]
            } else {
                &cycle[i - prefix.len()]
            };
            step[a]
        }
        Formula::Not(g) => !ev(g, i),
        Formula::And(l, r) => ev(l, i) && ev(r, i),
        Formula::Or(l, r) => ev(l, i) || ev(r, i),
        Formula::Next(g) => ev(g, succ(i)),
        Formula::Eventually(g) => path(i).into_iter().any(|k| ev(g, k)),
        Formula::Globally(g) => path(i).into_iter().all(|k| ev(g, k)),
        Formula::Until(l, r) => {
            for k in path(i) {
                if ev(r, k) {
                    return true;
                }
                if !ev(l, k) {
                    return false;
                }
            }
            false
        }
    }
}

/// Every assignment of `vars` to booleans.
pub fn all_valuations(vars: &[String]) -> impl Iterator<Item = BTreeMap<String, bool>> + '_ {
    (0..1u32 << vars.len()).map(move |bits| {
        vars.iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), bits >> i & 1 == 1))
            .collect()
    })
}

/// Evaluates a sum of products directly from its literals.
pub fn sop_holds(s: &SumOfProducts, v: &BTreeMap<String, bool>) -> bool {
    s.terms
        .iter()
        .any(|t| t.literals().all(|l| v.get(l.atom) == Some(&l.positive)))
}

pub fn random_trace(rng: &mut impl Rng, atoms: &[String], len: usize) -> Trace {
    Trace::new(
        (0..len)
            .map(|_| {
                atoms
                    .iter()
                    .map(|a| (a.clone(), rng.gen::<bool>()))
                    .collect()
            })
            .collect(),
    )
}
