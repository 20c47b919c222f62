//! Sum-of-products trigger expressions synthesized from table rows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ltl::{Assignment, Formula, Truth3};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal<'a> {
    pub atom: &'a str,
    pub positive: bool,
}

/// A conjunction of signed atoms. The empty term is constant true.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(BTreeMap<String, bool>);

impl Term {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_literals<S: Into<String>>(lits: impl IntoIterator<Item = (S, bool)>) -> Self {
        Term(lits.into_iter().map(|(a, s)| (a.into(), s)).collect())
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal<'_>> {
        self.0.iter().map(|(a, s)| Literal {
            atom: a,
            positive: *s,
        })
    }

    pub fn sign(&self, atom: &str) -> Option<bool> {
        self.0.get(atom).copied()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, atom: impl Into<String>, positive: bool) {
        self.0.insert(atom.into(), positive);
    }

    pub fn remove(&mut self, atom: &str) -> Option<bool> {
        self.0.remove(atom)
    }

    /// Every literal holds under `k`; `Unknown` satisfies no literal.
    pub fn satisfied_by(&self, k: &Assignment) -> bool {
        self.0.iter().all(|(a, s)| k.get(a).definite() == Some(*s))
    }

    pub fn eval(&self, values: &BTreeMap<String, bool>) -> bool {
        self.0.iter().all(|(a, s)| values.get(a) == Some(s))
    }

    /// `self`'s literals are a subset of `other`'s.
    pub fn subsumes(&self, other: &Term) -> bool {
        self.0.iter().all(|(a, s)| other.0.get(a) == Some(s))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and_all(self.0.iter().map(|(a, s)| {
            let atom = Formula::atom(a.clone());
            if *s {
                atom
            } else {
                Formula::not(atom)
            }
        }))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("true");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(a, s)| if *s { a.clone() } else { format!("!{a}") })
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

/// A trigger expression: the configurations under which the table's formula
/// becomes `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumOfProducts {
    pub target: Formula,
    pub terms: BTreeSet<Term>,
}

impl SumOfProducts {
    pub fn new(target: Formula, terms: impl IntoIterator<Item = Term>) -> Self {
        SumOfProducts {
            target,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn eval(&self, values: &BTreeMap<String, bool>) -> bool {
        self.terms.iter().any(|t| t.eval(values))
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.terms.iter().flat_map(|t| t.atoms().cloned()).collect()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::or_all(self.terms.iter().map(Term::to_formula))
    }
}

impl fmt::Display for SumOfProducts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("false");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.len() > 1 && self.terms.len() > 1 {
                    format!("({t})")
                } else {
                    t.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

/// Raw row terms for `target`, then minimized. Every matching row's definite
/// assignment is checked to satisfy the result.
pub fn synthesize(t: &Table, target: &Formula) -> Result<SumOfProducts> {
    let raw: Vec<(Term, &crate::table::TableRow)> = t
        .rows
        .iter()
        .filter(|r| r.result == *target)
        .map(|r| {
            let term = Term(
                t.vars
                    .iter()
                    .zip(&r.config)
                    .filter_map(|(v, c)| c.definite().map(|b| (v.clone(), b)))
                    .collect(),
            );
            (term, r)
        })
        .collect();
    if raw.is_empty() {
        return Err(Error::TargetNotInTable(target.to_string()));
    }
    let sop = minimize(&SumOfProducts::new(
        target.clone(),
        raw.iter().map(|(t, _)| t.clone()),
    ));
    for (_, row) in &raw {
        debug_assert!(
            sop.terms
                .iter()
                .any(|term| term.satisfied_by(&t.assignment(row))),
            "row lost during minimization"
        );
    }
    Ok(sop)
}

/// Drops every term that is a superset of another term.
pub fn absorb(terms: BTreeSet<Term>) -> BTreeSet<Term> {
    let mut by_len: Vec<Term> = terms.into_iter().collect();
    by_len.sort_by_key(Term::len);
    let mut kept: Vec<Term> = Vec::new();
    for t in by_len {
        if !kept.iter().any(|k| k.subsumes(&t)) {
            kept.push(t);
        }
    }
    kept.into_iter().collect()
}

/// Complement-merge (`xP + !xP -> P`) and absorption (`P + PQ -> P`) to a
/// fixpoint.
pub fn minimize(s: &SumOfProducts) -> SumOfProducts {
    let mut terms = absorb(s.terms.clone());
    loop {
        let list: Vec<&Term> = terms.iter().collect();
        let mut merged = BTreeSet::new();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if let Some(m) = complement_merge(a, b) {
                    merged.insert(m);
                }
            }
        }
        let before = terms.len();
        let had_new = merged.iter().any(|m| !terms.contains(m));
        terms.extend(merged);
        terms = absorb(terms);
        if !had_new && terms.len() == before {
            break;
        }
    }
    SumOfProducts {
        target: s.target.clone(),
        terms,
    }
}

fn complement_merge(a: &Term, b: &Term) -> Option<Term> {
    if a.len() != b.len() {
        return None;
    }
    let mut pivot = None;
    for (atom, sa) in &a.0 {
        match b.0.get(atom) {
            Some(sb) if sb == sa => {}
            Some(_) if pivot.is_none() => pivot = Some(atom),
            _ => return None,
        }
    }
    let pivot = pivot?;
    let mut out = a.clone();
    out.0.remove(pivot);
    Some(out)
}

/// Terms of `s` satisfied by the definite values of `k`.
pub fn eval_terms<'a>(s: &'a SumOfProducts, k: &Assignment) -> Vec<&'a Term> {
    s.terms.iter().filter(|t| t.satisfied_by(k)).collect()
}

/// Satisfied terms across the SOPs whose target is `current`, smallest first
/// (ties by rendered text).
pub fn ranked_terms<'a>(
    all_sops: &'a [SumOfProducts],
    k: &Assignment,
    current: &Formula,
) -> Vec<&'a Term> {
    let mut l: Vec<&Term> = all_sops
        .iter()
        .filter(|s| s.target == *current)
        .flat_map(|s| eval_terms(s, k))
        .collect();
    l.sort_by_cached_key(|t| (t.len(), t.to_string()));
    l.dedup();
    l
}

/// The atoms of the smallest satisfied term, or every definite atom of `k`
/// when no term fires.
pub fn minimal_set(
    all_sops: &[SumOfProducts],
    k: &Assignment,
    current: &Formula,
) -> BTreeSet<String> {
    match ranked_terms(all_sops, k, current).first() {
        Some(t) => t.atoms().cloned().collect(),
        None => k
            .iter()
            .filter(|(_, v)| *v != Truth3::Unknown)
            .map(|(a, _)| a.clone())
            .collect(),
    }
}
