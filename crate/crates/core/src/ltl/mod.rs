//! LTL syntax trees, three-valued observations and the rewriting primitives
//! (simplification, substitution, renaming, one-step expansion and
//! progression) everything else in the crate is built on.

mod parse;
mod rewrite;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse, ParseError};
pub use rewrite::{
    expand_step, progress, progress_by, rename, simplify, strip_residues, substitute,
    substitute_atoms, substitute_step_atoms,
};

/// An LTL formula over named atomic propositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn constant(value: bool) -> Self {
        if value {
            Formula::True
        } else {
            Formula::False
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn globally(f: Formula) -> Self {
        Formula::Globally(Box::new(f))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula::Until(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction of `items`; `true` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction of `items`; `false` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::True | Formula::False)
    }

    pub fn as_constant(&self) -> Option<bool> {
        match self {
            Formula::True => Some(true),
            Formula::False => Some(false),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => vec![],
            Formula::Not(f) | Formula::Next(f) | Formula::Eventually(f) | Formula::Globally(f) => {
                vec![f]
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) => vec![l, r],
        }
    }

    /// The set of atoms occurring anywhere in the formula.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(true, &mut out);
        out
    }

    /// Atoms occurring outside every `X` subformula (the step-`t` propositions).
    pub fn step_props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(false, &mut out);
        out
    }

    fn collect_atoms(&self, into_residues: bool, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Next(_) if !into_residues => {}
            _ => {
                for c in self.children() {
                    c.collect_atoms(into_residues, out);
                }
            }
        }
    }

    pub fn contains_atom(&self, name: &str) -> bool {
        match self {
            Formula::Atom(a) => a == name,
            _ => self.children().into_iter().any(|c| c.contains_atom(name)),
        }
    }

    /// True when `name` occurs outside every `X` subformula.
    pub fn contains_step_atom(&self, name: &str) -> bool {
        match self {
            Formula::Atom(a) => a == name,
            Formula::Next(_) => false,
            _ => self
                .children()
                .into_iter()
                .any(|c| c.contains_step_atom(name)),
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    pub fn is_temporal(&self) -> bool {
        match self {
            Formula::Next(_)
            | Formula::Eventually(_)
            | Formula::Globally(_)
            | Formula::Until(..) => true,
            _ => self.children().into_iter().any(Formula::is_temporal),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Until(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) | Formula::Next(_) | Formula::Eventually(_) | Formula::Globally(_) => 3,
            Formula::True | Formula::False | Formula::Atom(_) => 4,
        }
    }

    fn write_at(&self, min_prec: u8, out: &mut String) {
        let paren = self.precedence() < min_prec;
        if paren {
            out.push('(');
        }
        match self {
            Formula::True => out.push_str("true"),
            Formula::False => out.push_str("false"),
            Formula::Atom(a) => out.push_str(a),
            Formula::Not(f) => {
                out.push('!');
                f.write_at(3, out);
            }
            Formula::Next(f) => unary(out, "X ", f),
            Formula::Eventually(f) => unary(out, "F ", f),
            Formula::Globally(f) => unary(out, "G ", f),
            Formula::And(l, r) => binary(out, l, " & ", r, 2, 3),
            Formula::Or(l, r) => binary(out, l, " | ", r, 1, 2),
            Formula::Until(l, r) => binary(out, l, " U ", r, 1, 0),
        }
        if paren {
            out.push(')');
        }
    }
}

fn unary(out: &mut String, op: &str, f: &Formula) {
    out.push_str(op);
    f.write_at(3, out);
}

fn binary(out: &mut String, l: &Formula, op: &str, r: &Formula, lp: u8, rp: u8) {
    l.write_at(lp, out);
    out.push_str(op);
    r.write_at(rp, out);
}

/// Canonical text with minimal parentheses; `parse(render(f)) == f`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    f.write_at(0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A value of the three-valued truth domain.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub enum Truth3 {
    #[default]
    Unknown,
    Bot,
    Top,
}

impl Truth3 {
    /// Enumeration order used by tables: `?`, `⊥`, `⊤`.
    pub const ALL: [Truth3; 3] = [Truth3::Unknown, Truth3::Bot, Truth3::Top];

    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth3::Top
        } else {
            Truth3::Bot
        }
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Truth3::Top => Some(true),
            Truth3::Bot => Some(false),
            Truth3::Unknown => None,
        }
    }

    pub fn is_definite(self) -> bool {
        self != Truth3::Unknown
    }

    /// Single-character code: `?`, `F` or `T`.
    pub fn code(self) -> char {
        match self {
            Truth3::Unknown => '?',
            Truth3::Bot => 'F',
            Truth3::Top => 'T',
        }
    }
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Truth3::Unknown => "?",
            Truth3::Bot => "⊥",
            Truth3::Top => "⊤",
        };
        f.write_str(s)
    }
}

/// Atom name to observed value. Missing atoms read as `Unknown`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<String, Truth3>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// All `atoms` mapped to `Unknown`.
    pub fn unknown<'a>(atoms: impl IntoIterator<Item = &'a String>) -> Self {
        Assignment(
            atoms
                .into_iter()
                .map(|a| (a.clone(), Truth3::Unknown))
                .collect(),
        )
    }

    pub fn get(&self, atom: &str) -> Truth3 {
        self.0.get(atom).copied().unwrap_or_default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: Truth3) {
        self.0.insert(atom.into(), value);
    }

    pub fn with(mut self, atom: impl Into<String>, value: Truth3) -> Self {
        self.set(atom, value);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, Truth3)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    /// Entries holding a definite value.
    pub fn definite(&self) -> impl Iterator<Item = (&String, bool)> {
        self.0
            .iter()
            .filter_map(|(k, v)| v.definite().map(|b| (k, b)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, Truth3)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (String, Truth3)>>(iter: T) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl From<&BTreeMap<String, bool>> for Assignment {
    fn from(m: &BTreeMap<String, bool>) -> Self {
        m.iter()
            .map(|(k, v)| (k.clone(), Truth3::from_bool(*v)))
            .collect()
    }
}

/// The observation of one process at one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub process: String,
    pub props: BTreeMap<String, bool>,
}

/// One global step: a definite value for every atom of the global alphabet.
pub type Step = BTreeMap<String, bool>;

/// A finite global trace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn new(steps: Vec<Step>) -> Self {
        Trace { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Reads JSON Lines: one object per step mapping atom to boolean.
    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let steps = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<Vec<Step>, _>>()?;
        Ok(Trace { steps })
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("map of bools serializes"));
            out.push('\n');
        }
        out
    }
}
