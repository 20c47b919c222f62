//! Specification-pattern templates and seeded random traces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ltl::{parse, substitute_atoms, Formula, Step, Trace};
use crate::monitor::Topology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PatternClass {
    Absence,
    Existence,
    BoundedExistence,
    Universal,
    Precedence,
    Response,
    PrecedenceChain,
    ResponseChain,
    ConstrainedChain,
}

impl PatternClass {
    pub const ALL: [PatternClass; 9] = [
        PatternClass::Absence,
        PatternClass::Existence,
        PatternClass::BoundedExistence,
        PatternClass::Universal,
        PatternClass::Precedence,
        PatternClass::Response,
        PatternClass::PrecedenceChain,
        PatternClass::ResponseChain,
        PatternClass::ConstrainedChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternClass::Absence => "absence",
            PatternClass::Existence => "existence",
            PatternClass::BoundedExistence => "bounded-existence",
            PatternClass::Universal => "universal",
            PatternClass::Precedence => "precedence",
            PatternClass::Response => "response",
            PatternClass::PrecedenceChain => "precedence-chain",
            PatternClass::ResponseChain => "response-chain",
            PatternClass::ConstrainedChain => "constrained-chain",
        }
    }

    /// Templates over the placeholders `p q r s t z`. Implication is written
    /// as `!a | b` and `a W b` as `(a U b) | G a`.
    pub fn templates(self) -> &'static [&'static str] {
        match self {
            PatternClass::Absence => &["G !p", "G (!q | G !p)", "!F r | (!p U r)"],
            PatternClass::Existence => &["F p", "!F r | (!r U (p & !r))", "G !q | F (q & F p)"],
            PatternClass::BoundedExistence => &[
                "(!p U ((p U ((!p U ((p U G !p) | G p)) | G !p)) | G p)) | G !p",
                "(!p U ((p U G !p) | G p)) | G !p",
            ],
            PatternClass::Universal => &["G p", "G (!q | G p)", "!F r | (p U r)"],
            PatternClass::Precedence => &["(!p U s) | G !p", "G !q | F (q & ((!p U s) | G !p))"],
            PatternClass::Response => &["G (!p | F s)", "G (!q | G (!p | F s))"],
            PatternClass::PrecedenceChain => &["!F p | (!p U (s & !p & X (!p U t)))"],
            PatternClass::ResponseChain => &["G (!(s & X F t) | X F (t & F p))"],
            PatternClass::ConstrainedChain => &["G (!p | F (s & !z & X (!z U t)))"],
        }
    }
}

impl fmt::Display for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PatternClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = PatternClass::ALL.iter().map(|c| c.name()).collect();
                format!(
                    "unknown pattern class `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Templates of `class` that do not parse in the formula grammar.
pub fn skipped_templates(class: PatternClass) -> Vec<&'static str> {
    class
        .templates()
        .iter()
        .copied()
        .filter(|t| parse(t).is_err())
        .collect()
}

/// Picks a template of `class` and instantiates its placeholders with
/// distinct atoms of the topology, all choices drawn from `seed`.
pub fn gen_pattern(class: PatternClass, topo: &Topology, seed: u64) -> Result<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<String> = topo.alphabet().into_iter().collect();
    let mut order: Vec<&str> = class.templates().to_vec();
    order.shuffle(&mut rng);
    let mut short = None;
    for text in order {
        let Ok(template) = parse(text) else { continue };
        let params: Vec<String> = template.props().into_iter().collect();
        if params.len() > atoms.len() {
            short.get_or_insert(params.len());
            continue;
        }
        let chosen: Vec<&String> = atoms.choose_multiple(&mut rng, params.len()).collect();
        let binding: BTreeMap<&str, &String> =
            params.iter().map(String::as_str).zip(chosen).collect();
        return Ok(substitute_atoms(&template, |a| {
            binding.get(a).map(|b| Formula::atom(b.as_str()))
        }));
    }
    match short {
        Some(needed) => Err(Error::NotEnoughAtoms {
            class: class.to_string(),
            needed,
            available: atoms.len(),
        }),
        None => Err(Error::NotExpressible(class.to_string())),
    }
}

/// Independent uniform values for every atom at every step.
pub fn gen_trace(alphabet: &BTreeSet<String>, len: usize, seed: u64) -> Trace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Trace::new(
        (0..len)
            .map(|_| {
                alphabet
                    .iter()
                    .map(|a| (a.clone(), rng.gen::<bool>()))
                    .collect::<Step>()
            })
            .collect(),
    )
}

/// `procs` processes named `A`, `B`, ... each observing `per_process`
/// atoms named after it (`a0`, `a1`, ...).
pub fn lettered_topology(procs: usize, per_process: usize) -> Result<Topology> {
    Topology::new((0..procs).map(|i| {
        let upper = letter(i, b'A');
        let lower = letter(i, b'a');
        (upper, (0..per_process).map(move |j| format!("{lower}{j}")))
    }))
}

fn letter(i: usize, base: u8) -> String {
    if i < 26 {
        ((base + i as u8) as char).to_string()
    } else {
        format!("{}{}", (base + (i % 26) as u8) as char, i / 26)
    }
}
