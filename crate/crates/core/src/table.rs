//! Exhaustive three-valued tables of a formula and the influence measures
//! read off them.
//!
//! A table has one row per assignment of `{?, ⊥, ⊤}` to the formula's
//! variables, in lexicographic order with the first variable most
//! significant. In [`Mode::Progression`] the formula is expanded one step
//! first, and the `X`-wrapped residues are treated as opaque.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ltl::{
    expand_step, simplify, substitute_atoms, substitute_step_atoms, Assignment, Formula, Truth3,
};

pub const DEFAULT_VARIABLE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Propositional,
    Progression,
}

/// How occurrences are counted for influence weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum CountMode {
    /// Only occurrences outside `X` residues.
    #[default]
    StepOnly,
    /// Occurrences anywhere, residues included.
    Full,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::StepOnly => "step",
            CountMode::Full => "full",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub config: Vec<Truth3>,
    pub result: Formula,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub vars: Vec<String>,
    pub mode: Mode,
    pub rows: Vec<TableRow>,
}

/// An influence weight `f_a / C_{a=?}` kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub numerator: u64,
    pub denominator: u64,
    pub mode: CountMode,
}

impl Weight {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.numerator, self.denominator)
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// The configuration for row `index` of an `n`-variable table.
pub fn config_at(index: usize, n: usize) -> Vec<Truth3> {
    let mut config = vec![Truth3::Unknown; n];
    let mut rest = index;
    for slot in config.iter_mut().rev() {
        *slot = Truth3::ALL[rest % 3];
        rest /= 3;
    }
    config
}

/// Inverse of [`config_at`].
pub fn index_of(config: &[Truth3]) -> usize {
    config.iter().fold(0, |acc, v| {
        acc * 3
            + match v {
                Truth3::Unknown => 0,
                Truth3::Bot => 1,
                Truth3::Top => 2,
            }
    })
}

/// The row result for one configuration without materializing the table.
pub fn row_result(f: &Formula, mode: Mode, values: &Assignment) -> Formula {
    let lookup = |a: &str| values.get(a).definite().map(Formula::constant);
    match mode {
        Mode::Propositional => simplify(&substitute_atoms(f, lookup)),
        Mode::Progression => simplify(&substitute_step_atoms(&expand_step(f), lookup)),
    }
}

/// Builds the table of `f` with the default variable cap.
pub fn build_table(f: &Formula, mode: Mode) -> Result<Table> {
    build_table_with_cap(f, mode, DEFAULT_VARIABLE_CAP)
}

pub fn build_table_with_cap(f: &Formula, mode: Mode, cap: usize) -> Result<Table> {
    let vars: Vec<String> = f.props().into_iter().collect();
    let n = vars.len();
    if n > cap {
        return Err(Error::VariableCapExceeded(n, cap));
    }
    let rows = (0..3usize.pow(n as u32))
        .into_par_iter()
        .map(|i| {
            let config = config_at(i, n);
            let values: Assignment = vars.iter().cloned().zip(config.iter().copied()).collect();
            TableRow {
                result: row_result(f, mode, &values),
                config,
            }
        })
        .collect();
    Ok(Table { vars, mode, rows })
}

impl Table {
    pub fn position(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub fn assignment(&self, row: &TableRow) -> Assignment {
        self.vars
            .iter()
            .cloned()
            .zip(row.config.iter().copied())
            .collect()
    }

    /// Row for a configuration given as an assignment (missing vars are `?`).
    pub fn row_for(&self, values: &Assignment) -> &TableRow {
        let config: Vec<Truth3> = self.vars.iter().map(|v| values.get(v)).collect();
        &self.rows[index_of(&config)]
    }

    pub fn results(&self) -> Vec<&Formula> {
        let mut seen = std::collections::BTreeSet::new();
        self.rows
            .iter()
            .filter(|r| seen.insert(&r.result))
            .map(|r| &r.result)
            .collect()
    }

    /// CSV with one column per variable (`?`, `F`, `T`) and a final `result`.
    pub fn to_csv(&self) -> String {
        let mut out = self.vars.join(",");
        out.push_str(",result\n");
        for row in &self.rows {
            for v in &row.config {
                out.push(v.code());
                out.push(',');
            }
            out.push_str(&row.result.to_string());
            out.push('\n');
        }
        out
    }
}

fn mentions(result: &Formula, var: &str, cm: CountMode) -> bool {
    match cm {
        CountMode::StepOnly => result.contains_step_atom(var),
        CountMode::Full => result.contains_atom(var),
    }
}

/// Fraction of the rows with `var = ?` whose result still mentions `var`.
pub fn influence_weight(t: &Table, var: &str, cm: CountMode) -> Result<Weight> {
    let k = t
        .position(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    let (mut hits, mut total) = (0u64, 0u64);
    for row in t.rows.iter().filter(|r| r.config[k] == Truth3::Unknown) {
        total += 1;
        if mentions(&row.result, var, cm) {
            hits += 1;
        }
    }
    Ok(Weight {
        numerator: hits,
        denominator: total,
        mode: cm,
    })
}

pub fn influence_weights(t: &Table, cm: CountMode) -> BTreeMap<String, Weight> {
    t.vars
        .iter()
        .map(|v| {
            (
                v.clone(),
                influence_weight(t, v, cm).expect("var is in table"),
            )
        })
        .collect()
}

/// Rows grouped by structurally equal result.
pub fn equivalent_configs(t: &Table) -> BTreeMap<Formula, Vec<Assignment>> {
    let mut groups: BTreeMap<Formula, Vec<Assignment>> = BTreeMap::new();
    for row in &t.rows {
        groups
            .entry(row.result.clone())
            .or_default()
            .push(t.assignment(row));
    }
    groups
}
