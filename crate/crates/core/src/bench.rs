//! Paired benchmark of the decentralized monitor against the baseline on
//! seeded pattern formulas and traces.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::monitor::{plan, run, run_baseline, RunMetrics};
use crate::patterns::{gen_pattern, gen_trace, lettered_topology, PatternClass};
use crate::table::CountMode;

#[derive(Debug, Clone, Serialize)]
pub struct BenchConfig {
    pub class: PatternClass,
    pub count: usize,
    pub procs: usize,
    pub atoms_per_process: usize,
    pub trace_len: usize,
    pub seed: u64,
    pub count_mode: CountMode,
}

impl BenchConfig {
    pub fn new(
        class: PatternClass,
        count: usize,
        procs: usize,
        trace_len: usize,
        seed: u64,
    ) -> Self {
        BenchConfig {
            class,
            count,
            procs,
            atoms_per_process: 2,
            trace_len,
            seed,
            count_mode: CountMode::StepOnly,
        }
    }
}

#[derive(Debug, Error)]
#[error("run with seed {seed} failed: {source}")]
pub struct BenchError {
    pub seed: u64,
    #[source]
    pub source: Error,
}

/// Means over all runs of one monitor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Means {
    pub trace_len: f64,
    pub msg_count: f64,
    pub msg_bits: f64,
    pub mem_bits: f64,
}

impl Means {
    fn of(runs: &[RunMetrics]) -> Self {
        let n = runs.len().max(1) as f64;
        let mean = |g: fn(&RunMetrics) -> u64| runs.iter().map(|m| g(m) as f64).sum::<f64>() / n;
        Means {
            trace_len: mean(|m| m.trace_len),
            msg_count: mean(|m| m.msg_count),
            msg_bits: mean(|m| m.msg_bits),
            mem_bits: mean(|m| m.mem_bits),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub pdm: Means,
    pub bf: Means,
    pub runs: usize,
}

#[derive(Debug, Clone)]
struct Paired {
    pdm: RunMetrics,
    bf: RunMetrics,
}

/// Seeds for each repetition, drawn from the configured seed.
pub fn repetition_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

fn one_run(cfg: &BenchConfig, seed: u64) -> Result<Paired, Error> {
    let topo = lettered_topology(cfg.procs, cfg.atoms_per_process)?;
    let f = gen_pattern(cfg.class, &topo, seed)?;
    let trace = gen_trace(&topo.alphabet(), cfg.trace_len, seed.wrapping_add(1));
    let p = plan(&f, &topo, cfg.count_mode)?;
    let (_, pdm) = run(&p, &trace)?;
    let (_, bf) = run_baseline(&f, &topo, &trace)?;
    Ok(Paired { pdm, bf })
}

pub fn bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    let seeds = repetition_seeds(cfg.seed, cfg.count);
    let results: Vec<Result<Paired, BenchError>> = seeds
        .par_iter()
        .map(|&seed| one_run(cfg, seed).map_err(|source| BenchError { seed, source }))
        .collect();
    let paired = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pdm: Vec<RunMetrics> = paired.iter().map(|p| p.pdm).collect();
    let bf: Vec<RunMetrics> = paired.iter().map(|p| p.bf).collect();
    Ok(BenchReport {
        config: cfg.clone(),
        pdm: Means::of(&pdm),
        bf: Means::of(&bf),
        runs: paired.len(),
    })
}

const CSV_HEADER: &str = "pattern,monitor,trace,msg_count,msg_bits,mem_bits";

pub fn to_csv(reports: &[BenchReport]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in reports {
        for (name, m) in [("PDM", &r.pdm), ("BF", &r.bf)] {
            writeln!(
                out,
                "{},{},{:.3},{:.3},{:.3},{:.3}",
                r.config.class, name, m.trace_len, m.msg_count, m.msg_bits, m.mem_bits
            )
            .unwrap();
        }
    }
    out
}

/// One line per pattern with both monitors side by side.
pub fn to_table(reports: &[BenchReport]) -> String {
    let head = ["|trace|", "#msg", "|msg|", "|mem|"];
    let mut out = String::new();
    writeln!(out, "{:<18} | {:^43} | {:^43}", "", "PDM", "BF").unwrap();
    write!(out, "{:<18} |", "pattern").unwrap();
    for _ in 0..2 {
        for h in head {
            write!(out, " {h:>10}").unwrap();
        }
        out.push_str(" |");
    }
    out.pop();
    out.pop();
    out.push('\n');
    writeln!(out, "{}", "-".repeat(18 + 3 + 44 + 2 + 44)).unwrap();
    for r in reports {
        write!(out, "{:<18} |", r.config.class.name()).unwrap();
        for m in [&r.pdm, &r.bf] {
            for v in [m.trace_len, m.msg_count, m.msg_bits, m.mem_bits] {
                write!(out, " {v:>10.2}").unwrap();
            }
            out.push_str(" |");
        }
        out.pop();
        out.pop();
        out.push('\n');
    }
    out
}
