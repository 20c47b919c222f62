use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use progtab::bench::{bench, to_csv, to_table, BenchConfig};
use progtab::equiv::{equivalent_partition, reduce};
use progtab::ltl::{parse, simplify, Formula, Trace};
use progtab::monitor::{centralized, plan, run, run_baseline, Topology};
use progtab::patterns::PatternClass;
use progtab::synth::synthesize;
use progtab::table::{build_table, influence_weights, CountMode, Mode};
use progtab::Error;

#[derive(Parser)]
#[command(
    name = "progtab",
    version,
    about = "Simplification tables, influence weights and decentralized LTL monitoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Prop,
    Prog,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Prop => Mode::Propositional,
            ModeArg::Prog => Mode::Progression,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountArg {
    Step,
    Full,
}

impl From<CountArg> for CountMode {
    fn from(c: CountArg) -> Self {
        match c {
            CountArg::Step => CountMode::StepOnly,
            CountArg::Full => CountMode::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the 3^n table of a formula.
    Table {
        formula: String,
        #[arg(long, value_enum, default_value = "prog")]
        mode: ModeArg,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Influence weight of every variable.
    Weights {
        formula: String,
        #[arg(long, value_enum, default_value = "step")]
        count_mode: CountArg,
        #[arg(long, value_enum, default_value = "prog")]
        mode: ModeArg,
    },
    /// Classes of variables with equivalent influence.
    Equiv { formula: String },
    /// Contract each equivalence class to two representatives.
    Reduce { formula: String },
    /// Trigger expression for one result of the table.
    Synth {
        formula: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "prog")]
        mode: ModeArg,
    },
    /// Setup plan (weights, factors, ring, triggers) as JSON.
    Plan {
        formula: String,
        #[arg(long)]
        topo: String,
        #[arg(long, value_enum, default_value = "step")]
        count_mode: CountArg,
    },
    /// Monitor a JSON Lines trace.
    Monitor {
        formula: String,
        #[arg(long)]
        topo: String,
        #[arg(long)]
        trace: PathBuf,
        /// Run the formula-forwarding baseline instead.
        #[arg(long)]
        baseline: bool,
    },
    /// Paired benchmark over seeded pattern formulas.
    Bench {
        #[arg(long)]
        class: PatternClass,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        procs: usize,
        #[arg(long, default_value_t = 50)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VariableCapExceeded(..) => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Table {
            formula: f,
            mode,
            csv,
        } => {
            let t = build_table(&formula(&f)?, mode.into())?;
            let width = t.vars.iter().map(String::len).max().unwrap_or(1).max(1);
            for v in &t.vars {
                print!("{v:>width$} ");
            }
            println!("| result");
            for row in &t.rows {
                for c in &row.config {
                    print!("{c:>width$} ");
                }
                println!("| {}", row.result);
            }
            if let Some(path) = csv {
                write_file(&path, &t.to_csv())?;
            }
        }
        Command::Weights {
            formula: f,
            count_mode,
            mode,
        } => {
            let t = build_table(&formula(&f)?, mode.into())?;
            for (v, w) in influence_weights(&t, count_mode.into()) {
                let r = w.ratio();
                println!("{v}\t{}/{}\t{:.6}", r.numer(), r.denom(), w.value());
            }
        }
        Command::Equiv { formula: f } => {
            let p = equivalent_partition(&formula(&f)?);
            for c in &p.classes {
                println!("class\t{}", c.join(" "));
            }
            println!("singletons\t{}", p.singletons.join(" "));
        }
        Command::Reduce { formula: f } => {
            let f = formula(&f)?;
            let rm = reduce(&f, &equivalent_partition(&f));
            println!("reduced\t{}", rm.reduced);
            for ((r1, r2), d) in rm.representatives.iter().zip(&rm.dropped) {
                println!("class\t{r1} {r2}\tdropped\t{}", d.join(" "));
            }
        }
        Command::Synth {
            formula: f,
            target,
            mode,
        } => {
            let t = build_table(&formula(&f)?, mode.into())?;
            let target = simplify(&formula(&target)?);
            println!("{}", synthesize(&t, &target)?);
        }
        Command::Plan {
            formula: f,
            topo,
            count_mode,
        } => {
            let topo: Topology = topo.parse()?;
            let p = plan(&formula(&f)?, &topo, count_mode.into())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&p.to_json()).expect("plan serializes")
            );
        }
        Command::Monitor {
            formula: f,
            topo,
            trace,
            baseline,
        } => {
            let f = formula(&f)?;
            let topo: Topology = topo.parse()?;
            let text = std::fs::read_to_string(&trace)
                .map_err(|e| Failure::Io(format!("{}: {e}", trace.display())))?;
            let trace =
                Trace::from_jsonl(&text).map_err(|e| Failure::Usage(format!("trace: {e}")))?;
            let (verdict, metrics) = if baseline {
                run_baseline(&f, &topo, &trace)?
            } else {
                run(&plan(&f, &topo, CountMode::StepOnly)?, &trace)?
            };
            let (central, central_len) = centralized(&f, &trace);
            println!("verdict\t{verdict}");
            println!("centralized\t{central}\t{central_len}");
            println!(
                "metrics\t{}",
                serde_json::to_string(&metrics).expect("metrics serialize")
            );
        }
        Command::Bench {
            class,
            count,
            procs,
            len,
            seed,
            csv,
        } => {
            if count == 0 || procs == 0 || len == 0 {
                return Err(Failure::Usage(
                    "--count, --procs and --len must be at least 1".into(),
                ));
            }
            let report = bench(&BenchConfig::new(class, count, procs, len, seed))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let reports = [report];
            print!("{}", to_table(&reports));
            println!();
            print!("{}", to_csv(&reports));
            if let Some(path) = csv {
                write_file(&path, &to_csv(&reports))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
