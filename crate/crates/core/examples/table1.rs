//! The propositional table of `a | (b & c)`, its influence weights and the
//! rows grouped by result.

use progtab::parse;
use progtab::table::{build_table, equivalent_configs, influence_weights, CountMode, Mode};

fn main() -> Result<(), progtab::Error> {
    let f = parse("a | (b & c)")?;
    let t = build_table(&f, Mode::Propositional)?;

    println!("{} rows over {:?}", t.rows.len(), t.vars);
    for row in &t.rows {
        let config: Vec<String> = row.config.iter().map(|v| v.to_string()).collect();
        println!("  {}  ->  {}", config.join(" "), row.result);
    }

    println!("\nweights");
    for (var, w) in influence_weights(&t, CountMode::StepOnly) {
        println!("  IW({var}) = {w} = {:.4}", w.value());
    }

    println!("\nrows per result");
    for (result, configs) in equivalent_configs(&t) {
        println!("  {:<10} {}", result.to_string(), configs.len());
    }
    Ok(())
}
