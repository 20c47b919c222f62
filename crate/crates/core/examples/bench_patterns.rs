//! A small paired benchmark over every pattern class. Pass a repetition
//! count as the first argument (default 20).

use progtab::bench::{bench, to_table, BenchConfig};
use progtab::patterns::PatternClass;

fn main() {
    let count = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(20);
    let reports: Vec<_> = PatternClass::ALL
        .into_iter()
        .map(|class| bench(&BenchConfig::new(class, count, 3, 50, 7)).expect("benchmark run"))
        .collect();
    print!("{}", to_table(&reports));
}
