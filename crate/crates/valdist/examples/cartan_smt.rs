//! The hyperplane second main theorem for a rational curve:
//! `Σ m_f(r, H_i) + N([Z_{W(f)}], r) ≤ T_f(r, O(n+1)) + O(1)`,
//! with the Wronskian zero divisor carrying the ramification count.
//!
//!     cargo run --release --example cartan_smt

use valdist::experiments::{run_cartan, ExperimentConfig};

fn main() {
    let cfg = ExperimentConfig {
        seed: Some(20_240_817),
        r_min: 5.0,
        r_max: 200.0,
        r_count: 10,
        corpus_size: 4,
        corpus_degree: 3,
        ambient: 2,
        ..Default::default()
    };
    let report = run_cartan(&cfg).expect("valid configuration");
    println!("columns: {}", report.columns.join(", "));
    for row in report.rows.iter().take(20) {
        let line: Vec<String> = row.iter().map(|v| format!("{v:>10.4}")).collect();
        println!("{}", line.join(" "));
    }
    println!("... ({} rows total)\n", report.rows.len());
    for line in report.summary_lines() {
        println!("{line}");
    }
}
