//! Second main theorem for point targets, in both shapes: the jet-level
//! corollary (bounded for rational curves) and the `P^n` inequality with
//! the Wronskian ramification term.
//!
//!     cargo run --release --example points_smt

use valdist::experiments::{run_points_smt, CurveSpec, ExperimentConfig};

fn main() {
    // A degree-3 plane curve against three distinct points.
    let cfg = ExperimentConfig {
        curve: Some(CurveSpec {
            n: 2,
            components: None,
            components_exact: Some(vec![
                vec![[1, 1], [0, 1], [2, 1]],
                vec![[0, 1], [1, 1], [0, 1], [1, 1]],
                vec![[3, 1], [0, 1], [0, 1], [2, 1]],
            ]),
        }),
        points: vec![
            vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
            vec![[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]],
        ],
        r_min: 2.0,
        r_max: 200.0,
        r_count: 10,
        ..Default::default()
    };
    let report = run_points_smt(&cfg).expect("valid configuration");
    println!("columns: {}", report.columns.join(", "));
    for row in &report.rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v:>11.4}")).collect();
        println!("{}", line.join(" "));
    }
    println!();
    for line in report.summary_lines() {
        println!("{line}");
    }
}
