//! Experiment orchestration: configuration, deterministic reports, random
//! corpora, the theorem runners, and the exact identity suites. The
//! `valdist` binary is a thin argument parser over this module.

pub mod config;
pub mod corpus;
pub mod report;
pub mod runners;
pub mod suites;

pub use config::{ConfigError, CurveSpec, ExperimentConfig, GeneratorSpec, SubschemeSpec};
pub use report::{CheckResult, Report};
pub use runners::{
    run_aald, run_ahlfors, run_cartan, run_crofton, run_fmt, run_points_smt, run_theorem_oxk1,
    RunError, SLOPE_TOL,
};
pub use suites::{run_ideal_suite, run_symbolic_suite};
