//! Symbolic-numeric value distribution theory for rational curves in
//! complex projective space.
//!
//! The library has two halves that meet in the experiment drivers:
//!
//! * an exact half (rational arithmetic throughout) for the Wronskian jet
//!   calculus: total derivatives, Wronskian jet polynomials and their
//!   grading/filtration, reparametrization weights, logarithmic Wronskians,
//!   and generator-level jets of subscheme ideals;
//! * a floating half for the analytic side: derived curves and contact
//!   functions through exterior algebra, Weil functions, proximity /
//!   counting / characteristic functions, and Monte-Carlo averaging over
//!   Haar-random unitaries.
//!
//! Entry points: [`curves::ProjectiveCurve`] for curve construction,
//! [`nevanlinna`] for the m/N/T calculus, [`jets`] and [`ideals`] for the
//! exact identity checks, and [`experiments`] for the scripted experiment
//! suites behind the `valdist` binary. Each runnable capability also has a
//! standalone example under `examples/`.

pub mod crofton;
pub mod curves;
pub mod experiments;
pub mod exterior;
pub mod ideals;
pub mod jets;
pub mod nevanlinna;
pub mod poly;
pub mod quad;

/// Library version echoed into every report for provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
