//! Polynomial arithmetic kernel: float univariate ([`CPoly`]), exact
//! univariate ([`XPoly`]), exact multivariate ([`MPoly`]), and the Gaussian
//! rational coefficient field.

mod cpoly;
pub mod gauss;
mod mpoly;
mod xpoly;

pub use cpoly::{CPoly, DEFAULT_TOL, MAX_SWEEPS};
pub use gauss::GaussRational;
pub use mpoly::{MPoly, Monomial};
pub use xpoly::XPoly;

/// Errors from the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operation undefined on the zero polynomial")]
    ZeroInput,
    #[error("root iteration did not converge within the sweep budget")]
    NoConvergence,
    #[error("variable registries do not match")]
    RegistryMismatch,
}
