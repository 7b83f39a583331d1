//! Weil functions and the proximity / counting / characteristic calculus,
//! with first-main-theorem and logarithmic-derivative desk checks.

mod checks;
mod functions;
mod weil;

pub use checks::{
    aald_check, ahlfors_lld_check, exceptional_measure, hyperplane_pullback, log_h0_potential,
    ls_slope_log_r, nphi, ExcessReport, LinearWeil,
};
pub use functions::{
    characteristic, counting, counting_from_roots, curve_inside_support, fmt_profile,
    fmt_residual, green_jensen_check, linear_grid, log_grid, proximity, pullback_roots,
    ErrorBudget, NevanlinnaProfile,
};
pub use weil::{SubschemeOnPn, WeilEvaluator};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NevanlinnaError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator is not homogeneous")]
    NotHomogeneous,
    #[error("generator has {got} variables, ambient needs {expected}")]
    WrongAmbient { expected: usize, got: usize },
    #[error("zero representative")]
    ZeroRepresentative,
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("curve image lies inside the support of the subscheme")]
    CurveInSupport,
    #[error("curve is stationary at the origin; shift the parametrization")]
    StationaryOrigin,
    #[error("sampled function is not monotone")]
    NotMonotone,
    #[error("need at least three grid points")]
    GridTooShort,
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}
