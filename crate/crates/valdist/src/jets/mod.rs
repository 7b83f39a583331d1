//! Exact jet-differential calculus: total derivatives, Wronskian jet
//! polynomials with their grading and filtration, reparametrization, and
//! logarithmic Wronskians.

mod logw;
mod poly;
mod reparam;

pub use logw::{
    log_nabla, log_wronskian, log_wronskian_identity_check, tower_wronskian_identity_check,
    JetFraction,
};
pub use poly::{
    det_by_minors, det_gauss, filtration_check, partial_degrees, sl_action_check, wronskian_jet,
    JetMonomial, JetPoly, JetVar,
};
pub use reparam::{coordinate_change, reparametrize, ReparamJet};

/// Largest derivative order the calculus will produce.
pub const MAX_JET_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("jet polynomials over {left} and {right} coordinates cannot mix")]
    CoordMismatch { left: usize, right: usize },
    #[error("derivative order {order} exceeds the configured maximum {max}")]
    OrderOverflow { order: usize, max: usize },
    #[error("jet is missing coordinate {coord} at order {order}")]
    MissingJetOrder { coord: usize, order: usize },
    #[error("need at least one section")]
    NoSections,
    #[error("first jet coefficient must be nonzero")]
    NotBiholomorphic,
    #[error("base section is identically zero")]
    ZeroBaseSection,
    #[error("matrix shape does not match the section count")]
    MatrixShape,
}

/// The grading data of order `k`: the Wronskian weight `k' = k(k+1)/2`,
/// the filtration vector `a^k = (k, k-1, …, 1)`, and the cumulative
/// vector `b^k` with `b_j = j(2k - j + 1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetGrading {
    pub k: u32,
    pub k_prime: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl JetGrading {
    pub fn new(k: u32) -> Self {
        let a: Vec<u32> = (1..=k).rev().collect();
        let b: Vec<u32> = (1..=k).map(|j| j * (2 * k - j + 1) / 2).collect();
        let k_prime = k * (k + 1) / 2;
        debug_assert_eq!(a.iter().sum::<u32>(), k_prime);
        debug_assert!(b
            .iter()
            .enumerate()
            .all(|(j, &bj)| bj == a[..=j].iter().sum::<u32>()));
        Self { k, k_prime, a, b }
    }
}
