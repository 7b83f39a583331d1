//! Haar-random unitary sampling and Monte-Carlo verification of the Crofton
//! averaging formulas for Weil and proximity functions.
//!
//! Randomness is counter-based: every sample index owns an independent
//! stream derived from (seed, index), so results are identical however the
//! index range is partitioned across threads.

use crate::curves::ProjectiveCurve;
use crate::nevanlinna::LinearWeil;
use crate::quad::QuadratureSpec;
use num_complex::Complex64;
use rayon::prelude::*;

/// SplitMix64 stream; the canonical constants.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `(0, 1]` (excludes zero so logs stay finite).
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        (((self.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
    }

    /// Standard complex normal: real and imaginary parts N(0, 1/2).
    pub fn next_complex_normal(&mut self) -> Complex64 {
        // Box-Muller.
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(r * t.cos(), r * t.sin()) * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// Counter-based sampler of Haar-distributed unitaries on `U(dim)`.
#[derive(Debug, Clone)]
pub struct HaarSampler {
    pub dim: usize,
    pub seed: u64,
}

/// Column-major square complex matrix; `dim ≤ 5` in every caller, so plain
/// nested vectors are fine.
pub type CMatrix = Vec<Vec<Complex64>>;

impl HaarSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1);
        Self { dim, seed }
    }

    fn stream(&self, index: u64) -> SplitMix64 {
        // Decorrelate (seed, index) pairs through one extra mixing round.
        let mut s = SplitMix64::new(self.seed ^ index.wrapping_mul(0xD1B54A32D192ED03));
        s.next_u64();
        s
    }

    /// The `index`-th Haar unitary: QR of a complex Ginibre matrix with the
    /// R diagonal normalized positive. Gram-Schmidt produces exactly the QR
    /// factorization with real positive diagonal, which is the decomposition
    /// whose Q factor is Haar; a second orthogonalization pass keeps the
    /// unitarity defect at machine precision.
    pub fn unitary(&self, index: u64) -> CMatrix {
        let n = self.dim;
        let mut rng = self.stream(index);
        let mut cols: CMatrix = (0..n)
            .map(|_| (0..n).map(|_| rng.next_complex_normal()).collect())
            .collect();
        for j in 0..n {
            for _pass in 0..2 {
                for i in 0..j {
                    let proj: Complex64 = cols[i]
                        .iter()
                        .zip(&cols[j])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    for k in 0..n {
                        let correction = proj * cols[i][k];
                        cols[j][k] -= correction;
                    }
                }
            }
            let norm: f64 = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for k in 0..n {
                cols[j][k] /= norm;
            }
        }
        cols
    }

    /// `‖U* U - I‖_max`, the unitarity defect.
    pub fn unitarity_defect(u: &CMatrix) -> f64 {
        let n = u.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: Complex64 = u[i].iter().zip(&u[j]).map(|(a, b)| a.conj() * b).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).norm());
            }
        }
        worst
    }
}

/// Apply a unitary (column list) to a vector: `y = U x`.
pub fn apply(u: &CMatrix, x: &[Complex64]) -> Vec<Complex64> {
    let n = u.len();
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for (j, col) in u.iter().enumerate() {
        for k in 0..n {
            y[k] += col[k] * x[j];
        }
    }
    y
}

/// Monte-Carlo mean and standard error, reduced in index order so the
/// result is independent of the thread partition.
fn mean_stderr(values: Vec<f64>) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Average of the hyperplane Weil function over Haar translates:
/// `E_g[λ_{g*H}(x)] = H_n / 2` (harmonic number), independent of `x`.
pub fn average_weil_hyperplane(
    n: usize,
    x: &[Complex64],
    samples: u64,
    sampler: &HaarSampler,
) -> (f64, f64) {
    assert_eq!(sampler.dim, n + 1);
    assert_eq!(x.len(), n + 1);
    let norm: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    assert!(norm > 0.0, "zero representative");
    let xhat: Vec<Complex64> = x.iter().map(|&c| c / norm).collect();
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let u = sampler.unitary(i);
            let y = apply(&u, &xhat);
            // λ_{g*H}(x) with unit normal a = e_0 of H: -log |⟨a, g x̂⟩|.
            -y[0].norm().max(1e-300).ln()
        })
        .collect();
    mean_stderr(values)
}

/// Average proximity `E_g[m_f(r, g*H)]`; equals the same constant `H_n/2`
/// independently of `r` and of the (non-degenerate) curve.
pub fn average_proximity(
    f: &ProjectiveCurve,
    r: f64,
    samples: u64,
    sampler: &HaarSampler,
    quad: &QuadratureSpec,
) -> (f64, f64) {
    assert_eq!(sampler.dim, f.n + 1);
    assert!(
        f.is_nondegenerate(),
        "curve must avoid every hyperplane of the system"
    );
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let u = sampler.unitary(i);
            let integrand = |theta: f64| {
                let fz = f.eval(Complex64::from_polar(r, theta));
                let y = apply(&u, &fz);
                let norm_sqr: f64 = fz.iter().map(|c| c.norm_sqr()).sum();
                -0.5 * (y[0].norm_sqr() / norm_sqr).max(1e-300).ln()
            };
            crate::quad::circle_mean(&integrand, quad).0
        })
        .collect();
    mean_stderr(values)
}

/// Average of the base-locus Weil function of a Haar-random `(k+1)`-element
/// subsystem: the first `k+1` rows of a Haar unitary cut an intersection of
/// hyperplanes, and `E_g[λ_{∩ g*H_i}(x)]` is a constant in `x` because the
/// full system is base point free.
pub fn average_subsystem_base_locus(
    n: usize,
    k: usize,
    x: &[Complex64],
    samples: u64,
    sampler: &HaarSampler,
) -> (f64, f64) {
    assert!(k < n, "subsystem dimension must satisfy 0 <= k <= n-1");
    assert_eq!(sampler.dim, n + 1);
    let norm: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let xhat: Vec<Complex64> = x.iter().map(|&c| c / norm).collect();
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let u = sampler.unitary(i);
            let y = apply(&u, &xhat);
            // The Haar measure is conjugation invariant, so using the first
            // k+1 components of U x̂ matches using k+1 orthonormal rows.
            let best = y
                .iter()
                .take(k + 1)
                .map(|c| c.norm_sqr())
                .fold(0.0f64, f64::max);
            -0.5 * best.max(1e-300).ln()
        })
        .collect();
    mean_stderr(values)
}

/// Exact expectation `H_n / 2` of the hyperplane Weil average.
pub fn harmonic_half(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum::<f64>() / 2.0
}

/// The Weil function of one Haar translate `g*H` of the base hyperplane
/// `H = {x_0 = 0}`: a building block for the experiment drivers.
pub fn translated_hyperplane_weil(u: &CMatrix) -> LinearWeil {
    let n = u.len();
    let row0: Vec<Complex64> = (0..n).map(|j| u[j][0]).collect();
    LinearWeil::new(vec![row0])
}
