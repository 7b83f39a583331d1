//! Weil functions for closed subschemes of `P^n`, in the normalization
//! `λ_Z(x) = -log max_i |g_i(x)| / ‖x‖^{d_i}`, which is scale-invariant in
//! the representative and defined modulo bounded functions.

use super::NevanlinnaError;
use crate::poly::MPoly;
use num_complex::Complex64;

/// A closed subscheme of `P^n` by homogeneous generators of its ideal.
#[derive(Debug, Clone)]
pub struct SubschemeOnPn {
    pub n: usize,
    generators: Vec<MPoly>,
    degrees: Vec<u32>,
}

impl SubschemeOnPn {
    pub fn new(n: usize, generators: Vec<MPoly>) -> Result<Self, NevanlinnaError> {
        if generators.is_empty() {
            return Err(NevanlinnaError::EmptyGenerators);
        }
        let mut degrees = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.num_vars() != n + 1 {
                return Err(NevanlinnaError::WrongAmbient {
                    expected: n + 1,
                    got: g.num_vars(),
                });
            }
            let d = g.total_degree();
            if g.is_zero() || !g.is_homogeneous_of(d) {
                return Err(NevanlinnaError::NotHomogeneous);
            }
            degrees.push(d);
        }
        Ok(Self {
            n,
            generators,
            degrees,
        })
    }

    /// Hyperplane `{Σ a_i x_i = 0}` from exact integer coefficients.
    pub fn hyperplane_ints(n: usize, coeffs: &[i64]) -> Self {
        use crate::poly::GaussRational;
        assert_eq!(coeffs.len(), n + 1);
        let vars = MPoly::registry(n + 1);
        let mut g = MPoly::zero(vars.clone());
        for (i, &c) in coeffs.iter().enumerate() {
            g = g
                .add(&MPoly::var(vars.clone(), i).scale(&GaussRational::from_int(c)))
                .unwrap();
        }
        Self::new(n, vec![g]).expect("hyperplane is homogeneous")
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// Evaluates the Weil function of a subscheme at representatives in
/// `C^{n+1} \ {0}`; `None` encodes the `+∞` value on the support.
#[derive(Debug, Clone)]
pub struct WeilEvaluator {
    pub subscheme: SubschemeOnPn,
}

impl WeilEvaluator {
    pub fn new(subscheme: SubschemeOnPn) -> Self {
        Self { subscheme }
    }

    /// `λ_Z(x)`, or `None` when every generator vanishes at `x` (support).
    pub fn value(&self, x: &[Complex64]) -> Result<Option<f64>, NevanlinnaError> {
        let norm_sqr: f64 = x.iter().map(|c| c.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(NevanlinnaError::ZeroRepresentative);
        }
        let log_norm = 0.5 * norm_sqr.ln();
        let mut best = f64::NEG_INFINITY;
        for (g, &d) in self
            .subscheme
            .generators()
            .iter()
            .zip(self.subscheme.degrees())
        {
            let v = g.eval_complex(x).norm();
            if v > 0.0 {
                best = best.max(v.ln() - d as f64 * log_norm);
            }
        }
        if best == f64::NEG_INFINITY {
            Ok(None)
        } else {
            Ok(Some(-best))
        }
    }

    /// Same with the support flag collapsed to `+∞` for integrands.
    pub fn value_or_inf(&self, x: &[Complex64]) -> f64 {
        match self.value(x) {
            Ok(Some(v)) => v,
            Ok(None) => f64::INFINITY,
            Err(_) => f64::NAN,
        }
    }
}
