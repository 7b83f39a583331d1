//! Reparametrization of jet polynomials by germs of biholomorphisms
//! `φ(z) = a_1 z + … + a_k z^k` (`a_1 ≠ 0`), and polynomial coordinate
//! changes on the base.
//!
//! Both substitutions are exact: the image of `x_j^(ℓ)` under `φ` is the
//! chain-rule expansion `(f_j ∘ φ)^{(ℓ)}(0)`, computed through truncated
//! series composition so no combinatorial formula has to be hand-rolled.

use super::poly::{JetPoly, JetVar};
use super::JetError;
use crate::poly::{GaussRational, MPoly};

/// A `k`-jet of a biholomorphism of `(C, 0)`: coefficients `(a_1, …, a_k)`.
#[derive(Debug, Clone)]
pub struct ReparamJet {
    coeffs: Vec<GaussRational>,
}

impl ReparamJet {
    pub fn new(coeffs: Vec<GaussRational>) -> Result<Self, JetError> {
        match coeffs.first() {
            Some(a1) if !a1.is_zero() => Ok(Self { coeffs }),
            _ => Err(JetError::NotBiholomorphic),
        }
    }

    pub fn identity() -> Self {
        Self {
            coeffs: vec![GaussRational::one()],
        }
    }

    pub fn homothety(lambda: GaussRational) -> Result<Self, JetError> {
        Self::new(vec![lambda])
    }

    pub fn first_coeff(&self) -> &GaussRational {
        &self.coeffs[0]
    }

    /// Truncated coefficients of `φ(z)^m` up to degree `lmax`, ascending,
    /// with the constant slot at index 0 (always zero for m ≥ 1).
    fn power_series(&self, m: usize, lmax: usize) -> Vec<GaussRational> {
        let mut phi = vec![GaussRational::zero(); lmax + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + 1 <= lmax {
                phi[i + 1] = c.clone();
            }
        }
        let mut acc = vec![GaussRational::zero(); lmax + 1];
        acc[0] = GaussRational::one();
        for _ in 0..m {
            let mut next = vec![GaussRational::zero(); lmax + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in phi.iter().enumerate() {
                    if i + j <= lmax && !b.is_zero() {
                        next[i + j] = &next[i + j] + &(a * b);
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// The substitution image of `x^(ℓ)`:
    /// `(f∘φ)^{(ℓ)}(0) = Σ_m (ℓ!/m!) [z^ℓ](φ^m) · x^(m)`.
    fn variable_image(&self, ncoords: usize, v: JetVar) -> JetPoly {
        let l = v.order as usize;
        if l == 0 {
            return JetPoly::var(ncoords, v);
        }
        let mut factorials = vec![GaussRational::one()];
        for i in 1..=l {
            let prev = factorials.last().unwrap().clone();
            factorials.push(&prev * &GaussRational::from_int(i as i64));
        }
        let mut out = JetPoly::zero(ncoords);
        for m in 1..=l {
            let coeff_l_of_phi_m = self.power_series(m, l)[l].clone();
            if coeff_l_of_phi_m.is_zero() {
                continue;
            }
            let c = &(&factorials[l] / &factorials[m]) * &coeff_l_of_phi_m;
            out = out
                .add(&JetPoly::var(ncoords, JetVar { coord: v.coord, order: m as u16 }).scale(&c))
                .expect("same coords");
        }
        out
    }
}

/// Substitute every jet variable in `p` by its chain-rule image under `φ`.
/// Isobaric polynomials of weight `m` pick up the factor `a_1^m` when `φ` is
/// the homothety `a_1 z`.
pub fn reparametrize(p: &JetPoly, phi: &ReparamJet) -> Result<JetPoly, JetError> {
    let ncoords = p.ncoords;
    p.substitute(&|v| phi.variable_image(ncoords, v))
}

/// Polynomial coordinate change on the base: `x_j ↦ Ψ_j(x_0, …)`, extended
/// to jets by `x_j^(ℓ) ↦ D^ℓ Ψ_j`.
pub fn coordinate_change(p: &JetPoly, psi: &[MPoly]) -> Result<JetPoly, JetError> {
    if psi.len() != p.ncoords {
        return Err(JetError::CoordMismatch {
            left: p.ncoords,
            right: psi.len(),
        });
    }
    // Precompute D^ℓ Ψ_j up to the highest order appearing in p.
    let lmax = p.max_order() as usize;
    let mut images: Vec<Vec<JetPoly>> = Vec::with_capacity(psi.len());
    for m in psi {
        let mut col = vec![JetPoly::from_mpoly(m)];
        for _ in 0..lmax {
            let next = col.last().unwrap().total_derivative()?;
            col.push(next);
        }
        images.push(col);
    }
    p.substitute(&|v| images[v.coord as usize][v.order as usize].clone())
}
