//! Univariate polynomials with exact Gaussian-rational coefficients.
//!
//! This is the exact backing for operations whose results feed integer
//! identities: reduced representations, orders of vanishing, and symbolic
//! Wronskian minors of curves given with rational coefficients.

use super::gauss::GaussRational;
use super::{CPoly, PolyError};
use num_complex::Complex64;

/// Ascending exact coefficients; leading coefficient nonzero unless zero.
#[derive(Clone, PartialEq, Debug)]
pub struct XPoly {
    coeffs: Vec<GaussRational>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(GaussRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    pub fn var() -> Self {
        Self::new(vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussRational::from_int(c)).collect())
    }

    /// `z^k` with a unit coefficient.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![GaussRational::zero(); k + 1];
        coeffs[k] = GaussRational::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GaussRational {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GaussRational::from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact quotient and remainder over the Gaussian rationals.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.degree() < div.degree() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlead = div.coeffs.last().unwrap().clone();
        let dd = div.degree();
        let mut quot = vec![GaussRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &dlead;
            for j in 0..=dd {
                rem[k + j] = &rem[k + j] - &(&q * &div.coeffs[j]);
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact divisibility test; returns the quotient when the remainder is zero.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(div);
        r.is_zero().then_some(q)
    }

    /// Exact monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        let lead = a.leading().cloned().unwrap();
        Ok(a.scale(&lead.inv()))
    }

    /// Exact order of vanishing at `a`: repeated synthetic division by `(z - a)`.
    pub fn order_at(&self, a: &GaussRational) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let lin = Self::new(vec![-a.clone(), GaussRational::one()]);
        let mut p = self.clone();
        let mut order = 0usize;
        while let Some(q) = p.exact_div(&lin) {
            order += 1;
            p = q;
            if p.is_zero() {
                break;
            }
        }
        Ok(order)
    }

    pub fn to_cpoly(&self) -> CPoly {
        CPoly::new(self.coeffs.iter().map(GaussRational::to_complex).collect())
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.to_cpoly().eval(z)
    }
}

impl std::ops::Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![GaussRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        XPoly::new(out)
    }
}

impl std::ops::Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![GaussRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = &out[i] - c;
        }
        XPoly::new(out)
    }
}

impl std::ops::Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        XPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_gcd_divides_both() {
        // gcd((z-2)^2 (z+1), (z-2)(z-3)) = z - 2
        let f1 = XPoly::from_ints(&[-2, 1]);
        let f2 = XPoly::from_ints(&[1, 1]);
        let f3 = XPoly::from_ints(&[-3, 1]);
        let a = &(&f1 * &f1) * &f2;
        let b = &f1 * &f3;
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, f1);
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn order_at_counts_exact_multiplicity() {
        // (z-1)^3 (z+2) at 1 -> 3, at -2 -> 1, at 0 -> 0
        let lin1 = XPoly::from_ints(&[-1, 1]);
        let lin2 = XPoly::from_ints(&[2, 1]);
        let p = &(&(&lin1 * &lin1) * &lin1) * &lin2;
        assert_eq!(p.order_at(&GaussRational::from_int(1)).unwrap(), 3);
        assert_eq!(p.order_at(&GaussRational::from_int(-2)).unwrap(), 1);
        assert_eq!(p.order_at(&GaussRational::zero()).unwrap(), 0);
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = XPoly::from_ints(&[3, -1, 0, 7, 2]);
        let b = XPoly::from_ints(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }
}
