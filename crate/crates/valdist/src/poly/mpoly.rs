//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Terms live in a `BTreeMap` keyed by graded-lexicographic monomials, so
//! structural equality is canonical equality. Every polynomial carries its
//! variable registry; mixing registries is a hard error rather than a silent
//! reinterpretation of exponent columns.

use super::gauss::GaussRational;
use super::PolyError;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Dense exponent vector with graded-lex ordering.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl MPoly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<Vec<String>>, c: GaussRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        p
    }

    /// The `i`-th registry variable as a polynomial.
    pub fn var(vars: Arc<Vec<String>>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial(exps), GaussRational::one());
        p
    }

    /// Registry of `n` variables named `x0..x{n-1}`.
    pub fn registry(n: usize) -> Arc<Vec<String>> {
        Arc::new((0..n).map(|i| format!("x{i}")).collect())
    }

    pub fn from_terms(
        vars: Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Vec<u32>, GaussRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.vars.len(), "exponent arity mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// True when every term has the same total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// Leading coefficient in the graded-lex order.
    pub fn leading_coeff(&self) -> Option<&GaussRational> {
        self.terms.values().next_back()
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussRational::one())
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[i] -= 1;
                out.add_term(Monomial(exps), c * &GaussRational::from_int(e as i64));
            }
        }
        out
    }

    /// Substitute each variable by the supplied polynomial (same target registry).
    pub fn compose(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.vars.len() {
            return Err(PolyError::RegistryMismatch);
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = Self::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = Self::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[i])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval_exact(&self, point: &[GaussRational]) -> GaussRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Floating evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[i].powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Normalize the leading coefficient to one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv()),
            None => self.clone(),
        }
    }

    /// Compose with a vector of univariate polynomials, producing a
    /// univariate polynomial: the pullback of this form along a curve.
    pub fn compose_curve(&self, components: &[super::XPoly]) -> super::XPoly {
        assert_eq!(components.len(), self.vars.len());
        let mut acc = super::XPoly::zero();
        for (m, c) in &self.terms {
            let mut t = super::XPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &components[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Same pullback in floating arithmetic.
    pub fn compose_curve_complex(&self, components: &[super::CPoly]) -> super::CPoly {
        assert_eq!(components.len(), self.vars.len());
        let mut acc = super::CPoly::zero();
        for (m, c) in &self.terms {
            let mut t = super::CPoly::constant(c.to_complex());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &components[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", self.vars[i])?;
                } else if e > 1 {
                    write!(f, "*{}^{}", self.vars[i], e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn ring_axioms_on_fixed_triple() {
        let vars = MPoly::registry(2);
        let x = MPoly::var(vars.clone(), 0);
        let y = MPoly::var(vars.clone(), 1);
        let a = x.mul(&x).unwrap().add(&y.scale(&q(3))).unwrap();
        let b = y.mul(&y).unwrap().sub(&x).unwrap();
        let c = x.mul(&y).unwrap().add(&MPoly::constant(vars, q(7))).unwrap();
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let a = MPoly::var(MPoly::registry(2), 0);
        let b = MPoly::var(Arc::new(vec!["u".into(), "v".into()]), 0);
        assert!(matches!(a.add(&b), Err(PolyError::RegistryMismatch)));
    }

    #[test]
    fn no_zero_terms_stored() {
        let vars = MPoly::registry(1);
        let x = MPoly::var(vars, 0);
        let r = x.sub(&x).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.num_terms(), 0);
    }

    #[test]
    fn derivative_and_eval() {
        let vars = MPoly::registry(2);
        let x = MPoly::var(vars.clone(), 0);
        let y = MPoly::var(vars, 1);
        // p = x^2 y + 3y
        let p = x
            .mul(&x)
            .unwrap()
            .mul(&y)
            .unwrap()
            .add(&y.scale(&q(3)))
            .unwrap();
        let dx = p.derivative(0);
        // dp/dx = 2xy
        assert_eq!(dx, x.mul(&y).unwrap().scale(&q(2)));
        assert_eq!(p.eval_exact(&[q(2), q(5)]), q(4 * 5 + 15));
    }
}
