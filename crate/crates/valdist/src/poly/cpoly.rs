//! Univariate polynomials over complex doubles.
//!
//! Root finding follows the square-free-first strategy: multiplicities come
//! from iterated gcd with the derivative, so they stay exact integers;
//! Aberth-Ehrlich simultaneous iteration then only ever sees simple roots.
//! Clustering within the tolerance radius is the fallback when the
//! approximate gcd chain cannot certify a factor.

use super::PolyError;
use num_complex::Complex64;
use std::fmt;

/// Default relative tolerance for approximate operations.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Aberth-Ehrlich sweep budget.
pub const MAX_SWEEPS: usize = 200;

/// Univariate polynomial with ascending complex coefficients.
///
/// Invariant: the leading coefficient is nonzero unless the polynomial is
/// identically zero (represented by an empty coefficient list).
#[derive(Clone, PartialEq)]
pub struct CPoly {
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly{:?}", self.coeffs)
    }
}

impl CPoly {
    /// Build from ascending coefficients, trimming trailing (near-)zeros.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            Self::zero()
        } else {
            Self { coeffs: vec![c] }
        }
    }

    /// The monomial `z`.
    pub fn var() -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &a in roots {
            p = &p * &Self::new(vec![-a, Complex64::new(1.0, 0.0)]);
        }
        p
    }

    fn trim(&mut self) {
        // Exact zeros only; near-zero leading coefficients are the caller's
        // problem (they carry scale information).
        while let Some(c) = self.coeffs.last() {
            if c.re == 0.0 && c.im == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention of the callers
    /// that guard on `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
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
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Composition `self(other(z))` by Horner over polynomials.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c);
        }
        acc
    }

    /// Quotient and remainder; panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.degree() < div.degree() || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlead = *div.coeffs.last().unwrap();
        let dd = div.degree();
        let mut quot = vec![Complex64::new(0.0, 0.0); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / dlead;
            quot[k] = q;
            for j in 0..=dd {
                rem[k + j] -= q * div.coeffs[j];
            }
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Synthetic division by `(z - a)`, discarding the remainder.
    pub fn deflate(&self, a: Complex64) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = self.coeffs[n - 1];
        for i in (0..n - 1).rev() {
            out[i] = carry;
            carry = self.coeffs[i] + carry * a;
        }
        Self::new(out)
    }

    /// Approximate monic gcd via the Euclidean remainder sequence.
    ///
    /// Both inputs are normalized to unit max coefficient, so remainders with
    /// norm at most `tol` are treated as zero. Exact-rational inputs should
    /// use the exact gcd instead.
    pub fn gcd(&self, other: &Self, tol: f64) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        if !a.is_zero() {
            let m = a.max_coeff_norm();
            a = a.scale(Complex64::new(1.0 / m, 0.0));
        }
        loop {
            if b.is_zero() || b.max_coeff_norm() <= tol {
                break;
            }
            let m = b.max_coeff_norm();
            b = b.scale(Complex64::new(1.0 / m, 0.0));
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
            if a.degree() == 0 {
                break;
            }
        }
        let lead = *a.coeffs.last().ok_or(PolyError::ZeroInput)?;
        Ok(a.scale(lead.inv()))
    }

    /// All roots with multiplicities; the multiplicity sum equals the degree.
    ///
    /// Square-free decomposition (iterated gcd with the derivative) recovers
    /// the multiplicity structure, Aberth-Ehrlich finds the simple roots of
    /// each square-free factor, and a final clustering pass merges anything
    /// the approximate gcd could not separate.
    pub fn roots_with_multiplicity(&self, tol: f64) -> Result<Vec<(Complex64, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        if self.degree() == 0 {
            return Ok(vec![]);
        }
        let scale = self.max_coeff_norm();

        // Trailing zero coefficients give the origin multiplicity directly.
        let mut p = self.clone();
        let mut origin_mult = 0usize;
        while !p.coeffs.is_empty() && p.coeffs[0].norm() <= tol * scale && p.degree() > 0 {
            p = p.deflate(Complex64::new(0.0, 0.0));
            origin_mult += 1;
        }

        let mut found: Vec<(Complex64, usize)> = Vec::new();
        if origin_mult > 0 {
            found.push((Complex64::new(0.0, 0.0), origin_mult));
        }

        // Iterated gcd-with-derivative chain. Round j's radical factor
        // carries every root of multiplicity >= j exactly once, so pushing
        // each found root once per round accumulates the true multiplicity.
        let mut round = 1usize;
        let mut current = p.clone();
        while current.degree() > 0 {
            let g = current.gcd(&current.derivative(), tol.sqrt())?;
            let (radical, rem) = current.div_rem(&g);
            // If the approximate division misbehaves, fall back to clustering
            // on the full remaining polynomial. A root of multiplicity m is
            // only located to ~tol^(1/m) there, hence the wide radius.
            if rem.max_coeff_norm() > 1e-6 * current.max_coeff_norm().max(1.0) {
                let raw = aberth(&current, tol)?;
                for (root, m) in cluster(raw, tol.powf(0.3)) {
                    push_root(&mut found, root, m, tol);
                }
                return Ok(normalize(found, self.degree()));
            }
            // The radical has simple roots only; keep the merge radius tight
            // so nearby genuine roots stay distinct.
            if radical.degree() > 0 {
                let raw = aberth(&radical, tol)?;
                for (root, m) in cluster(raw, tol.sqrt().max(1e-9)) {
                    push_root(&mut found, root, m, tol);
                }
            }
            current = g;
            round += 1;
            if round > self.degree() + 1 {
                break;
            }
        }
        Ok(normalize(found, self.degree()))
    }

    /// Order of vanishing at `a`: the number of computed roots that land in
    /// the cluster around `a`.
    pub fn order_at(&self, a: Complex64, tol: f64) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let radius = tol.sqrt().max(1e-7) * (1.0 + a.norm());
        let roots = self.roots_with_multiplicity(tol)?;
        Ok(roots
            .iter()
            .filter(|(r, _)| (r - a).norm() <= radius)
            .map(|(_, m)| m)
            .sum())
    }
}

fn push_root(found: &mut Vec<(Complex64, usize)>, root: Complex64, mult: usize, tol: f64) {
    let radius = tol.sqrt().max(1e-8) * (1.0 + root.norm());
    for (r, m) in found.iter_mut() {
        if (*r - root).norm() <= radius {
            *m += mult;
            return;
        }
    }
    found.push((root, mult));
}

fn normalize(mut found: Vec<(Complex64, usize)>, degree: usize) -> Vec<(Complex64, usize)> {
    found.sort_by(|a, b| {
        a.0.norm()
            .total_cmp(&b.0.norm())
            .then_with(|| a.0.re.total_cmp(&b.0.re))
            .then_with(|| a.0.im.total_cmp(&b.0.im))
    });
    debug_assert_eq!(found.iter().map(|(_, m)| m).sum::<usize>(), degree);
    found
}

/// Aberth-Ehrlich simultaneous iteration on a (nominally square-free) input.
fn aberth(p: &CPoly, tol: f64) -> Result<Vec<Complex64>, PolyError> {
    let n = p.degree();
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![-p.coeff(0) / p.coeff(1)]);
    }
    let dp = p.derivative();
    // Fujiwara root bound for the initial circle; much tighter than the
    // Cauchy bound when the coefficient range spans many decades.
    let lead = p.coeff(n).norm();
    let bound = 2.0
        * (1..=n)
            .map(|k| (p.coeff(n - k).norm() / lead).powf(1.0 / k as f64))
            .fold(0.0, f64::max);
    let bound = bound.max(1e-3);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.35;
            Complex64::from_polar(bound * 0.8, theta)
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let zi = zs[i];
            let pv = p.eval(zi);
            let dv = dp.eval(zi);
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &zj) in zs.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d.norm() > 1e-300 {
                        s += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            zs[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + zs[i].norm()));
        }
        if max_step < tol.max(1e-14) {
            return Ok(zs);
        }
    }
    // One last residual check before declaring non-convergence.
    let scale = p.max_coeff_norm();
    if zs
        .iter()
        .all(|&z| p.eval(z).norm() <= 1e-6 * scale * (1.0 + z.norm()).powi(n as i32))
    {
        return Ok(zs);
    }
    Err(PolyError::NoConvergence)
}

fn cluster(mut roots: Vec<Complex64>, radius_rel: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let radius = |z: Complex64| radius_rel.max(1e-8) * (1.0 + z.norm());
    roots.sort_by(|a, b| {
        a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
    });
    for z in roots {
        if let Some((c, m)) = out.iter_mut().find(|(c, _)| (*c - z).norm() <= radius(z)) {
            // Running mean keeps the cluster representative centered.
            *c = (*c * *m as f64 + z) / (*m as f64 + 1.0);
            *m += 1;
        } else {
            out.push((z, 1));
        }
    }
    out
}

impl std::ops::Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        CPoly::new(out)
    }
}

impl std::ops::Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        CPoly::new(out)
    }
}

impl std::ops::Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }
}
