//! Rational curves in `P^n`: reduced representations, derived curves through
//! exterior algebra, contact functions, stationarity orders, and the
//! infinitesimal Plücker density.

use crate::exterior::{subsets, ExteriorCovector, ExteriorVector};
use crate::poly::{CPoly, GaussRational, PolyError, XPoly, DEFAULT_TOL};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("all components are identically zero")]
    AllZero,
    #[error("need at least two components")]
    TooFewComponents,
    #[error("curve is linearly degenerate: F^{0} vanishes identically")]
    Degenerate(usize),
    #[error("evaluation at a zero of |F^{0}| (stationary locus)")]
    StationaryPoint(usize),
    #[error("jet level {level} out of range for P^{n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("target codimension incompatible with jet level")]
    CodimMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A rational curve `[f_0 : … : f_n]` in `P^n` by coprime components.
///
/// Components are always held as float polynomials; when the curve was built
/// from exact data the rational components are kept alongside so that orders
/// of vanishing and Wronskian minors can be computed exactly.
#[derive(Debug, Clone)]
pub struct ProjectiveCurve {
    pub n: usize,
    components: Vec<CPoly>,
    exact: Option<Vec<XPoly>>,
    degree: usize,
}

/// A linear subspace target of codimension `codim`, as the unit normal
/// covector of the corresponding hyperplane in Plücker coordinates.
#[derive(Debug, Clone)]
pub struct LinearTarget {
    pub ambient: usize,
    pub codim: usize,
    pub normal: ExteriorCovector,
}

impl LinearTarget {
    /// Hyperplane `{Σ a_i x_i = 0}`; the normal is rescaled to unit norm.
    pub fn hyperplane(a: &[Complex64]) -> Self {
        let v = ExteriorVector::from_vector(a);
        let norm = v.norm();
        assert!(norm > 0.0, "zero normal vector");
        Self {
            ambient: a.len(),
            codim: 1,
            normal: v.scale(Complex64::new(1.0 / norm, 0.0)),
        }
    }

    /// Intersection of `codim` hyperplanes: the wedge of their normals,
    /// normalized to unit Plücker norm.
    pub fn subspace(normals: &[Vec<Complex64>]) -> Self {
        assert!(!normals.is_empty());
        let ambient = normals[0].len();
        let mut w = ExteriorVector::from_vector(&normals[0]);
        for a in &normals[1..] {
            w = w.wedge(&ExteriorVector::from_vector(a)).unwrap();
        }
        let norm = w.norm();
        assert!(norm > 1e-12, "normals are linearly dependent");
        Self {
            ambient,
            codim: normals.len(),
            normal: w.scale(Complex64::new(1.0 / norm, 0.0)),
        }
    }
}

/// Divide out the common factor of float components through root clustering.
fn reduce_float(polys: &[CPoly]) -> Result<Vec<CPoly>, CurveError> {
    let nonzero: Vec<&CPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(CurveError::AllZero);
    }
    let mut g = nonzero[0].clone();
    for p in &nonzero[1..] {
        g = g.gcd(p, DEFAULT_TOL)?;
        if g.degree() == 0 {
            return Ok(polys.to_vec());
        }
    }
    let roots = g.roots_with_multiplicity(DEFAULT_TOL)?;
    let mut out = polys.to_vec();
    for (root, mult) in roots {
        for _ in 0..mult {
            for p in out.iter_mut() {
                if !p.is_zero() {
                    *p = p.deflate(root);
                }
            }
        }
    }
    Ok(out)
}

impl ProjectiveCurve {
    /// Reduced representation from float components: the common gcd is
    /// divided out so the components are coprime.
    pub fn from_float(polys: Vec<CPoly>) -> Result<Self, CurveError> {
        if polys.len() < 2 {
            return Err(CurveError::TooFewComponents);
        }
        if polys.iter().all(CPoly::is_zero) {
            return Err(CurveError::AllZero);
        }
        let components = reduce_float(&polys)?;
        let degree = components.iter().map(CPoly::degree).max().unwrap();
        Ok(Self {
            n: components.len() - 1,
            components,
            exact: None,
            degree,
        })
    }

    /// Reduced representation from exact components; the gcd is exact.
    pub fn from_exact(polys: Vec<XPoly>) -> Result<Self, CurveError> {
        if polys.len() < 2 {
            return Err(CurveError::TooFewComponents);
        }
        let nonzero: Vec<&XPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(CurveError::AllZero);
        }
        let mut g = nonzero[0].clone();
        for p in &nonzero[1..] {
            g = g.gcd(p)?;
            if g.degree() == 0 {
                break;
            }
        }
        let reduced: Vec<XPoly> = polys
            .iter()
            .map(|p| {
                if p.is_zero() {
                    XPoly::zero()
                } else {
                    p.exact_div(&g).expect("gcd divides every component")
                }
            })
            .collect();
        let components = reduced.iter().map(XPoly::to_cpoly).collect::<Vec<_>>();
        let degree = reduced.iter().map(XPoly::degree).max().unwrap();
        Ok(Self {
            n: reduced.len() - 1,
            components,
            exact: Some(reduced),
            degree,
        })
    }

    /// Convenience: integer coefficient lists, exact path.
    pub fn from_int_coeffs(comps: &[&[i64]]) -> Result<Self, CurveError> {
        Self::from_exact(comps.iter().map(|c| XPoly::from_ints(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[CPoly] {
        &self.components
    }

    pub fn exact_components(&self) -> Option<&[XPoly]> {
        self.exact.as_deref()
    }

    /// `F(z) = (f_0(z), …, f_n(z))` as a point of `C^{n+1}`.
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|p| p.eval(z)).collect()
    }

    /// The `ℓ`-th derivative vector `F^{(ℓ)}(z)`.
    pub fn eval_derivative(&self, order: usize, z: Complex64) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|p| {
                let mut q = p.clone();
                for _ in 0..order {
                    q = q.derivative();
                }
                q.eval(z)
            })
            .collect()
    }

    /// Plücker coordinates of the `k`-th derived curve: every coefficient is
    /// the Wronskian minor `det [f_{i_j}^{(ℓ)}]` as a symbolic polynomial.
    pub fn derived_polys(&self, k: usize) -> Result<Vec<(Vec<u8>, CPoly)>, CurveError> {
        if k > self.n {
            return Err(CurveError::LevelOutOfRange {
                level: k,
                n: self.n,
            });
        }
        // Rows: derivative orders 0..=k of each component.
        let mut rows: Vec<Vec<CPoly>> = vec![self.components.clone()];
        for _ in 0..k {
            let prev = rows.last().unwrap();
            rows.push(prev.iter().map(CPoly::derivative).collect());
        }
        let mut out = Vec::new();
        for subset in subsets(self.n + 1, k + 1) {
            let minor = det_cpoly(&rows, &subset);
            out.push((subset, minor));
        }
        Ok(out)
    }

    /// Exact Wronskian minors, available when the curve has exact components.
    pub fn derived_polys_exact(&self, k: usize) -> Option<Vec<(Vec<u8>, XPoly)>> {
        let exact = self.exact.as_ref()?;
        if k > self.n {
            return None;
        }
        let mut rows: Vec<Vec<XPoly>> = vec![exact.clone()];
        for _ in 0..k {
            let prev = rows.last().unwrap();
            rows.push(prev.iter().map(XPoly::derivative).collect());
        }
        Some(
            subsets(self.n + 1, k + 1)
                .into_iter()
                .map(|subset| {
                    let minor = det_xpoly(&rows, &subset);
                    (subset, minor)
                })
                .collect(),
        )
    }

    /// `F^k(z) = F(z) ∧ F'(z) ∧ … ∧ F^{(k)}(z)` as an exterior vector.
    pub fn derived_vector(&self, k: usize, z: Complex64) -> Result<ExteriorVector, CurveError> {
        if k > self.n {
            return Err(CurveError::LevelOutOfRange {
                level: k,
                n: self.n,
            });
        }
        let mut w = ExteriorVector::from_vector(&self.eval(z));
        for order in 1..=k {
            let d = ExteriorVector::from_vector(&self.eval_derivative(order, z));
            w = w.wedge(&d).expect("matching ambient");
        }
        Ok(w)
    }

    /// The Wronskian `W(f) = F^n` as a single polynomial. Vanishes
    /// identically exactly when the curve is linearly degenerate.
    pub fn wronskian_poly(&self) -> CPoly {
        self.derived_polys(self.n)
            .expect("top level always in range")
            .pop()
            .map(|(_, p)| p)
            .unwrap_or_else(CPoly::zero)
    }

    /// Exact Wronskian when exact components are available.
    pub fn wronskian_poly_exact(&self) -> Option<XPoly> {
        self.derived_polys_exact(self.n)
            .and_then(|mut v| v.pop())
            .map(|(_, p)| p)
    }

    /// True when no derived curve vanishes identically.
    pub fn is_nondegenerate(&self) -> bool {
        if let Some(w) = self.wronskian_poly_exact() {
            return !w.is_zero();
        }
        let w = self.wronskian_poly();
        !w.is_zero() && w.max_coeff_norm() > 1e-9 * self.scale_bound()
    }

    fn scale_bound(&self) -> f64 {
        self.components
            .iter()
            .map(CPoly::max_coeff_norm)
            .fold(1.0, f64::max)
    }

    /// `|F^k(z)|^2`, with the convention `F^{-1} = 1`.
    pub fn derived_norm_sqr(&self, k: isize, z: Complex64) -> Result<f64, CurveError> {
        if k < 0 {
            return Ok(1.0);
        }
        Ok(self.derived_vector(k as usize, z)?.norm_sqr())
    }

    /// Contact function `φ_k(H) = |F^k ⌐ a|^2 / |F^k|^2 ∈ [0, 1]`.
    pub fn contact_function(
        &self,
        target: &LinearTarget,
        k: usize,
        z: Complex64,
    ) -> Result<f64, CurveError> {
        if target.codim == 0 || target.codim - 1 > k || k > self.n {
            return Err(CurveError::CodimMismatch);
        }
        let fk = self.derived_vector(k, z)?;
        let denom = fk.norm_sqr();
        if denom <= 1e-280 {
            return Err(CurveError::StationaryPoint(k));
        }
        let contracted = fk.interior(&target.normal).expect("level checked");
        Ok(contracted.norm_sqr() / denom)
    }

    /// Infinitesimal Plücker density
    /// `h_k(z) = |F^{k-1}|^2 |F^{k+1}|^2 / |F^k|^4`.
    pub fn plucker_density(&self, k: usize, z: Complex64) -> Result<f64, CurveError> {
        if k + 1 > self.n {
            return Err(CurveError::LevelOutOfRange {
                level: k + 1,
                n: self.n,
            });
        }
        for j in 1..=(k + 1) {
            if self.derived_identically_zero(j) {
                return Err(CurveError::Degenerate(j));
            }
        }
        let mid = self.derived_norm_sqr(k as isize, z)?;
        if mid <= 1e-280 {
            return Err(CurveError::StationaryPoint(k));
        }
        let lo = self.derived_norm_sqr(k as isize - 1, z)?;
        let hi = self.derived_norm_sqr(k as isize + 1, z)?;
        Ok(lo * hi / (mid * mid))
    }

    fn derived_identically_zero(&self, k: usize) -> bool {
        if let Some(minors) = self.derived_polys_exact(k) {
            return minors.iter().all(|(_, p)| p.is_zero());
        }
        let scale = self.scale_bound();
        self.derived_polys(k)
            .map(|minors| {
                minors
                    .iter()
                    .all(|(_, p)| p.max_coeff_norm() <= 1e-10 * scale)
            })
            .unwrap_or(true)
    }

    /// Stationarity indices `(ν_1, …, ν_n)` at `z0`, from the orders of
    /// vanishing `o_k` of the derived curves via `ν_k = o_k - 2o_{k-1} + o_{k-2}`.
    pub fn vanishing_orders(&self, z0: Complex64) -> Result<Vec<i64>, CurveError> {
        let orders = self.derived_orders(z0)?;
        let mut nu = Vec::with_capacity(self.n);
        for k in 1..=self.n {
            let o_k = orders[k] as i64;
            let o_k1 = orders[k - 1] as i64;
            let o_k2 = if k >= 2 { orders[k - 2] as i64 } else { 0 };
            nu.push(o_k - 2 * o_k1 + o_k2);
        }
        Ok(nu)
    }

    /// Orders of vanishing `o_k = ord_{z0} F^k` for `k = 0..=n`.
    pub fn derived_orders(&self, z0: Complex64) -> Result<Vec<usize>, CurveError> {
        // Exact path when the curve and the point are both exact.
        let exact_point = (z0.im == 0.0 && z0.re.fract() == 0.0).then(|| {
            GaussRational::from_int(z0.re as i64)
        });
        let mut orders = Vec::with_capacity(self.n + 1);
        for k in 0..=self.n {
            if let (Some(_), Some(minors)) = (&exact_point, self.derived_polys_exact(k)) {
                if minors.iter().all(|(_, p)| p.is_zero()) {
                    return Err(CurveError::Degenerate(k));
                }
                let a = exact_point.clone().unwrap();
                let mut o = usize::MAX;
                for (_, p) in &minors {
                    if !p.is_zero() {
                        o = o.min(p.order_at(&a)?);
                    }
                }
                orders.push(o);
            } else {
                let minors = self.derived_polys(k)?;
                let scale = minors
                    .iter()
                    .map(|(_, p)| p.max_coeff_norm())
                    .fold(0.0, f64::max);
                if scale <= 1e-10 * self.scale_bound() {
                    return Err(CurveError::Degenerate(k));
                }
                let mut o = usize::MAX;
                for (_, p) in &minors {
                    if !p.is_zero() && p.max_coeff_norm() > 1e-10 * scale {
                        o = o.min(p.order_at(z0, DEFAULT_TOL)?);
                    }
                }
                orders.push(o);
            }
        }
        Ok(orders)
    }

    /// Curve in normal form at the origin with prescribed stationarity
    /// indices: `[1 : z^{ν_1+1} : z^{ν_1+ν_2+2} : …]`.
    pub fn normal_form(nu: &[u32]) -> Self {
        let mut comps = vec![XPoly::one()];
        let mut power = 0usize;
        for &v in nu {
            power += v as usize + 1;
            comps.push(XPoly::monomial(power));
        }
        Self::from_exact(comps).expect("normal form is reduced")
    }
}

fn det_cpoly(rows: &[Vec<CPoly>], cols: &[u8]) -> CPoly {
    let k = cols.len();
    // Laplace over permutations; k ≤ 5 in practice.
    let mut total = CPoly::zero();
    permutations(k, &mut |perm, sign| {
        let mut prod = CPoly::one();
        for (row, &pcol) in perm.iter().enumerate() {
            prod = &prod * &rows[row][cols[pcol] as usize];
        }
        if sign < 0 {
            prod = prod.scale(Complex64::new(-1.0, 0.0));
        }
        total = &total + &prod;
    });
    total
}

fn det_xpoly(rows: &[Vec<XPoly>], cols: &[u8]) -> XPoly {
    let k = cols.len();
    let mut total = XPoly::zero();
    permutations(k, &mut |perm, sign| {
        let mut prod = XPoly::one();
        for (row, &pcol) in perm.iter().enumerate() {
            prod = &prod * &rows[row][cols[pcol] as usize];
        }
        if sign < 0 {
            prod = prod.scale(&-GaussRational::one());
        }
        total = &total + &prod;
    });
    total
}

/// Visit all permutations of `0..k` with their signs (Heap's algorithm).
pub fn permutations(k: usize, visit: &mut impl FnMut(&[usize], i32)) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1i32;
    visit(&perm, sign);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            visit(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reduce_divides_common_factor() {
        // [z, z^2] -> [1, z]
        let f = ProjectiveCurve::from_int_coeffs(&[&[0, 1], &[0, 0, 1]]).unwrap();
        assert_eq!(f.exact_components().unwrap()[0].degree(), 0);
        assert_eq!(f.exact_components().unwrap()[1].degree(), 1);
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn reduce_keeps_coprime_input() {
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.exact_components().unwrap()[2].degree(), 2);
    }

    #[test]
    fn reduce_factor_oracle() {
        // [z-1, z^2-1] -> [1, z+1]
        let f = ProjectiveCurve::from_int_coeffs(&[&[-1, 1], &[-1, 0, 1]]).unwrap();
        let comps = f.exact_components().unwrap();
        assert_eq!(comps[0], XPoly::one());
        assert_eq!(comps[1], XPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn all_zero_rejected() {
        assert!(matches!(
            ProjectiveCurve::from_float(vec![CPoly::zero(), CPoly::zero()]),
            Err(CurveError::AllZero)
        ));
    }

    #[test]
    fn wronskian_of_rational_normal_curve() {
        // [1 : z : z^2]: symbolic 3x3 determinant gives the constant 2.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let w = f.wronskian_poly_exact().unwrap();
        assert_eq!(w, XPoly::from_ints(&[2]));
    }

    #[test]
    fn wronskian_column_reduction() {
        // [1 : z : z^2 + z]: column operations leave W = 2.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(f.wronskian_poly_exact().unwrap(), XPoly::from_ints(&[2]));
    }

    #[test]
    fn wronskian_degenerate_vanishes() {
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 2]]).unwrap();
        assert!(f.wronskian_poly_exact().unwrap().is_zero());
        assert!(!f.is_nondegenerate());
    }

    #[test]
    fn derived_vector_matches_symbolic_minors() {
        // Two routes: numeric wedge of derivative vectors vs symbolic minors.
        let f =
            ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 2, 1], &[3, 0, 0, 1], &[0, 1]]).unwrap();
        for k in 0..=2usize {
            let z = c(0.7, -0.3);
            let wedge = f.derived_vector(k, z).unwrap();
            for (subset, minor) in f.derived_polys(k).unwrap() {
                let direct = minor.eval(z);
                assert!(
                    (wedge.coeff(&subset) - direct).norm() < 1e-9 * (1.0 + direct.norm()),
                    "minor {subset:?} disagrees at level {k}"
                );
            }
        }
    }

    #[test]
    fn derived_level_zero_is_curve() {
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1]]).unwrap();
        let z = c(2.0, 1.0);
        let v = f.derived_vector(0, z).unwrap();
        assert_eq!(v.coeff(&[0]), c(1.0, 0.0));
        assert!((v.coeff(&[1]) - z).norm() < 1e-15);
    }

    #[test]
    fn line_derived_one_constant() {
        // f = [1 : z], k = 1: coefficient at {0,1} is det [[1, z], [0, 1]] = 1.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1]]).unwrap();
        let v = f.derived_vector(1, c(5.3, -2.2)).unwrap();
        assert!((v.coeff(&[0, 1]) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn contact_function_line_hyperplane() {
        // f = [1 : z], H = {x_1 = 0}: φ_0 at z = 1 is |z|^2/(1+|z|^2) = 1/2.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1]]).unwrap();
        let h = LinearTarget::hyperplane(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let phi0 = f.contact_function(&h, 0, c(1.0, 0.0)).unwrap();
        assert!((phi0 - 0.5).abs() < 1e-12);
        // k = 1: |F^1 ⌐ a|^2/|F^1|^2 with F^1 = e0∧e1, a = e1*: contraction -e0.
        let phi1 = f.contact_function(&h, 1, c(1.0, 0.0)).unwrap();
        assert!((phi1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn contact_vanishes_on_contained_curve() {
        // Curve inside {x_2 = 0}: φ_0 ≡ 0.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0]]).unwrap();
        let h = LinearTarget::hyperplane(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        for z in [c(0.3, 0.4), c(-1.0, 2.0)] {
            assert!(f.contact_function(&h, 0, z).unwrap() < 1e-28);
        }
    }

    #[test]
    fn contact_in_unit_interval() {
        let f =
            ProjectiveCurve::from_int_coeffs(&[&[1, 1], &[0, 2, 1], &[3, 0, 1]]).unwrap();
        let h = LinearTarget::hyperplane(&[c(0.3, 0.1), c(-0.5, 0.0), c(0.2, 0.7)]);
        for (k, z) in [(0usize, c(0.6, 0.1)), (1, c(-0.4, 0.9)), (2, c(1.3, -0.7))] {
            let phi = f.contact_function(&h, k, z).unwrap();
            assert!((0.0..=1.0 + 1e-12).contains(&phi), "φ_{k} = {phi}");
        }
    }

    #[test]
    fn vanishing_orders_normal_form() {
        // [1 : z^2 : z^3] has (ν_1, ν_2) = (1, 0) at 0.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 0, 1], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(f.vanishing_orders(c(0.0, 0.0)).unwrap(), vec![1, 0]);
        // [1 : z : z^2] is immersed everywhere.
        let g = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        assert_eq!(g.vanishing_orders(c(0.0, 0.0)).unwrap(), vec![0, 0]);
        assert_eq!(g.vanishing_orders(c(3.0, 0.0)).unwrap(), vec![0, 0]);
        // [1 : z^3 : z^5] has (ν_1, ν_2) = (2, 1): o_1 = ord(F ∧ F') = 2.
        let h = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 0, 0, 1], &[0, 0, 0, 0, 0, 1]])
            .unwrap();
        assert_eq!(h.derived_orders(c(0.0, 0.0)).unwrap()[1], 2);
        assert_eq!(h.vanishing_orders(c(0.0, 0.0)).unwrap(), vec![2, 1]);
    }

    #[test]
    fn vanishing_orders_degenerate_errors() {
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 2]]).unwrap();
        assert!(matches!(
            f.vanishing_orders(c(0.0, 0.0)),
            Err(CurveError::Degenerate(_))
        ));
    }

    #[test]
    fn plucker_density_line() {
        // f = [1 : z]: h_0 = 1/(1+|z|^2)^2.
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1]]).unwrap();
        assert!((f.plucker_density(0, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        assert!((f.plucker_density(0, c(1.0, 0.0)).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn plucker_density_degenerate_errors() {
        let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 2]]).unwrap();
        assert!(matches!(
            f.plucker_density(1, c(0.5, 0.0)),
            Err(CurveError::Degenerate(_))
        ));
    }

    #[test]
    fn plucker_density_is_mixed_log_derivative() {
        // ∂_z ∂_z̄ log |F^k|^2 = h_k, checked by the 5-point Laplacian / 4.
        let f =
            ProjectiveCurve::from_int_coeffs(&[&[1, 2], &[0, 1, 1], &[1, 0, 0, 2]]).unwrap();
        for (k, z) in [(0usize, c(0.8, 0.3)), (1, c(-0.5, 1.1))] {
            let h = f.plucker_density(k, z).unwrap();
            let step = 1e-4 * (1.0 + z.norm());
            let u = |w: Complex64| f.derived_norm_sqr(k as isize, w).unwrap().ln();
            let lap = (u(z + step) + u(z - step) + u(z + step * c(0.0, 1.0))
                + u(z - step * c(0.0, 1.0))
                - 4.0 * u(z))
                / (step * step);
            let fd = lap / 4.0;
            assert!(
                (fd - h).abs() <= 1e-4 * h.abs().max(1e-8),
                "k={k}: fd {fd} vs h {h}"
            );
        }
    }

    #[test]
    fn normal_form_roundtrip() {
        let f = ProjectiveCurve::normal_form(&[2, 0, 1]);
        assert_eq!(f.vanishing_orders(c(0.0, 0.0)).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn contained_curve_order_formula() {
        // ord F^k = k ν_1 + (k-1) ν_2 + … + ν_k for the normal form.
        let nu = [1u32, 2, 0];
        let f = ProjectiveCurve::normal_form(&nu);
        let orders = f.derived_orders(c(0.0, 0.0)).unwrap();
        for k in 0..=3usize {
            let expect: usize = (1..=k).map(|j| (k - j + 1) * nu[j - 1] as usize).sum();
            assert_eq!(orders[k], expect, "order of F^{k}");
        }
    }
}
