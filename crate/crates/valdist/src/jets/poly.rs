//! Exact polynomials in jet variables `x_j^(ℓ)` with the weighted-degree
//! grading coming from the homothety action
//! `λ · (f', f'', …) = (λ f', λ^2 f'', …)`.

use super::{JetError, MAX_JET_ORDER};
use crate::poly::{GaussRational, MPoly};
use num_complex::Complex64;
use std::collections::{BTreeMap, HashMap};

/// One jet variable: coordinate index and derivative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVar {
    pub coord: u16,
    pub order: u16,
}

impl JetVar {
    pub fn new(coord: usize, order: usize) -> Self {
        Self {
            coord: coord as u16,
            order: order as u16,
        }
    }
}

/// Sparse monomial: sorted `(variable, exponent)` pairs, exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetMonomial(pub Vec<(JetVar, u32)>);

impl JetMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Weighted degree `Σ ℓ · e` over factors of order `ℓ`.
    pub fn weighted_degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.order as u32 * e).sum()
    }

    /// Partial weighted degree `|ℓ|_s = Σ_{1 ≤ o ≤ s} o · e_o`.
    pub fn partial_weighted_degree(&self, s: u32) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.order >= 1 && (v.order as u32) <= s)
            .map(|(v, e)| v.order as u32 * e)
            .sum()
    }

    /// Tail weighted degree `|ℓ|_{>s} = Σ_{o > s} (o - s) · e_o`.
    pub fn tail_weighted_degree(&self, s: u32) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| (v.order as u32) > s)
            .map(|(v, e)| (v.order as u32 - s) * e)
            .sum()
    }

    pub fn max_order(&self) -> u16 {
        self.0.iter().map(|(v, _)| v.order).max().unwrap_or(0)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for &(v, e) in &other.0 {
            match out.binary_search_by(|(w, _)| w.cmp(&v)) {
                Ok(i) => out[i].1 += e,
                Err(i) => out.insert(i, (v, e)),
            }
        }
        Self(out)
    }
}

impl Ord for JetMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial in jet variables over `ncoords` base coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoly {
    pub ncoords: usize,
    terms: BTreeMap<JetMonomial, GaussRational>,
}

impl JetPoly {
    pub fn zero(ncoords: usize) -> Self {
        Self {
            ncoords,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ncoords: usize, c: GaussRational) -> Self {
        let mut p = Self::zero(ncoords);
        if !c.is_zero() {
            p.terms.insert(JetMonomial::one(), c);
        }
        p
    }

    pub fn one(ncoords: usize) -> Self {
        Self::constant(ncoords, GaussRational::one())
    }

    pub fn var(ncoords: usize, v: JetVar) -> Self {
        let mut p = Self::zero(ncoords);
        p.terms
            .insert(JetMonomial(vec![(v, 1)]), GaussRational::one());
        p
    }

    /// Embed a base polynomial as an order-zero jet polynomial.
    pub fn from_mpoly(m: &MPoly) -> Self {
        let ncoords = m.num_vars();
        let mut p = Self::zero(ncoords);
        for (mono, c) in m.terms() {
            let mut factors = Vec::new();
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    factors.push((JetVar::new(i, 0), e));
                }
            }
            p.add_term(JetMonomial(factors), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: JetMonomial, c: GaussRational) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn max_order(&self) -> u16 {
        self.terms.keys().map(JetMonomial::max_order).max().unwrap_or(0)
    }

    fn check_coords(&self, other: &Self) -> Result<(), JetError> {
        if self.ncoords == other.ncoords {
            Ok(())
        } else {
            Err(JetError::CoordMismatch {
                left: self.ncoords,
                right: other.ncoords,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, JetError> {
        self.check_coords(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, JetError> {
        self.check_coords(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, JetError> {
        self.check_coords(other)?;
        let mut out = Self::zero(self.ncoords);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        let mut out = Self::zero(self.ncoords);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussRational::one())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ncoords);
        for _ in 0..e {
            acc = acc.mul(self).expect("same coords");
        }
        acc
    }

    /// Weighted degree when isobaric; `None` for mixed weights.
    /// The zero polynomial reports weight 0.
    pub fn isobaric_weight(&self) -> Option<u32> {
        let mut weight = None;
        for m in self.terms.keys() {
            let w = m.weighted_degree();
            match weight {
                None => weight = Some(w),
                Some(prev) if prev != w => return None,
                _ => {}
            }
        }
        Some(weight.unwrap_or(0))
    }

    /// Total derivative: the derivation with `D(x_j^(ℓ)) = x_j^(ℓ+1)` and
    /// the Leibniz rule; raises the weighted degree of isobaric input by 1.
    pub fn total_derivative(&self) -> Result<Self, JetError> {
        let mut out = Self::zero(self.ncoords);
        for (m, c) in &self.terms {
            for (idx, &(v, e)) in m.0.iter().enumerate() {
                if v.order as usize + 1 > MAX_JET_ORDER {
                    return Err(JetError::OrderOverflow {
                        order: v.order as usize + 1,
                        max: MAX_JET_ORDER,
                    });
                }
                // c · e · v^{e-1} · v⁺ · (other factors)
                let mut factors = Vec::with_capacity(m.0.len() + 1);
                for (jdx, &(w, ew)) in m.0.iter().enumerate() {
                    let adjusted = if jdx == idx { ew - 1 } else { ew };
                    if adjusted > 0 {
                        factors.push((w, adjusted));
                    }
                }
                let bumped = JetVar {
                    coord: v.coord,
                    order: v.order + 1,
                };
                match factors.binary_search_by(|(w, _)| w.cmp(&bumped)) {
                    Ok(i) => factors[i].1 += 1,
                    Err(i) => factors.insert(i, (bumped, 1)),
                }
                out.add_term(
                    JetMonomial(factors),
                    c * &GaussRational::from_int(e as i64),
                );
            }
        }
        Ok(out)
    }

    /// `ℓ`-fold total derivative.
    pub fn total_derivative_n(&self, l: usize) -> Result<Self, JetError> {
        let mut p = self.clone();
        for _ in 0..l {
            p = p.total_derivative()?;
        }
        Ok(p)
    }

    /// Substitute every variable by the supplied image, with power caching.
    pub fn substitute(
        &self,
        image: &dyn Fn(JetVar) -> JetPoly,
    ) -> Result<Self, JetError> {
        let mut cache: HashMap<(JetVar, u32), JetPoly> = HashMap::new();
        let mut out = Self::zero(self.ncoords);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.ncoords, c.clone());
            for &(v, e) in &m.0 {
                let powed = cache
                    .entry((v, e))
                    .or_insert_with(|| image(v).pow(e))
                    .clone();
                term = term.mul(&powed)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Numeric evaluation on a jet `jet[coord][order]`.
    pub fn eval_complex(&self, jet: &[Vec<Complex64>]) -> Result<Complex64, JetError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for &(v, e) in &m.0 {
                let val = jet
                    .get(v.coord as usize)
                    .and_then(|row| row.get(v.order as usize))
                    .ok_or(JetError::MissingJetOrder {
                        coord: v.coord as usize,
                        order: v.order as usize,
                    })?;
                t *= val.powu(e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation on a rational jet.
    pub fn eval_exact(&self, jet: &[Vec<GaussRational>]) -> Result<GaussRational, JetError> {
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let val = jet
                    .get(v.coord as usize)
                    .and_then(|row| row.get(v.order as usize))
                    .ok_or(JetError::MissingJetOrder {
                        coord: v.coord as usize,
                        order: v.order as usize,
                    })?;
                t = &t * &val.pow(e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Leading term in the monomial order.
    pub fn leading(&self) -> Option<(&JetMonomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    /// Exact division when `self = q · d`; `None` otherwise.
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (dlm, dlc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.ncoords);
        while !rem.is_zero() {
            let (rlm, rlc) = rem.leading().unwrap();
            let qm = monomial_div(rlm, dlm)?;
            let qc = rlc / dlc;
            let mut qterm = Self::zero(self.ncoords);
            qterm.add_term(qm, qc);
            rem = rem.sub(&qterm.mul(d).ok()?).ok()?;
            quot = quot.add(&qterm).ok()?;
        }
        Some(quot)
    }

    /// Up-to-scalar comparison: equal after normalizing leading coefficients.
    pub fn eq_up_to_scalar(&self, other: &Self) -> bool {
        match (self.leading(), other.leading()) {
            (None, None) => true,
            (Some((ma, ca)), Some((mb, cb))) => {
                ma == mb && self.scale(&ca.inv()) == other.scale(&cb.inv())
            }
            _ => false,
        }
    }
}

fn monomial_div(a: &JetMonomial, b: &JetMonomial) -> Option<JetMonomial> {
    let mut out = a.0.clone();
    for &(v, e) in &b.0 {
        let i = out.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        if out[i].1 < e {
            return None;
        }
        out[i].1 -= e;
    }
    out.retain(|(_, e)| *e > 0);
    Some(JetMonomial(out))
}

impl std::fmt::Display for JetPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
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
            for &(v, e) in &m.0 {
                write!(f, "*x{}^({})", v.coord, v.order)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Wronskian jet polynomial `W(σ_0, …, σ_k)`: the determinant of the matrix
/// with rows `d^[ℓ] σ_j`, computed by subset dynamic programming so shared
/// minors are expanded once.
pub fn wronskian_jet(sections: &[MPoly]) -> Result<JetPoly, JetError> {
    let k = sections.len().checked_sub(1).ok_or(JetError::NoSections)?;
    let ncoords = sections[0].num_vars();
    let mut columns: Vec<Vec<JetPoly>> = Vec::with_capacity(k + 1);
    for s in sections {
        if s.num_vars() != ncoords {
            return Err(JetError::CoordMismatch {
                left: ncoords,
                right: s.num_vars(),
            });
        }
        let base = JetPoly::from_mpoly(s);
        let mut col = vec![base];
        for _ in 0..k {
            let next = col.last().unwrap().total_derivative()?;
            col.push(next);
        }
        columns.push(col);
    }
    Ok(det_by_minors(&columns))
}

/// Determinant of `columns[j][row]` by DP over column subsets.
pub fn det_by_minors(columns: &[Vec<JetPoly>]) -> JetPoly {
    let n = columns.len();
    let ncoords = columns[0][0].ncoords;
    let full: u32 = (1 << n) - 1;
    let mut minors: HashMap<u32, JetPoly> = HashMap::new();
    minors.insert(0, JetPoly::one(ncoords));
    // Subsets ordered by popcount.
    let mut subsets: Vec<u32> = (1..=full).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let size = s.count_ones() as usize;
        let row = size - 1;
        let mut acc = JetPoly::zero(ncoords);
        let mut t = 0usize; // position of the column within the subset
        for j in 0..n {
            if s & (1 << j) != 0 {
                let sub = minors[&(s & !(1 << j))].clone();
                let term = columns[j][row].mul(&sub).expect("same coords");
                if (row + t) % 2 == 0 {
                    acc = acc.add(&term).expect("same coords");
                } else {
                    acc = acc.sub(&term).expect("same coords");
                }
                t += 1;
            }
        }
        minors.insert(s, acc);
    }
    minors.remove(&full).unwrap()
}

/// Min/max of `|ℓ|_s` and max of `|ℓ|_{>s}` over the stored monomials.
pub fn partial_degrees(p: &JetPoly, s: u32) -> (u32, u32, u32) {
    let mut min_s = u32::MAX;
    let mut max_s = 0;
    let mut max_tail = 0;
    for (m, _) in p.terms() {
        let ds = m.partial_weighted_degree(s);
        min_s = min_s.min(ds);
        max_s = max_s.max(ds);
        max_tail = max_tail.max(m.tail_weighted_degree(s));
    }
    if min_s == u32::MAX {
        min_s = 0;
    }
    (min_s, max_s, max_tail)
}

/// Membership test for the filtration subspace attached to `a = (a_1..a_k)`:
/// the polynomial must be isobaric of weight `Σ a`, and every monomial must
/// satisfy `|ℓ|_{>s} ≤ a_{s+1} + … + a_k` for each `0 ≤ s ≤ k-1`.
pub fn filtration_check(p: &JetPoly, a: &[u32]) -> bool {
    let total: u32 = a.iter().sum();
    match p.isobaric_weight() {
        Some(w) if w == total => {}
        _ => return false,
    }
    let k = a.len() as u32;
    for (m, _) in p.terms() {
        for s in 0..k {
            let bound: u32 = a[s as usize..].iter().sum();
            if m.tail_weighted_degree(s) > bound {
                return false;
            }
        }
    }
    true
}

/// Checks `W(A·σ) = det(A) · W(σ)` exactly for a square matrix acting on
/// the section slots.
pub fn sl_action_check(
    a: &[Vec<GaussRational>],
    sections: &[MPoly],
) -> Result<bool, JetError> {
    let n = sections.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(JetError::MatrixShape);
    }
    let mut transformed = Vec::with_capacity(n);
    for row in a {
        let mut acc = MPoly::zero(sections[0].vars().clone());
        for (coef, s) in row.iter().zip(sections) {
            acc = acc
                .add(&s.scale(coef))
                .map_err(|_| JetError::CoordMismatch {
                    left: sections[0].num_vars(),
                    right: s.num_vars(),
                })?;
        }
        transformed.push(acc);
    }
    let lhs = wronskian_jet(&transformed)?;
    let rhs = wronskian_jet(sections)?.scale(&det_gauss(a));
    Ok(lhs == rhs)
}

/// Exact determinant of a small Gaussian-rational matrix.
pub fn det_gauss(a: &[Vec<GaussRational>]) -> GaussRational {
    let n = a.len();
    let mut total = GaussRational::zero();
    crate::curves::permutations(n, &mut |perm, sign| {
        let mut prod = GaussRational::one();
        for (i, &j) in perm.iter().enumerate() {
            prod = &prod * &a[i][j];
        }
        if sign < 0 {
            prod = -prod;
        }
        total = &total + &prod;
    });
    total
}
