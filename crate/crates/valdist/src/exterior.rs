//! Exterior algebra on `C^{N+1}` in Plücker coordinates: wedge products,
//! the dual pairing, and the interior product that drives contact functions.
//!
//! Level-(k+1) vectors are stored as maps from strictly increasing index
//! subsets of `{0..N}` to complex coefficients.

use num_complex::Complex64;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("covector level {covector} exceeds vector level {vector}")]
    LevelMismatch { vector: usize, covector: usize },
}

/// Element of `Λ^level C^ambient`, indexed by sorted subsets.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorVector {
    pub ambient: usize,
    pub level: usize,
    coeffs: BTreeMap<Vec<u8>, Complex64>,
}

/// Element of `Λ^level (C^ambient)^*`; same storage, dual role.
pub type ExteriorCovector = ExteriorVector;

impl ExteriorVector {
    pub fn zero(ambient: usize, level: usize) -> Self {
        assert!(level <= ambient, "level exceeds ambient dimension");
        Self {
            ambient,
            level,
            coeffs: BTreeMap::new(),
        }
    }

    /// A plain vector in `C^ambient` (level 1).
    pub fn from_vector(v: &[Complex64]) -> Self {
        let mut out = Self::zero(v.len(), 1);
        for (i, &c) in v.iter().enumerate() {
            out.set(vec![i as u8], c);
        }
        out
    }

    /// Basis element `e_{i0} ∧ … ∧ e_{ik}` for a strictly increasing subset.
    pub fn basis(ambient: usize, subset: &[u8]) -> Self {
        assert!(subset.windows(2).all(|w| w[0] < w[1]), "subset not sorted");
        let mut out = Self::zero(ambient, subset.len());
        out.set(subset.to_vec(), Complex64::new(1.0, 0.0));
        out
    }

    pub fn set(&mut self, subset: Vec<u8>, c: Complex64) {
        debug_assert_eq!(subset.len(), self.level);
        debug_assert!(subset.iter().all(|&i| (i as usize) < self.ambient));
        if c.norm() == 0.0 {
            self.coeffs.remove(&subset);
        } else {
            self.coeffs.insert(subset, c);
        }
    }

    pub fn coeff(&self, subset: &[u8]) -> Complex64 {
        self.coeffs
            .get(subset)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<u8>, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Euclidean norm squared of the Plücker coordinates.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.ambient, self.level);
        for (k, &c) in &self.coeffs {
            out.set(k.clone(), c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (k, &c) in &other.coeffs {
            let v = out.coeff(k) + c;
            out.set(k.clone(), v);
        }
        out
    }

    /// Wedge product; levels add.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        if self.ambient != other.ambient {
            return Err(ExteriorError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut out = Self::zero(self.ambient, self.level + other.level);
        for (ka, &ca) in &self.coeffs {
            for (kb, &cb) in &other.coeffs {
                if let Some((merged, sign)) = merge_sorted(ka, kb) {
                    let v = out.coeff(&merged) + ca * cb * sign;
                    out.set(merged, v);
                }
            }
        }
        Ok(out)
    }

    /// Full dual pairing `β(α)` between equal-level covector and vector:
    /// `e*_K(e_I) = δ_{K,I}` on sorted subsets.
    pub fn pair(covector: &Self, vector: &Self) -> Complex64 {
        debug_assert_eq!(covector.level, vector.level);
        covector
            .coeffs
            .iter()
            .map(|(k, &c)| c * vector.coeff(k))
            .sum()
    }

    /// Interior product `self ⌐ β`, the unique level `p-q` vector with
    /// `γ(self ⌐ β) = (β ∧ γ)(self)` for every test covector `γ`.
    pub fn interior(&self, covector: &Self) -> Result<Self, ExteriorError> {
        if self.ambient != covector.ambient {
            return Err(ExteriorError::AmbientMismatch(
                self.ambient,
                covector.ambient,
            ));
        }
        if covector.level > self.level {
            return Err(ExteriorError::LevelMismatch {
                vector: self.level,
                covector: covector.level,
            });
        }
        let out_level = self.level - covector.level;
        let mut out = Self::zero(self.ambient, out_level);
        // Coefficient at K: sum over J disjoint from K with J ∪ K sorted equal
        // to a stored subset I, weighted by the (β ∧ γ) reordering sign.
        for (i_subset, &a) in &self.coeffs {
            for (j_subset, &b) in &covector.coeffs {
                if let Some((k_subset, sign)) = complement_with_sign(i_subset, j_subset) {
                    let v = out.coeff(&k_subset) + a * b * sign;
                    out.set(k_subset, v);
                }
            }
        }
        Ok(out)
    }
}

/// Merge two sorted disjoint subsets, returning the permutation sign that
/// sorts their concatenation. `None` when they intersect.
fn merge_sorted(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, f64)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i] < b[j]) {
            merged.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining elements of a.
            inversions += a.len() - i;
            merged.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    Some((merged, sign))
}

/// For sorted `I` and `J ⊆ I`: the complement `K = I \ J` together with the
/// sign of reordering the concatenation `(J, K)` into `I`. `None` if `J ⊄ I`.
pub(crate) fn complement_with_sign(i_subset: &[u8], j_subset: &[u8]) -> Option<(Vec<u8>, f64)> {
    let mut k_subset = Vec::with_capacity(i_subset.len() - j_subset.len());
    for &x in i_subset {
        if !j_subset.contains(&x) {
            k_subset.push(x);
        }
    }
    if k_subset.len() + j_subset.len() != i_subset.len() || !j_subset.iter().all(|x| i_subset.contains(x)) {
        return None;
    }
    let (_, sign) = merge_sorted(j_subset, &k_subset)?;
    Some((k_subset, sign))
}

/// Strictly increasing `k`-subsets of `{0..n-1}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i as u8);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
