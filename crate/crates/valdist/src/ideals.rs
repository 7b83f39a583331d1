//! Generator-level jets of subscheme ideals and the Wronskian-ideal
//! identities: everything here is the computable avatar of ideal-sheaf
//! statements, checked on explicit generator lists and syzygies rather than
//! through Gröbner machinery.

use crate::crofton::SplitMix64;
use crate::jets::{wronskian_jet, JetError, JetPoly};
use crate::poly::MPoly;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("generator list is empty")]
    Empty,
    #[error("jet order must be at least 1")]
    OrderZero,
    #[error("basis prefix length exceeds the basis")]
    BadPrefix,
    #[error("degree {degree} cannot separate {k}-jets")]
    CannotSeparate { degree: u32, k: usize },
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// An ideal by its generator list; zero generators are dropped.
#[derive(Debug, Clone)]
pub struct IdealModel {
    generators: Vec<MPoly>,
}

impl IdealModel {
    pub fn new(generators: Vec<MPoly>) -> Result<Self, IdealError> {
        let generators: Vec<MPoly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(IdealError::Empty);
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }
}

/// Jet ideal presentation: the original generators together with their
/// total derivatives up to the stated order.
#[derive(Debug, Clone)]
pub struct JetIdealModel {
    pub order: usize,
    generators: Vec<JetPoly>,
}

impl JetIdealModel {
    pub fn generators(&self) -> &[JetPoly] {
        &self.generators
    }

    /// Multiset equality up to a nonzero scalar on each generator.
    pub fn same_generators(&self, other: &Self) -> bool {
        if self.generators.len() != other.generators.len() {
            return false;
        }
        let mut used = vec![false; other.generators.len()];
        'outer: for g in &self.generators {
            for (i, h) in other.generators.iter().enumerate() {
                if !used[i] && g.eq_up_to_scalar(h) {
                    used[i] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// `Z^{(k)}` at generator level: `{ D^j ζ_i : 0 ≤ j ≤ k }`. Iterating the
/// order-1 rule collapses to closure under the total derivative.
pub fn jet_ideal(z: &IdealModel, k: usize) -> Result<JetIdealModel, IdealError> {
    if k == 0 {
        return Err(IdealError::OrderZero);
    }
    let mut generators = Vec::new();
    for g in z.generators() {
        let mut cur = JetPoly::from_mpoly(g);
        generators.push(cur.clone());
        for _ in 0..k {
            cur = cur.total_derivative()?;
            generators.push(cur.clone());
        }
    }
    Ok(JetIdealModel {
        order: k,
        generators,
    })
}

/// Jets commute with intersections at generator level:
/// `(∩ Z_i)^{(k)}` has exactly the union of the `Z_i^{(k)}` generators.
pub fn intersection_jets_check(zs: &[IdealModel], k: usize) -> Result<bool, IdealError> {
    if zs.is_empty() {
        return Err(IdealError::Empty);
    }
    let union = IdealModel::new(
        zs.iter()
            .flat_map(|z| z.generators().iter().cloned())
            .collect(),
    )?;
    let lhs = jet_ideal(&union, k)?;
    let mut rhs_gens = Vec::new();
    for z in zs {
        rhs_gens.extend(jet_ideal(z, k)?.generators().to_vec());
    }
    let rhs = JetIdealModel {
        order: k,
        generators: rhs_gens,
    };
    Ok(lhs.same_generators(&rhs))
}

/// The power formula at order one: the 1-jet ideal of `(ζ^ℓ)` has the
/// generators `{ζ^ℓ, ℓ ζ^{ℓ-1} Dζ}`, which match `ζ^{ℓ-1}·{ζ, Dζ}` up to
/// the nonzero scalar `ℓ`.
pub fn power_formula_check(zeta: &MPoly, l: u32) -> Result<bool, IdealError> {
    if zeta.is_zero() {
        return Err(IdealError::Empty);
    }
    if l == 0 {
        return Err(IdealError::OrderZero);
    }
    // Generators of (ζ^ℓ)^{(1)}.
    let mut power = zeta.clone();
    for _ in 1..l {
        power = power.mul(zeta).expect("same registry");
    }
    let actual = jet_ideal(&IdealModel::new(vec![power])?, 1)?;

    // ζ^{ℓ-1} · {ζ, Dζ}: the predicted generators.
    let zj = JetPoly::from_mpoly(zeta);
    let mut prefix = JetPoly::one(zj.ncoords);
    for _ in 1..l {
        prefix = prefix.mul(&zj)?;
    }
    let predicted = JetIdealModel {
        order: 1,
        generators: vec![
            prefix.mul(&zj)?,
            prefix.mul(&zj.total_derivative()?)?,
        ],
    };
    Ok(actual.same_generators(&predicted))
}

/// Report of the Wronskian sandwich check on a basis with a
/// `Z`-vanishing prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    /// Every `W(ς_{i'}, ς_i)` with `i' ≤ prefix` is exhibited inside the
    /// 1-jet ideal as `ς_{i'} Dς_i - ς_i Dς_{i'}`.
    pub membership: bool,
    /// The three-term syzygy holds for every index triple.
    pub syzygy: bool,
}

/// Checks the two generator-level halves of the sandwich
/// `Z^{(1)} ⊂ Z_S^{[1]} ⊂ Z^{(1)} + Z_w`:
/// (a) membership of the mixed Wronskians in the 1-jet ideal, through the
/// explicit combination with coefficients `(Dς_i, -ς_i)`;
/// (b) the three-term identity
/// `ς_{i'} W(ς_i, ς_j) = ς_i W(ς_{i'}, ς_j) - ς_j W(ς_{i'}, ς_i)`.
pub fn wronskian_sandwich_check(
    basis: &[MPoly],
    prefix_len: usize,
) -> Result<SandwichReport, IdealError> {
    if prefix_len == 0 || prefix_len > basis.len() {
        return Err(IdealError::BadPrefix);
    }
    let jets: Vec<JetPoly> = basis.iter().map(JetPoly::from_mpoly).collect();
    let d_jets: Vec<JetPoly> = jets
        .iter()
        .map(|j| j.total_derivative())
        .collect::<Result<_, _>>()?;

    let mut membership = true;
    for ip in 0..prefix_len {
        for i in 0..basis.len() {
            if i == ip {
                continue;
            }
            let w = wronskian_jet(&[basis[ip].clone(), basis[i].clone()])?;
            // Combination of the Z^{(1)} generators ς_{i'} and Dς_{i'} with
            // jet-polynomial coefficients Dς_i and -ς_i.
            let combo = d_jets[i]
                .mul(&jets[ip])?
                .sub(&jets[i].mul(&d_jets[ip])?)?;
            if w != combo {
                membership = false;
            }
        }
    }

    let mut syzygy = true;
    for ip in 0..basis.len() {
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let w_ij = wronskian_jet(&[basis[i].clone(), basis[j].clone()])?;
                let w_pj = wronskian_jet(&[basis[ip].clone(), basis[j].clone()])?;
                let w_pi = wronskian_jet(&[basis[ip].clone(), basis[i].clone()])?;
                let lhs = jets[ip].mul(&w_ij)?;
                let rhs = jets[i].mul(&w_pj)?.sub(&jets[j].mul(&w_pi)?)?;
                if lhs != rhs {
                    syzygy = false;
                }
            }
        }
    }
    Ok(SandwichReport { membership, syzygy })
}

/// All monomials of total degree `d` in `n + 1` variables, as the complete
/// degree-`d` system on `P^n`.
pub fn monomial_basis(n: usize, d: u32) -> Vec<MPoly> {
    let vars = MPoly::registry(n + 1);
    let mut out = Vec::new();
    let mut exps = vec![0u32; n + 1];
    fn rec(
        slot: usize,
        left: u32,
        exps: &mut Vec<u32>,
        vars: &std::sync::Arc<Vec<String>>,
        out: &mut Vec<MPoly>,
    ) {
        if slot + 1 == exps.len() {
            exps[slot] = left;
            out.push(MPoly::from_terms(
                vars.clone(),
                [(exps.clone(), crate::poly::GaussRational::one())],
            ));
            return;
        }
        for e in 0..=left {
            exps[slot] = e;
            rec(slot + 1, left - e, exps, vars, out);
        }
    }
    rec(0, d, &mut exps, &vars, &mut out);
    out
}

/// Numeric sweep of the separation property: over random regular jets the
/// largest Wronskian evaluation (normalized by the permanent of entry
/// magnitudes) stays above `1e-9`, and over jets with `f'(0) = 0` every
/// Wronskian vanishes below `1e-12` on the same scale.
pub fn separation_base_locus_check(
    n: usize,
    d: u32,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<bool, IdealError> {
    if (d as usize) < k {
        return Err(IdealError::CannotSeparate { degree: d, k });
    }
    let basis = monomial_basis(n, d);
    // All (k+1)-subsets of the basis, with their d^[ℓ] towers.
    let towers: Vec<Vec<JetPoly>> = basis
        .iter()
        .map(|s| {
            let mut col = vec![JetPoly::from_mpoly(s)];
            for _ in 0..k {
                col.push(col.last().unwrap().total_derivative().unwrap());
            }
            Ok::<_, IdealError>(col)
        })
        .collect::<Result<_, _>>()?;
    let subsets = crate::exterior::subsets(basis.len(), k + 1);

    let mut rng = SplitMix64::new(seed);
    let mut random_jet = |regular: bool| -> Vec<Vec<Complex64>> {
        (0..=n)
            .map(|_| {
                (0..=k)
                    .map(|order| {
                        if order == 1 && !regular {
                            Complex64::new(0.0, 0.0)
                        } else {
                            Complex64::new(
                                rng.next_unit() * 2.0 - 1.0,
                                rng.next_unit() * 2.0 - 1.0,
                            )
                        }
                    })
                    .collect()
            })
            .collect()
    };

    for trial in 0..trials {
        let _ = trial;
        for regular in [true, false] {
            let jet = random_jet(regular);
            let mut best_ratio = 0.0f64;
            let mut worst_ratio = 0.0f64;
            for subset in &subsets {
                // Determinant and magnitude scale from the entry values.
                let mut entries = vec![vec![Complex64::new(0.0, 0.0); k + 1]; k + 1];
                for (col, &b_idx) in subset.iter().enumerate() {
                    for (row, tower) in towers[b_idx as usize].iter().enumerate() {
                        entries[row][col] = tower.eval_complex(&jet)?;
                    }
                }
                let (det, perm) = det_and_permanent(&entries);
                if perm > 0.0 {
                    let ratio = det / perm;
                    best_ratio = best_ratio.max(ratio);
                    worst_ratio = worst_ratio.max(ratio);
                }
            }
            if regular && best_ratio <= 1e-9 {
                return Ok(false);
            }
            if !regular && worst_ratio > 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(|det|, permanent of magnitudes)` of a small complex matrix.
fn det_and_permanent(m: &[Vec<Complex64>]) -> (f64, f64) {
    let n = m.len();
    let mut det = Complex64::new(0.0, 0.0);
    let mut perm = 0.0f64;
    crate::curves::permutations(n, &mut |p, sign| {
        let mut prod = Complex64::new(1.0, 0.0);
        let mut mag = 1.0f64;
        for (i, &j) in p.iter().enumerate() {
            prod *= m[i][j];
            mag *= m[i][j].norm();
        }
        det += prod * sign as f64;
        perm += mag;
    });
    (det.norm(), perm)
}
