//! Logarithmic jet derivatives `∇^[ℓ]` along a base section `σ_D`, the
//! logarithmic Wronskian, and the two determinant identities that tie the
//! plain and logarithmic calculi together.

use super::poly::{det_by_minors, wronskian_jet, JetPoly};
use super::JetError;
use crate::poly::MPoly;

/// A jet polynomial divided by a power of the fixed base section:
/// `num / σ_D^exp`. Reduction happens only through exact divisibility.
#[derive(Debug, Clone, PartialEq)]
pub struct JetFraction {
    pub num: JetPoly,
    pub den_exp: u32,
}

impl JetFraction {
    pub fn from_poly(num: JetPoly) -> Self {
        Self { num, den_exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel factors of `σ_D` out of the numerator where possible.
    pub fn reduce(mut self, sigma_d: &JetPoly) -> Self {
        while self.den_exp > 0 {
            match self.num.try_div_exact(sigma_d) {
                Some(q) => {
                    self.num = q;
                    self.den_exp -= 1;
                }
                None => break,
            }
        }
        if self.num.is_zero() {
            self.den_exp = 0;
        }
        self
    }

    pub fn add(&self, other: &Self, sigma_d: &JetPoly) -> Result<Self, JetError> {
        let e = self.den_exp.max(other.den_exp);
        let a = self.num.mul(&sigma_d.pow(e - self.den_exp))?;
        let b = other.num.mul(&sigma_d.pow(e - other.den_exp))?;
        Ok(Self {
            num: a.add(&b)?,
            den_exp: e,
        }
        .reduce(sigma_d))
    }

    pub fn sub(&self, other: &Self, sigma_d: &JetPoly) -> Result<Self, JetError> {
        self.add(&other.neg(), sigma_d)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den_exp: self.den_exp,
        }
    }

    pub fn mul(&self, other: &Self, sigma_d: &JetPoly) -> Result<Self, JetError> {
        Ok(Self {
            num: self.num.mul(&other.num)?,
            den_exp: self.den_exp + other.den_exp,
        }
        .reduce(sigma_d))
    }

    /// Quotient-rule total derivative:
    /// `D(num/σ^e) = (D(num)·σ - e·num·D(σ)) / σ^{e+1}`.
    pub fn total_derivative(&self, sigma_d: &JetPoly) -> Result<Self, JetError> {
        if self.den_exp == 0 {
            return Ok(Self {
                num: self.num.total_derivative()?,
                den_exp: 0,
            });
        }
        let dn = self.num.total_derivative()?;
        let ds = sigma_d.total_derivative()?;
        let e = crate::poly::GaussRational::from_int(self.den_exp as i64);
        let num = dn.mul(sigma_d)?.sub(&self.num.mul(&ds)?.scale(&e))?;
        Ok(Self {
            num,
            den_exp: self.den_exp + 1,
        }
        .reduce(sigma_d))
    }

    /// Cross-multiplied equality against a plain polynomial:
    /// `num / σ^e == p` iff `num == p · σ^e`.
    pub fn equals_poly(&self, p: &JetPoly, sigma_d: &JetPoly) -> bool {
        match p.mul(&sigma_d.pow(self.den_exp)) {
            Ok(rhs) => self.num == rhs,
            Err(_) => false,
        }
    }
}

/// Logarithmic derivative `∇^[ℓ] σ = σ_D · d^[ℓ](σ / σ_D)`, computed by the
/// triangular Leibniz recursion
/// `∇^[ℓ] σ = d^[ℓ] σ - Σ_{i<ℓ} C(ℓ,i) (d^[ℓ-i] σ_D / σ_D) ∇^[i] σ`,
/// which keeps the denominator exponent at most `ℓ`.
pub fn log_nabla(sigma: &MPoly, sigma_d: &MPoly, l: usize) -> Result<JetFraction, JetError> {
    if sigma_d.is_zero() {
        return Err(JetError::ZeroBaseSection);
    }
    let sd = JetPoly::from_mpoly(sigma_d);
    let nablas = log_nabla_tower(sigma, &sd, l)?;
    Ok(nablas.into_iter().nth(l).unwrap())
}

/// All of `∇^[0..=l] σ` in one pass.
fn log_nabla_tower(
    sigma: &MPoly,
    sd: &JetPoly,
    l: usize,
) -> Result<Vec<JetFraction>, JetError> {
    // d^[j] σ and d^[j] σ_D for j ≤ l.
    let mut d_sigma = vec![JetPoly::from_mpoly(sigma)];
    let mut d_sd = vec![sd.clone()];
    for _ in 0..l {
        d_sigma.push(d_sigma.last().unwrap().total_derivative()?);
        d_sd.push(d_sd.last().unwrap().total_derivative()?);
    }
    let mut nablas: Vec<JetFraction> = vec![JetFraction::from_poly(d_sigma[0].clone())];
    for ell in 1..=l {
        let mut acc = JetFraction::from_poly(d_sigma[ell].clone());
        for i in 0..ell {
            let binom = crate::poly::GaussRational::from_int(binomial_i64(ell, i));
            // (d^[ℓ-i] σ_D / σ_D) · ∇^[i] σ, scaled by C(ℓ, i).
            let factor = JetFraction {
                num: d_sd[ell - i].scale(&binom),
                den_exp: 1,
            };
            let term = factor.mul(&nablas[i], sd)?;
            acc = acc.sub(&term, sd)?;
        }
        nablas.push(acc);
    }
    Ok(nablas)
}

fn binomial_i64(n: usize, k: usize) -> i64 {
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// The logarithmic Wronskian `W_D(σ_0; σ_1, …, σ_k)`: first column the plain
/// derivatives `d^[ℓ] σ_0`, remaining columns `∇^[ℓ] σ_j`.
pub fn log_wronskian(
    sigma_0: &MPoly,
    rest: &[MPoly],
    sigma_d: &MPoly,
) -> Result<JetFraction, JetError> {
    if sigma_d.is_zero() {
        return Err(JetError::ZeroBaseSection);
    }
    let k = rest.len();
    let sd = JetPoly::from_mpoly(sigma_d);
    let mut columns: Vec<Vec<JetFraction>> = Vec::with_capacity(k + 1);
    // Column 0: the plain derivatives d^[ℓ] σ_0.
    let mut col0 = Vec::with_capacity(k + 1);
    let mut cur = JetPoly::from_mpoly(sigma_0);
    col0.push(JetFraction::from_poly(cur.clone()));
    for _ in 0..k {
        cur = cur.total_derivative()?;
        col0.push(JetFraction::from_poly(cur.clone()));
    }
    columns.push(col0);
    for s in rest {
        columns.push(log_nabla_tower(s, &sd, k)?);
    }
    det_fraction(&columns, &sd)
}

/// Determinant over jet fractions by subset DP, mirroring the plain case.
fn det_fraction(columns: &[Vec<JetFraction>], sd: &JetPoly) -> Result<JetFraction, JetError> {
    let n = columns.len();
    let full: u32 = (1 << n) - 1;
    let mut minors: std::collections::HashMap<u32, JetFraction> =
        std::collections::HashMap::new();
    minors.insert(
        0,
        JetFraction::from_poly(JetPoly::one(columns[0][0].num.ncoords)),
    );
    let mut subsets: Vec<u32> = (1..=full).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let size = s.count_ones() as usize;
        let row = size - 1;
        let mut acc = JetFraction::from_poly(JetPoly::zero(columns[0][0].num.ncoords));
        let mut t = 0usize;
        for j in 0..n {
            if s & (1 << j) != 0 {
                let sub = minors[&(s & !(1 << j))].clone();
                let term = columns[j][row].mul(&sub, sd)?;
                acc = if (row + t) % 2 == 0 {
                    acc.add(&term, sd)?
                } else {
                    acc.sub(&term, sd)?
                };
                t += 1;
            }
        }
        minors.insert(s, acc);
    }
    Ok(minors.remove(&full).unwrap())
}

/// Exact check of `W(σ_D σ_0, σ_1, …, σ_k) = σ_D · W_D(σ_0; σ_1, …, σ_k)`,
/// after clearing denominators.
pub fn log_wronskian_identity_check(
    sigma_d: &MPoly,
    sigma_0: &MPoly,
    rest: &[MPoly],
) -> Result<bool, JetError> {
    if sigma_d.is_zero() {
        return Err(JetError::ZeroBaseSection);
    }
    let mut sections = Vec::with_capacity(rest.len() + 1);
    sections.push(
        sigma_d
            .mul(sigma_0)
            .map_err(|_| JetError::CoordMismatch {
                left: sigma_d.num_vars(),
                right: sigma_0.num_vars(),
            })?,
    );
    sections.extend_from_slice(rest);
    let lhs = wronskian_jet(&sections)?;
    let wd = log_wronskian(sigma_0, rest, sigma_d)?;
    let sd = JetPoly::from_mpoly(sigma_d);
    // lhs == σ_D · W_D: cross-multiplied, lhs · σ_D^e == σ_D · num.
    let lhs_cleared = lhs.mul(&sd.pow(wd.den_exp))?;
    let rhs_cleared = sd.mul(&wd.num)?;
    Ok(lhs_cleared == rhs_cleared)
}

/// Exact check of the tower determinant identity
/// `det [ d^[ℓ] W(σ, ς_j) ]_{ℓ,j=0..k} = σ^k · W(σ, ς_0, …, ς_k)`
/// (the jet-chart trivialization factor is the identity).
pub fn tower_wronskian_identity_check(
    sigma: &MPoly,
    varsigma: &[MPoly],
) -> Result<bool, JetError> {
    let k = varsigma.len().checked_sub(1).ok_or(JetError::NoSections)?;
    // Columns: d^[ℓ] of the first-order Wronskians W(σ, ς_j).
    let mut columns = Vec::with_capacity(k + 1);
    for vs in varsigma {
        let w = wronskian_jet(&[sigma.clone(), vs.clone()])?;
        let mut col = vec![w];
        for _ in 0..k {
            let next = col.last().unwrap().total_derivative()?;
            col.push(next);
        }
        columns.push(col);
    }
    let lhs = det_by_minors(&columns);
    let mut sections = vec![sigma.clone()];
    sections.extend_from_slice(varsigma);
    let big = wronskian_jet(&sections)?;
    let sd = JetPoly::from_mpoly(sigma);
    let rhs = sd.pow(k as u32).mul(&big)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crofton::SplitMix64;
    use crate::poly::GaussRational;

    fn q(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    fn random_section(rng: &mut SplitMix64, vars: &std::sync::Arc<Vec<String>>, deg: u32) -> MPoly {
        let n = vars.len();
        loop {
            let mut p = MPoly::zero(vars.clone());
            for _ in 0..3 {
                let mut exps = vec![0u32; n];
                let mut budget = deg;
                for e in exps.iter_mut() {
                    let take = (rng.next_u64() % (budget as u64 + 1)) as u32;
                    *e = take;
                    budget -= take;
                }
                let c = (rng.next_u64() % 7) as i64 - 3;
                p = p
                    .add(&MPoly::from_terms(vars.clone(), [(exps, q(c))]))
                    .unwrap();
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    #[test]
    fn nabla_zero_is_identity() {
        let vars = MPoly::registry(2);
        let s = MPoly::var(vars.clone(), 1);
        let d = MPoly::var(vars, 0);
        let n0 = log_nabla(&s, &d, 0).unwrap();
        assert_eq!(n0.den_exp, 0);
        assert_eq!(n0.num, JetPoly::from_mpoly(&s));
    }

    #[test]
    fn nabla_one_closed_form() {
        // ∇^[1] σ = Dσ - σ Dσ_D / σ_D, i.e. (Dσ·σ_D - σ·Dσ_D)/σ_D.
        let vars = MPoly::registry(2);
        let s = MPoly::var(vars.clone(), 1);
        let d = MPoly::var(vars, 0);
        let n1 = log_nabla(&s, &d, 1).unwrap();
        let sj = JetPoly::from_mpoly(&s);
        let dj = JetPoly::from_mpoly(&d);
        let expect_num = sj
            .total_derivative()
            .unwrap()
            .mul(&dj)
            .unwrap()
            .sub(&sj.mul(&dj.total_derivative().unwrap()).unwrap())
            .unwrap();
        assert_eq!(n1.den_exp, 1);
        assert_eq!(n1.num, expect_num);
    }

    #[test]
    fn nabla_of_base_section_vanishes() {
        // ∇^[ℓ] σ_D = σ_D · d^[ℓ](1) = 0 for ℓ ≥ 1.
        let vars = MPoly::registry(2);
        let d = MPoly::var(vars.clone(), 0)
            .add(&MPoly::var(vars, 1))
            .unwrap();
        for l in 1..=3 {
            let n = log_nabla(&d, &d, l).unwrap();
            assert!(n.is_zero(), "∇^[{l}] σ_D = {:?}", n.num);
        }
    }

    #[test]
    fn recursion_matches_quotient_rule_oracle() {
        // Independent oracle: ∇^[ℓ]σ = σ_D · D^ℓ_frac(σ/σ_D) by the
        // quotient rule on fractions.
        let vars = MPoly::registry(2);
        let mut rng = SplitMix64::new(12);
        for _ in 0..4 {
            let s = random_section(&mut rng, &vars, 2);
            let d = random_section(&mut rng, &vars, 1);
            let sd = JetPoly::from_mpoly(&d);
            for l in 0..=3usize {
                let via_recursion = log_nabla(&s, &d, l).unwrap();
                let mut frac = JetFraction {
                    num: JetPoly::from_mpoly(&s),
                    den_exp: 1,
                };
                for _ in 0..l {
                    frac = frac.total_derivative(&sd).unwrap();
                }
                let oracle = frac
                    .mul(
                        &JetFraction::from_poly(sd.clone()),
                        &sd,
                    )
                    .unwrap();
                // Compare as fractions: cross-multiply.
                let lhs = via_recursion
                    .num
                    .mul(&sd.pow(oracle.den_exp))
                    .unwrap();
                let rhs = oracle.num.mul(&sd.pow(via_recursion.den_exp)).unwrap();
                assert_eq!(lhs, rhs, "ℓ = {l}");
            }
        }
    }

    #[test]
    fn log_wronskian_identity_hand_case() {
        // k = 1, σ_D = x, σ_0 = 1, σ_1 = y.
        let vars = MPoly::registry(2);
        let x = MPoly::var(vars.clone(), 0);
        let y = MPoly::var(vars.clone(), 1);
        let one = MPoly::constant(vars, q(1));
        assert!(log_wronskian_identity_check(&x, &one, &[y]).unwrap());
    }

    #[test]
    fn log_wronskian_identity_trivial_base() {
        // σ_D = 1 reduces W_D to W.
        let vars = MPoly::registry(2);
        let one = MPoly::constant(vars.clone(), q(1));
        let x = MPoly::var(vars.clone(), 0);
        let y = MPoly::var(vars, 1);
        assert!(log_wronskian_identity_check(&one, &x, &[y.clone(), x.mul(&y).unwrap()]).unwrap());
    }

    #[test]
    fn log_wronskian_identity_random_cubics() {
        let vars = MPoly::registry(2);
        let mut rng = SplitMix64::new(77);
        for k in 1..=3usize {
            let d = random_section(&mut rng, &vars, 1);
            let s0 = random_section(&mut rng, &vars, 3);
            let rest: Vec<MPoly> = (0..k).map(|_| random_section(&mut rng, &vars, 3)).collect();
            assert!(
                log_wronskian_identity_check(&d, &s0, &rest).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn tower_identity_k1_hand_case() {
        let vars = MPoly::registry(2);
        let mut rng = SplitMix64::new(3);
        let sigma = random_section(&mut rng, &vars, 2);
        let v0 = random_section(&mut rng, &vars, 2);
        let v1 = random_section(&mut rng, &vars, 2);
        assert!(tower_wronskian_identity_check(&sigma, &[v0, v1]).unwrap());
    }

    #[test]
    fn tower_identity_repeated_section_degenerates() {
        let vars = MPoly::registry(2);
        let sigma = MPoly::var(vars.clone(), 0);
        let v = MPoly::var(vars, 1);
        // Both sides vanish identically; the identity still holds.
        assert!(tower_wronskian_identity_check(&sigma, &[v.clone(), v]).unwrap());
    }

    #[test]
    fn tower_identity_k2_random() {
        let vars = MPoly::registry(2);
        let mut rng = SplitMix64::new(2025);
        let sigma = random_section(&mut rng, &vars, 2);
        let vs: Vec<MPoly> = (0..3).map(|_| random_section(&mut rng, &vars, 2)).collect();
        assert!(tower_wronskian_identity_check(&sigma, &vs).unwrap());
    }
}
