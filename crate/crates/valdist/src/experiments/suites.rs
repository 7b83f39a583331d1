//! The exact identity suites: Wronskian algebra and jet-ideal batteries,
//! all in rational arithmetic with seeded randomization.

use super::config::ExperimentConfig;
use super::report::{CheckResult, Report};
use crate::crofton::SplitMix64;
use crate::ideals::{
    intersection_jets_check, jet_ideal, power_formula_check, separation_base_locus_check,
    wronskian_sandwich_check, IdealModel,
};
use crate::jets::{
    filtration_check, log_wronskian_identity_check, reparametrize, sl_action_check,
    tower_wronskian_identity_check, wronskian_jet, JetGrading, ReparamJet,
};
use crate::poly::{GaussRational, MPoly};

fn q(n: i64) -> GaussRational {
    GaussRational::from_int(n)
}

fn random_section(
    rng: &mut SplitMix64,
    vars: &std::sync::Arc<Vec<String>>,
    deg: u32,
    terms: usize,
) -> MPoly {
    loop {
        let n = vars.len();
        let mut p = MPoly::zero(vars.clone());
        for _ in 0..terms {
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

fn random_phi(rng: &mut SplitMix64, k: usize) -> ReparamJet {
    loop {
        let coeffs: Vec<GaussRational> = (0..k)
            .map(|_| q((rng.next_u64() % 9) as i64 - 4))
            .collect();
        if let Ok(phi) = ReparamJet::new(coeffs) {
            return phi;
        }
    }
}

/// Exact Wronskian-algebra battery: multilinearity/alternation, grading,
/// filtration, reparametrization weight, determinant action, and the
/// logarithmic and tower identities.
pub fn run_symbolic_suite(cfg: &ExperimentConfig) -> Result<Report, super::runners::RunError> {
    let seed = cfg.seed.unwrap_or(0xC0DE);
    let mut rng = SplitMix64::new(seed);
    let vars = MPoly::registry(2);
    let mut report = Report::new("jet-suite", cfg.echo());

    // Alternation and multilinearity on random triples.
    let mut ok = true;
    let mut count = 0;
    for _ in 0..10 {
        let a = random_section(&mut rng, &vars, 2, 3);
        let b = random_section(&mut rng, &vars, 2, 3);
        let c = random_section(&mut rng, &vars, 2, 3);
        let w = wronskian_jet(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let swapped = wronskian_jet(&[b.clone(), a.clone(), c.clone()]).unwrap();
        ok &= w == swapped.neg();
        let combo = a.scale(&q(2)).add(&c.scale(&q(-3))).unwrap();
        let left = wronskian_jet(&[combo, b.clone(), c.clone()]).unwrap();
        let right = w
            .scale(&q(2))
            .add(
                &wronskian_jet(&[c.clone(), b, c]).unwrap().scale(&q(-3)),
            )
            .unwrap();
        ok &= left == right;
        count += 1;
    }
    report.push_check(CheckResult::new(
        "wronskian_multilinear_alternating",
        ok,
        format!("{count} random triples, exact"),
    ));

    // Isobaric weight k' and filtration membership for k ≤ 4.
    let mut ok = true;
    let mut count = 0;
    for k in 1..=4usize {
        let grading = JetGrading::new(k as u32);
        for _ in 0..4 {
            let sections: Vec<MPoly> = (0..=k)
                .map(|_| random_section(&mut rng, &vars, 2, 3))
                .collect();
            let w = wronskian_jet(&sections).unwrap();
            if w.is_zero() {
                continue;
            }
            ok &= w.isobaric_weight() == Some(grading.k_prime);
            ok &= filtration_check(&w, &grading.a);
            count += 1;
        }
    }
    report.push_check(CheckResult::new(
        "isobaric_weight_and_filtration",
        ok,
        format!("{count} Wronskians, k <= 4, weight k(k+1)/2 and F-bounds"),
    ));

    // Reparametrization weight a_1^{k'} over 20 random jets per k.
    let mut ok = true;
    let mut count = 0;
    for k in 1..=4usize {
        let k_prime = (k * (k + 1) / 2) as u32;
        for _ in 0..5 {
            let sections: Vec<MPoly> = (0..=k)
                .map(|_| random_section(&mut rng, &vars, 2, 2))
                .collect();
            let w = wronskian_jet(&sections).unwrap();
            if w.is_zero() {
                continue;
            }
            let phi = random_phi(&mut rng, k);
            let rw = reparametrize(&w, &phi).unwrap();
            ok &= rw == w.scale(&phi.first_coeff().pow(k_prime));
            count += 1;
        }
    }
    report.push_check(CheckResult::new(
        "reparametrization_weight",
        ok,
        format!("{count} random jets, factor a_1^k'"),
    ));

    // Determinant transformation under GL section mixes.
    let mut ok = true;
    for _ in 0..5 {
        let sections: Vec<MPoly> = (0..3)
            .map(|_| random_section(&mut rng, &vars, 2, 3))
            .collect();
        let a: Vec<Vec<GaussRational>> = (0..3)
            .map(|_| (0..3).map(|_| q((rng.next_u64() % 5) as i64 - 2)).collect())
            .collect();
        ok &= sl_action_check(&a, &sections).unwrap();
    }
    report.push_check(CheckResult::new(
        "determinant_transformation",
        ok,
        "W(A sigma) = det(A) W(sigma), 5 random GL mixes",
    ));

    // Logarithmic Wronskian identity for k ≤ 3.
    let mut ok = true;
    for k in 1..=3usize {
        let d = random_section(&mut rng, &vars, 1, 2);
        let s0 = random_section(&mut rng, &vars, 3, 3);
        let rest: Vec<MPoly> = (0..k)
            .map(|_| random_section(&mut rng, &vars, 3, 3))
            .collect();
        ok &= log_wronskian_identity_check(&d, &s0, &rest).unwrap();
    }
    report.push_check(CheckResult::new(
        "log_wronskian_identity",
        ok,
        "W(sigma_D sigma_0, ...) = sigma_D W_D(sigma_0; ...), k <= 3",
    ));

    // Tower determinant identity for k ≤ 3.
    let mut ok = true;
    for k in 1..=3usize {
        let sigma = random_section(&mut rng, &vars, 2, 2);
        let vs: Vec<MPoly> = (0..=k)
            .map(|_| random_section(&mut rng, &vars, 2, 2))
            .collect();
        ok &= tower_wronskian_identity_check(&sigma, &vs).unwrap();
    }
    report.push_check(CheckResult::new(
        "tower_determinant_identity",
        ok,
        "det[D^l W(sigma, vs_j)] = sigma^k W(sigma, vs_0..k), k <= 3",
    ));

    Ok(report)
}

/// Exact jet-ideal battery: intersection identity, power formula, syzygies,
/// and the numeric separation sweep.
pub fn run_ideal_suite(cfg: &ExperimentConfig) -> Result<Report, super::runners::RunError> {
    let seed = cfg.seed.unwrap_or(0x1DEA);
    let mut rng = SplitMix64::new(seed);
    let vars = MPoly::registry(2);
    let mut report = Report::new("ideal-suite", cfg.echo());

    // Intersections commute with jets at generator level.
    let mut ok = true;
    for k in 1..=2usize {
        let z1 = IdealModel::new(vec![
            random_section(&mut rng, &vars, 3, 3),
            random_section(&mut rng, &vars, 3, 3),
        ])
        .unwrap();
        let z2 = IdealModel::new(vec![random_section(&mut rng, &vars, 3, 3)]).unwrap();
        ok &= intersection_jets_check(&[z1, z2], k).unwrap();
    }
    // The coordinate-axes case from the construction itself.
    let zx = IdealModel::new(vec![MPoly::var(vars.clone(), 0)]).unwrap();
    let zy = IdealModel::new(vec![MPoly::var(vars.clone(), 1)]).unwrap();
    ok &= intersection_jets_check(&[zx, zy], 1).unwrap();
    report.push_check(CheckResult::new(
        "intersection_generators",
        ok,
        "(Z1 ∩ Z2)^(k) = Z1^(k) ∩ Z2^(k) on generators, k <= 2",
    ));

    // Power formula for ℓ ≤ 4.
    let mut ok = true;
    for l in 1..=4u32 {
        let zeta = random_section(&mut rng, &vars, 2, 3);
        ok &= power_formula_check(&zeta, l).unwrap();
    }
    report.push_check(CheckResult::new(
        "power_formula",
        ok,
        "(zeta^l)^(1) = zeta^(l-1) (zeta, D zeta) up to scalar l, l <= 4",
    ));

    // Monotone presentations.
    let mut ok = true;
    let z = IdealModel::new(vec![random_section(&mut rng, &vars, 2, 3)]).unwrap();
    let j1 = jet_ideal(&z, 1).unwrap();
    let j2 = jet_ideal(&z, 2).unwrap();
    for g in j1.generators() {
        ok &= j2.generators().iter().any(|h| h == g);
    }
    report.push_check(CheckResult::new(
        "jet_ideal_monotone",
        ok,
        "order-k generators inside order-(k+1)",
    ));

    // Syzygy and membership on random quadric bases.
    let vars3 = MPoly::registry(3);
    let mut ok = true;
    for _ in 0..3 {
        let basis: Vec<MPoly> = (0..4)
            .map(|_| random_section(&mut rng, &vars3, 2, 3))
            .collect();
        let r = wronskian_sandwich_check(&basis, 2).unwrap();
        ok &= r.membership && r.syzygy;
    }
    report.push_check(CheckResult::new(
        "wronskian_sandwich",
        ok,
        "membership and three-term syzygy on random quadric bases",
    ));

    // Separation sweep: both jet populations, 100 trials each.
    let pass_line = separation_base_locus_check(1, 1, 1, 100, seed ^ 0x5E9).unwrap();
    let pass_plane = separation_base_locus_check(2, 2, 2, 100, seed ^ 0x5EA).unwrap();
    report.push_check(CheckResult::new(
        "separation_sweep",
        pass_line && pass_plane,
        "100/100 regular and 100/100 forced-singular jets, P^1 and P^2",
    ));

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_suite_all_green() {
        let cfg = ExperimentConfig {
            seed: Some(42),
            ..Default::default()
        };
        let report = run_symbolic_suite(&cfg).unwrap();
        assert!(report.all_pass(), "{:?}", report.summary_lines());
    }

    #[test]
    fn ideal_suite_all_green() {
        let cfg = ExperimentConfig {
            seed: Some(43),
            ..Default::default()
        };
        let report = run_ideal_suite(&cfg).unwrap();
        assert!(report.all_pass(), "{:?}", report.summary_lines());
    }
}
