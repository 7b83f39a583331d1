//! Property tests for the cross-cutting invariants: exact gcd divisibility,
//! root re-expansion, ring axioms, first-main-theorem flatness over a random
//! corpus, characteristic growth, and Weil-function lower bounds.

use num_complex::Complex64;
use proptest::prelude::*;
use valdist::crofton::SplitMix64;
use valdist::curves::ProjectiveCurve;
use valdist::nevanlinna::{
    characteristic, fmt_residual, proximity, SubschemeOnPn, WeilEvaluator,
};
use valdist::poly::{CPoly, GaussRational, MPoly, XPoly, DEFAULT_TOL};
use valdist::quad::QuadratureSpec;

fn coeffs_strategy(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The exact gcd divides both inputs with zero remainder.
    #[test]
    fn exact_gcd_divides_both(a in coeffs_strategy(7), b in coeffs_strategy(7)) {
        let p = XPoly::from_ints(&a);
        let q = XPoly::from_ints(&b);
        prop_assume!(!p.is_zero() || !q.is_zero());
        let g = p.gcd(&q).unwrap();
        if !p.is_zero() {
            prop_assert!(p.exact_div(&g).is_some());
        }
        if !q.is_zero() {
            prop_assert!(q.exact_div(&g).is_some());
        }
    }

    /// Multivariate arithmetic is a commutative ring: associativity and
    /// distributivity hold exactly.
    #[test]
    fn mpoly_ring_axioms(
        ta in prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..4),
        tb in prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..4),
        tc in prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..4),
    ) {
        let vars = MPoly::registry(2);
        let build = |terms: &[((u32, u32), i64)]| {
            MPoly::from_terms(
                vars.clone(),
                terms.iter().map(|&((e0, e1), c)| {
                    (vec![e0, e1], GaussRational::from_int(c))
                }),
            )
        };
        let a = build(&ta);
        let b = build(&tb);
        let c = build(&tc);
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let dist_l = a.mul(&b.add(&c).unwrap()).unwrap();
        let dist_r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(dist_l, dist_r);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }
}

/// Root finding round-trips through re-expansion at relative coefficient
/// error 1e-8 for degrees up to 30 with well-separated roots.
#[test]
fn roots_reexpand_to_degree_30() {
    let mut rng = SplitMix64::new(99);
    for trial in 0..6 {
        let degree = 10 + 4 * trial;
        let mut roots: Vec<Complex64> = Vec::new();
        while roots.len() < degree {
            let z = Complex64::new(rng.next_unit() * 8.0 - 4.0, rng.next_unit() * 8.0 - 4.0);
            if roots.iter().all(|r| (r - z).norm() > 0.25) {
                roots.push(z);
            }
        }
        let p = CPoly::from_roots(&roots);
        let found = p.roots_with_multiplicity(DEFAULT_TOL).unwrap();
        let mut expanded = CPoly::one();
        for (r, m) in &found {
            for _ in 0..*m {
                expanded = &expanded * &CPoly::new(vec![-r, Complex64::new(1.0, 0.0)]);
            }
        }
        let scale = p.max_coeff_norm();
        for i in 0..=p.degree() {
            let err = (p.coeff(i) - expanded.coeff(i)).norm();
            assert!(
                err <= 1e-8 * scale,
                "degree {degree} coefficient {i}: error {err:.2e}"
            );
        }
    }
}

/// First-main-theorem flatness across a random corpus: the residual of
/// every (curve, divisor) pair stays at quadrature level.
#[test]
fn fmt_flat_on_random_corpus() {
    let mut rng = SplitMix64::new(314);
    let quad = QuadratureSpec::default();
    let grid = valdist::nevanlinna::log_grid(2.0, 200.0, 10);
    for i in 0..20 {
        let f = valdist::experiments::corpus::random_nondegenerate_curve(2, 3, &mut rng);
        // Alternate hyperplane and quadric divisors with exact coefficients.
        let z = if i % 2 == 0 {
            SubschemeOnPn::hyperplane_ints(2, &[1, (i % 5) as i64 - 2, 1 + (i % 3) as i64])
        } else {
            let vars = MPoly::registry(3);
            let x0 = MPoly::var(vars.clone(), 0);
            let x1 = MPoly::var(vars.clone(), 1);
            let x2 = MPoly::var(vars, 2);
            let g = x0
                .mul(&x2)
                .unwrap()
                .add(&x1.mul(&x1).unwrap().scale(&GaussRational::from_int(
                    (i % 4) as i64 - 2,
                )))
                .unwrap();
            if g.is_zero() {
                continue;
            }
            SubschemeOnPn::new(2, vec![g]).unwrap()
        };
        if valdist::nevanlinna::curve_inside_support(&f, &z) {
            continue;
        }
        let (_, budget) = fmt_residual(&f, &z, &grid, &quad).unwrap();
        assert!(
            budget.stdev <= 0.02,
            "pair {i}: residual stdev {:.2e}",
            budget.stdev
        );
    }
}

/// `T_f(r, O(d)) - d deg(f) log r` is pinned to its fitted constant within
/// 0.05 over r in [2, 500]. Sub-leading coefficients are kept small so the
/// O(1) term has converged by r = 2.
#[test]
fn characteristic_growth_is_linear_in_log_r() {
    let mut rng = SplitMix64::new(2718);
    let quad = QuadratureSpec::default();
    let grid = valdist::nevanlinna::log_grid(2.0, 500.0, 8);
    for i in 0..50 {
        let n = 1 + i % 2;
        let deg = 1 + i % 5;
        let comps: Vec<XPoly> = (0..=n)
            .map(|_| {
                let mut coeffs = vec![0i64; deg + 1];
                for c in coeffs.iter_mut().take(deg) {
                    *c = (rng.next_u64() % 3) as i64 - 1;
                }
                coeffs[deg] = 7 + (rng.next_u64() % 3) as i64;
                XPoly::from_ints(&coeffs)
            })
            .collect();
        let Ok(f) = ProjectiveCurve::from_exact(comps) else {
            continue;
        };
        if f.degree() != deg {
            continue;
        }
        let d = 1 + (i % 3) as u32;
        let detrended: Vec<f64> = grid
            .iter()
            .map(|&r| {
                characteristic(&f, d, r, &quad).unwrap() - (d as usize * deg) as f64 * r.ln()
            })
            .collect();
        let mean = detrended.iter().sum::<f64>() / detrended.len() as f64;
        let dev = detrended
            .iter()
            .map(|v| (v - mean).abs())
            .fold(0.0, f64::max);
        assert!(dev <= 0.05, "curve {i}: deviation {dev:.3}");
    }
}

/// Proximity admits a curve-independent lower bound: `m_f(r, Z) + c >= 0`
/// with `c` the negative part of the Weil function over the sphere.
#[test]
fn proximity_bounded_below_by_weil_infimum() {
    // A subscheme whose Weil function genuinely dips negative: one quadric
    // generator with large coefficients.
    let vars = MPoly::registry(3);
    let x0 = MPoly::var(vars.clone(), 0);
    let x1 = MPoly::var(vars.clone(), 1);
    let x2 = MPoly::var(vars, 2);
    let g = x0
        .mul(&x0)
        .unwrap()
        .scale(&GaussRational::from_int(5))
        .add(&x1.mul(&x2).unwrap().scale(&GaussRational::from_int(-7)))
        .unwrap();
    let z = SubschemeOnPn::new(2, vec![g]).unwrap();
    let weil = WeilEvaluator::new(z);

    // Estimate c = -inf λ over the sphere by deterministic sampling.
    let mut rng = SplitMix64::new(55);
    let mut c = 0.0f64;
    for _ in 0..20_000 {
        let x: Vec<Complex64> = (0..3)
            .map(|_| Complex64::new(rng.next_unit() * 2.0 - 1.0, rng.next_unit() * 2.0 - 1.0))
            .collect();
        if let Ok(Some(v)) = weil.value(&x) {
            c = c.max(-v);
        }
    }

    let quad = QuadratureSpec::default();
    let mut rng = SplitMix64::new(56);
    for _ in 0..5 {
        let f = valdist::experiments::corpus::random_nondegenerate_curve(2, 3, &mut rng);
        for r in [2.0, 20.0, 200.0] {
            let (m, _) = proximity(&f, &weil, r, &quad).unwrap();
            assert!(
                m + c >= -1e-6,
                "m = {m}, curve-independent c = {c}: bound violated"
            );
        }
    }
}

/// Contact functions are invariant under rescaling the representation by a
/// nonzero constant.
#[test]
fn contact_function_scale_invariance() {
    use valdist::curves::LinearTarget;
    let f = ProjectiveCurve::from_int_coeffs(&[&[1, 2], &[0, 3, 1], &[2, 0, 1]]).unwrap();
    let scaled = ProjectiveCurve::from_float(
        f.components()
            .iter()
            .map(|p| p.scale(Complex64::new(-2.5, 1.5)))
            .collect(),
    )
    .unwrap();
    let h = LinearTarget::hyperplane(&[
        Complex64::new(0.3, 0.4),
        Complex64::new(-0.2, 0.0),
        Complex64::new(0.5, -0.1),
    ]);
    for k in 0..=2usize {
        for z in [Complex64::new(0.7, 0.2), Complex64::new(-1.1, 0.6)] {
            let a = f.contact_function(&h, k, z).unwrap();
            let b = scaled.contact_function(&h, k, z).unwrap();
            assert!((a - b).abs() <= 1e-12, "k={k}: {a} vs {b}");
        }
    }
}
