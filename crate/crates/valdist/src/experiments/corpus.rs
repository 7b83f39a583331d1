//! Seeded random corpora: rational curves with small integer coefficients
//! and hyperplane families in general position.

use crate::crofton::SplitMix64;
use crate::curves::ProjectiveCurve;
use crate::poly::XPoly;
use num_complex::Complex64;

/// Random exact curve in `P^n` of degree at most `max_deg` (and exactly
/// `max_deg` in one component), linearly non-degenerate.
pub fn random_nondegenerate_curve(
    n: usize,
    max_deg: usize,
    rng: &mut SplitMix64,
) -> ProjectiveCurve {
    loop {
        let comps: Vec<XPoly> = (0..=n)
            .map(|i| {
                let deg = if i == n {
                    max_deg
                } else {
                    (rng.next_u64() % (max_deg as u64 + 1)) as usize
                };
                let coeffs: Vec<i64> = (0..=deg)
                    .map(|j| {
                        let c = (rng.next_u64() % 11) as i64 - 5;
                        // Keep the leading coefficient nonzero.
                        if j == deg && c == 0 {
                            1
                        } else {
                            c
                        }
                    })
                    .collect();
                XPoly::from_ints(&coeffs)
            })
            .collect();
        if comps.iter().all(|p| p.is_zero()) {
            continue;
        }
        if let Ok(curve) = ProjectiveCurve::from_exact(comps) {
            if curve.n == n && curve.is_nondegenerate() && curve.degree() >= 1 {
                // Plücker-type checks sit at the origin; resample curves
                // that are stationary there.
                if let Ok(orders) = curve.derived_orders(Complex64::new(0.0, 0.0)) {
                    if orders.iter().all(|&o| o == 0) {
                        return curve;
                    }
                }
            }
        }
    }
}

/// Random curve of exact degree `deg` (used by the degree-slope check).
pub fn random_curve_of_degree(n: usize, deg: usize, rng: &mut SplitMix64) -> ProjectiveCurve {
    loop {
        let c = random_nondegenerate_curve(n, deg, rng);
        if c.degree() == deg {
            return c;
        }
    }
}

/// Random curve with every component of exact degree `deg` and solid
/// leading coefficients. Keeps `T(r) - deg·log r` converging fast, which the
/// two-radius degree-slope estimate at moderate radii relies on.
pub fn random_balanced_curve(n: usize, deg: usize, rng: &mut SplitMix64) -> ProjectiveCurve {
    loop {
        let comps: Vec<XPoly> = (0..=n)
            .map(|_| {
                let coeffs: Vec<i64> = (0..=deg)
                    .map(|j| {
                        if j == deg {
                            let sign = if rng.next_u64() % 2 == 0 { 1 } else { -1 };
                            sign * (4 + (rng.next_u64() % 2) as i64)
                        } else {
                            (rng.next_u64() % 11) as i64 - 5
                        }
                    })
                    .collect();
                XPoly::from_ints(&coeffs)
            })
            .collect();
        if let Ok(curve) = ProjectiveCurve::from_exact(comps) {
            if curve.degree() == deg
                && curve
                    .exact_components()
                    .is_some_and(|c| c.iter().all(|p| p.degree() == deg))
            {
                return curve;
            }
        }
    }
}

/// `q` random unit hyperplane normals in general position: every subset of
/// at most `n+1` normals is linearly independent (Gram determinant above
/// the threshold).
pub fn random_general_position_hyperplanes(
    n: usize,
    q: usize,
    rng: &mut SplitMix64,
) -> Vec<Vec<Complex64>> {
    loop {
        let normals: Vec<Vec<Complex64>> = (0..q)
            .map(|_| {
                let v: Vec<Complex64> = (0..=n)
                    .map(|_| Complex64::new(rng.next_unit() * 2.0 - 1.0, rng.next_unit() * 2.0 - 1.0))
                    .collect();
                let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                v.into_iter().map(|c| c / norm).collect()
            })
            .collect();
        if in_general_position(&normals, n) {
            return normals;
        }
    }
}

/// Hyperplanes are in general position iff every subset of size
/// `s ≤ n+1` has full rank; checked through the Gram determinant.
pub fn in_general_position(normals: &[Vec<Complex64>], n: usize) -> bool {
    let max_size = (n + 1).min(normals.len());
    for size in 2..=max_size {
        for subset in crate::exterior::subsets(normals.len(), size) {
            let mut gram = vec![vec![Complex64::new(0.0, 0.0); size]; size];
            for (a, &ia) in subset.iter().enumerate() {
                for (b, &ib) in subset.iter().enumerate() {
                    gram[a][b] = normals[ia as usize]
                        .iter()
                        .zip(&normals[ib as usize])
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                }
            }
            let mut det = Complex64::new(0.0, 0.0);
            crate::curves::permutations(size, &mut |p, sign| {
                let mut prod = Complex64::new(1.0, 0.0);
                for (i, &j) in p.iter().enumerate() {
                    prod *= gram[i][j];
                }
                det += prod * sign as f64;
            });
            if det.norm() < 1e-6 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_curves_are_nondegenerate() {
        let mut rng = SplitMix64::new(10);
        for _ in 0..5 {
            let c = random_nondegenerate_curve(2, 3, &mut rng);
            assert!(c.is_nondegenerate());
            assert!(c.degree() <= 3);
        }
    }

    #[test]
    fn degree_pinning() {
        let mut rng = SplitMix64::new(20);
        for d in 1..=4 {
            let c = random_curve_of_degree(1, d, &mut rng);
            assert_eq!(c.degree(), d);
        }
    }

    #[test]
    fn general_position_rejects_concurrent_lines() {
        // Three lines through [0:0:1]: normals all with last coordinate 0.
        let e = |x: f64, y: f64| vec![Complex64::new(x, 0.0), Complex64::new(y, 0.0), Complex64::new(0.0, 0.0)];
        let normals = vec![e(1.0, 0.0), e(0.0, 1.0), e(1.0, 1.0)];
        assert!(!in_general_position(&normals, 2));
    }

    #[test]
    fn random_hyperplanes_pass_their_own_check() {
        let mut rng = SplitMix64::new(30);
        let normals = random_general_position_hyperplanes(2, 5, &mut rng);
        assert_eq!(normals.len(), 5);
        assert!(in_general_position(&normals, 2));
    }
}
