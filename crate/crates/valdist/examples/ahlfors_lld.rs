//! Ahlfors' lemma on the logarithmic derivative:
//! `ε N((φ_1/φ_0^{1-ε}) Ω_0, r) ≤ (1+ε) T_f(r, O(1)) + O(1)`.
//! The left side is a disk potential of the contact-function density; for a
//! rational curve the excess settles to a constant and then drifts down.
//!
//!     cargo run --release --example ahlfors_lld

use num_complex::Complex64;
use valdist::curves::ProjectiveCurve;
use valdist::nevanlinna::{ahlfors_lld_check, log_grid};
use valdist::quad::{DiskQuadratureSpec, QuadratureSpec};

fn main() {
    let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[-1, 0, 1]]).unwrap();
    let normal = [
        Complex64::new(0.6, 0.0),
        Complex64::new(-0.3, 0.1),
        Complex64::new(0.2, -0.4),
    ];
    let grid = log_grid(2.0, 200.0, 10);
    for eps in [0.1, 0.5] {
        let ex = ahlfors_lld_check(
            &f,
            &normal,
            eps,
            &grid,
            &QuadratureSpec::default(),
            &DiskQuadratureSpec::default(),
        )
        .unwrap();
        println!("epsilon = {eps}");
        println!("{:>10} {:>12} {:>12} {:>12}", "r", "lhs", "rhs", "excess");
        for (i, &r) in grid.iter().enumerate() {
            println!(
                "{r:>10.3} {:>12.5} {:>12.5} {:>12.5}",
                ex.lhs[i], ex.rhs[i], ex.excess[i]
            );
        }
        println!(
            "fitted constant {:.4}, excess slope {:+.4} (tail {:+.4})\n",
            ex.fitted_constant, ex.slope_in_log_r, ex.tail_slope_in_log_r
        );
    }
}
