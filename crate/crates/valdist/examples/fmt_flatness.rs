//! First main theorem on display: for a rational curve and a divisor, the
//! proximity and counting functions trade off against each other while
//! their sum tracks the characteristic function up to a constant.
//!
//!     cargo run --release --example fmt_flatness

use valdist::curves::ProjectiveCurve;
use valdist::nevanlinna::{fmt_residual, log_grid, SubschemeOnPn};
use valdist::quad::QuadratureSpec;

fn main() {
    // The rational normal curve of degree two against the divisor {x_2 = 0}.
    let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
    let z = SubschemeOnPn::hyperplane_ints(2, &[0, 0, 1]);
    let grid = log_grid(2.0, 200.0, 12);

    let (profile, budget) = fmt_residual(&f, &z, &grid, &QuadratureSpec::default()).unwrap();

    println!("{:>10} {:>12} {:>12} {:>12} {:>14}", "r", "m", "N", "T", "T - m - N");
    for (i, &r) in profile.r_grid.iter().enumerate() {
        println!(
            "{r:>10.3} {:>12.6} {:>12.6} {:>12.6} {:>14.3e}",
            profile.m[i], profile.n[i], profile.t[i], profile.residual[i]
        );
    }
    println!();
    println!("residual mean  : {:+.6}", budget.fitted_constant);
    println!("residual stdev : {:.3e}  (flat = first main theorem)", budget.stdev);
    println!("N nondecreasing: {}", profile.counting_is_monotone(1e-9));
}
