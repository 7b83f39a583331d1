//! The algebro-geometric logarithmic-derivative inequality for 1-jets:
//! `m_f(r, Z) + [T_{f_[1]}(r, O_{X_1}(1)) + N([Z_{f'}], r)]`
//! stays below `m_{f_[1]}(r, Z^{(1)}) + O(1)` for rational curves, with the
//! bracket realized as the Green-Jensen potential of `log h_0` and the jet
//! proximity realized through first contact functions.
//!
//!     cargo run --release --example aald_desk_check

use num_complex::Complex64;
use valdist::curves::ProjectiveCurve;
use valdist::nevanlinna::{aald_check, log_grid, LinearWeil};
use valdist::quad::QuadratureSpec;

fn main() {
    let f = ProjectiveCurve::from_int_coeffs(&[&[2, 1], &[0, 1, 1], &[1, 0, 0, 1]]).unwrap();
    let normal = vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(0.1, -0.2),
        Complex64::new(-0.7, 0.3),
    ];
    let z = LinearWeil::new(vec![normal.clone()]);
    let grid = log_grid(2.0, 200.0, 10);
    let ex = aald_check(&f, &z, &[normal], &grid, &QuadratureSpec::default()).unwrap();

    println!("{:>10} {:>14} {:>14} {:>12}", "r", "lhs", "m_jet(Z^(1))", "excess");
    for (i, &r) in grid.iter().enumerate() {
        println!(
            "{r:>10.3} {:>14.5} {:>14.5} {:>12.5}",
            ex.lhs[i], ex.rhs[i], ex.excess[i]
        );
    }
    println!(
        "\nexcess slope in log r: {:+.4} (bounded above = the inequality holds with a constant)",
        ex.slope_in_log_r
    );

    // A point target has empty 1-jet: the left side alone stays bounded.
    let f1 = ProjectiveCurve::from_int_coeffs(&[&[1], &[-3, 1]]).unwrap();
    let point = LinearWeil::point(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
    let ex = aald_check(&f1, &point, &[], &grid, &QuadratureSpec::default()).unwrap();
    println!(
        "point target on P^1 (empty jet): lhs slope {:+.4}",
        ex.slope_in_log_r
    );
}
