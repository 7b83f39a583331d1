//! The characteristic function grows like `deg(f) · log r`: reading the
//! degree off the slope between two radii.
//!
//!     cargo run --release --example degree_slope

use valdist::crofton::SplitMix64;
use valdist::experiments::corpus::random_balanced_curve;
use valdist::nevanlinna::characteristic;
use valdist::quad::QuadratureSpec;

fn main() {
    let quad = QuadratureSpec::default();
    let mut rng = SplitMix64::new(7);
    println!("{:>4} {:>4} {:>12} {:>12} {:>14}", "n", "deg", "T(50)", "T(100)", "slope");
    for i in 0..10 {
        let n = 1 + i % 2;
        let deg = 1 + i % 5;
        let f = random_balanced_curve(n, deg, &mut rng);
        let t50 = characteristic(&f, 1, 50.0, &quad).unwrap();
        let t100 = characteristic(&f, 1, 100.0, &quad).unwrap();
        let slope = (t100 - t50) / (100.0f64 / 50.0).ln();
        println!("{n:>4} {deg:>4} {t50:>12.6} {t100:>12.6} {slope:>14.9}");
    }
}
