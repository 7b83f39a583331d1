//! Crofton averaging by Monte Carlo: the Haar mean of the hyperplane Weil
//! function is the constant `H_n/2`, independent of the point; averaged
//! proximity inherits the same constant independently of the radius.
//!
//!     cargo run --release --example crofton_averages

use num_complex::Complex64;
use valdist::crofton::{
    average_proximity, average_subsystem_base_locus, average_weil_hyperplane, harmonic_half,
    HaarSampler,
};
use valdist::curves::ProjectiveCurve;
use valdist::quad::QuadratureSpec;

fn main() {
    let samples = 100_000;
    println!("hyperplane Weil averages ({samples} samples):");
    for n in 1..=3usize {
        let sampler = HaarSampler::new(n + 1, 42 + n as u64);
        let x: Vec<Complex64> = (0..=n)
            .map(|k| Complex64::new(1.0 + k as f64, -0.3))
            .collect();
        let (mean, se) = average_weil_hyperplane(n, &x, samples, &sampler);
        println!(
            "  n = {n}: {mean:.5} ± {se:.5}   (H_{n}/2 = {:.5})",
            harmonic_half(n)
        );
    }

    println!("\nsubsystem base-locus averages (n = 2):");
    let sampler = HaarSampler::new(3, 99);
    for k in 0..=1usize {
        let x = vec![
            Complex64::new(0.2, 1.0),
            Complex64::new(-1.0, 0.4),
            Complex64::new(0.8, 0.0),
        ];
        let (mean, se) = average_subsystem_base_locus(2, k, &x, samples, &sampler);
        println!("  k = {k}: {mean:.5} ± {se:.5}");
    }

    println!("\naveraged proximity of the line [1 : z]:");
    let f = ProjectiveCurve::from_int_coeffs(&[&[1], &[0, 1]]).unwrap();
    let sampler = HaarSampler::new(2, 7);
    for r in [5.0, 50.0] {
        let (mean, se) = average_proximity(&f, r, 1_000, &sampler, &QuadratureSpec::fast());
        println!("  r = {r:>4}: {mean:.5} ± {se:.5}   (constant 1/2, r-independent)");
    }
}
