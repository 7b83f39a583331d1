//! Quadrature: Gauss-Legendre panels with adaptive bisection for circle
//! averages (the proximity integrals have integrable log singularities), and
//! a polar product rule for disk potentials where the `log(r/ρ)` radial
//! weight is integrated analytically per radial bin.

use std::sync::OnceLock;

/// Panel controls for circle averages.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Initial uniform panels over `[0, 2π)`.
    pub initial_panels: usize,
    /// Gauss-Legendre points per panel.
    pub points: usize,
    /// Bisect when the in-panel sample variation exceeds this.
    pub variation_threshold: f64,
    /// Bisect when any sample magnitude exceeds this (singularity chase).
    pub magnitude_threshold: f64,
    /// Interpret the variation threshold relative to the panel magnitude.
    /// Needed for integrands spanning many decades, where absolute variation
    /// and magnitude cues would refine panels that are already smooth.
    /// Refinement near a point feature only deepens the panels containing
    /// it, so the chained cost is linear in the depth cap.
    pub relative_variation: bool,
    /// Maximum bisection depth per panel.
    pub max_depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            initial_panels: 32,
            points: 64,
            variation_threshold: 1e-3,
            magnitude_threshold: 20.0,
            relative_variation: false,
            max_depth: 20,
        }
    }
}

impl QuadratureSpec {
    /// Cheaper settings for Monte-Carlo inner loops.
    pub fn fast() -> Self {
        Self {
            initial_panels: 8,
            points: 32,
            variation_threshold: 1e-2,
            max_depth: 12,
            ..Self::default()
        }
    }

    /// Variant for integrands that are smooth on the circle but large in
    /// magnitude (log-norm averages): magnitude chasing would refine panels
    /// that need no refinement, so refinement runs on the floored relative
    /// variation instead.
    pub fn smooth(&self) -> Self {
        Self {
            magnitude_threshold: f64::INFINITY,
            relative_variation: true,
            ..*self
        }
    }
}

/// Nodes and weights of `n`-point Gauss-Legendre on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<
        std::sync::Mutex<std::collections::HashMap<usize, &'static (Vec<f64>, Vec<f64>)>>,
    > = OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(std::collections::HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&n) {
        return v;
    }
    let computed: &'static (Vec<f64>, Vec<f64>) = Box::leak(Box::new(compute_gauss_legendre(n)));
    guard.insert(n, computed);
    computed
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess, Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Mean of `f(θ)` over `[0, 2π)` with adaptive panel bisection.
/// Returns the mean and an absolute error estimate.
pub fn circle_mean(f: &dyn Fn(f64) -> f64, spec: &QuadratureSpec) -> (f64, f64) {
    let (nodes, weights) = gauss_legendre(spec.points);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut total = 0.0;
    let mut err = 0.0;

    // Depth-first over panels; a panel integrates f over [a, b].
    let mut stack: Vec<(f64, f64, usize)> = (0..spec.initial_panels)
        .rev()
        .map(|i| {
            let a = two_pi * i as f64 / spec.initial_panels as f64;
            let b = two_pi * (i + 1) as f64 / spec.initial_panels as f64;
            (a, b, 0usize)
        })
        .collect();

    while let Some((a, b, depth)) = stack.pop() {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut maxmag = 0.0f64;
        for (x, w) in nodes.iter().zip(weights) {
            let v = f(mid + half * x);
            sum += w * v;
            lo = lo.min(v);
            hi = hi.max(v);
            maxmag = maxmag.max(v.abs());
        }
        let integral = sum * half;
        let variation = if spec.relative_variation {
            (hi - lo) / maxmag.max(1e-300)
        } else {
            hi - lo
        };
        if depth < spec.max_depth
            && (variation > spec.variation_threshold || maxmag > spec.magnitude_threshold)
        {
            stack.push((a, mid, depth + 1));
            stack.push((mid, b, depth + 1));
        } else {
            total += integral;
            // Crude per-panel error model: unresolved variation times width.
            if variation > spec.variation_threshold {
                err += (hi - lo) * (b - a);
            } else {
                err += 1e-15 * maxmag.max(1.0) * (b - a);
            }
        }
    }
    (total / two_pi, err / two_pi)
}

/// Radial layout for disk potentials.
#[derive(Debug, Clone)]
pub struct DiskQuadratureSpec {
    /// Radial interpolation nodes per bin.
    pub radial_points: usize,
    /// Geometric refinement levels toward the origin.
    pub origin_levels: usize,
    /// Radii of known integrand singularities; bins are refined toward them.
    pub singular_radii: Vec<f64>,
    /// Geometric refinement levels toward each singular radius. Capped so
    /// the radial resolution never outruns the angular one: below that
    /// floor the product rule overestimates an interior peak, and the
    /// spurious mass shows up as log-r growth downstream. The sliver that
    /// remains unresolved only undercounts, by an r-independent amount.
    pub singular_levels: usize,
    /// Angular quadrature for the per-radius means.
    pub angular: QuadratureSpec,
}

impl Default for DiskQuadratureSpec {
    fn default() -> Self {
        Self {
            radial_points: 8,
            origin_levels: 32,
            singular_radii: Vec::new(),
            singular_levels: 12,
            angular: QuadratureSpec {
                initial_panels: 12,
                points: 24,
                // Coarse by design: Gauss-Legendre already resolves smooth
                // panels to near machine precision, so refinement is only
                // for chasing the integrable peaks.
                variation_threshold: 0.25,
                magnitude_threshold: f64::INFINITY,
                relative_variation: true,
                max_depth: 12,
            },
        }
    }
}

/// `∫_bin ρ^s · 2ρ log(r/ρ) dρ` has the primitive
/// `2 G_{s+1}` with `G_m(ρ) = ρ^{m+1}/(m+1) (log(r/ρ) + 1/(m+1))`.
fn log_weight_moment(s: usize, rho0: f64, rho1: f64, r: f64) -> f64 {
    let g = |rho: f64| {
        if rho == 0.0 {
            return 0.0;
        }
        let m = (s + 2) as f64;
        rho.powf(m) / m * ((r / rho).ln() + 1.0 / m)
    };
    2.0 * (g(rho1) - g(rho0))
}

/// One radial bin: interpolation radii plus quadrature weights for the
/// weighted (`2ρ log(r/ρ)`) and plain (`2ρ`) radial measures.
struct RadialBin {
    radii: Vec<f64>,
    log_weights: Vec<f64>,
    plain_weights: Vec<f64>,
}

/// Build the bin so that polynomials of degree < `points` are integrated
/// exactly against both weights (modified-moment construction).
fn make_bin(rho0: f64, rho1: f64, r: f64, points: usize) -> RadialBin {
    let (gl_nodes, _) = gauss_legendre(points);
    let mid = 0.5 * (rho0 + rho1);
    let half = 0.5 * (rho1 - rho0);
    let radii: Vec<f64> = gl_nodes.iter().map(|t| mid + half * t).collect();

    // Moments of u^s (u = (ρ-mid)/half) against both measures. The plain
    // measure is a polynomial, exact in all regimes. The log measure needs
    // two routes: the closed-form primitive expanded in powers of ρ is fine
    // for wide bins, but cancels catastrophically when half ≪ mid, where
    // the log is expanded as a series in (half/mid) u instead.
    let mut log_moments = vec![0.0; points];
    let mut plain_moments = vec![0.0; points];
    // ∫_{-1}^{1} u^k du
    let unit = |k: usize| if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
    let eps = half / mid.max(1e-300);
    for s in 0..points {
        plain_moments[s] = 2.0 * half * (mid * unit(s) + half * unit(s + 1));
        if eps > 0.3 {
            let mut acc = 0.0;
            for j in 0..=s {
                let c = binomial(s, j) * (-mid / half).powi((s - j) as i32) / half.powi(j as i32);
                acc += c * log_weight_moment(j, rho0, rho1, r);
            }
            log_moments[s] = acc;
        } else {
            // log(r/ρ) = log(r/mid) - Σ_{m≥1} (-1)^{m+1} (εu)^m / m.
            let a_s = mid * unit(s) + half * unit(s + 1);
            let mut b_s = 0.0;
            let mut eps_pow = 1.0;
            for m in 1..=60usize {
                eps_pow *= eps;
                let term = eps_pow / m as f64 * (mid * unit(s + m) + half * unit(s + m + 1));
                b_s += if m % 2 == 1 { term } else { -term };
                if eps_pow < 1e-18 {
                    break;
                }
            }
            log_moments[s] = 2.0 * half * ((r / mid).ln() * a_s - b_s);
        }
    }

    let log_weights = solve_vandermonde_t(gl_nodes, &log_moments);
    let plain_weights = solve_vandermonde_t(gl_nodes, &plain_moments);
    RadialBin {
        radii,
        log_weights,
        plain_weights,
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Solve `Σ_i w_i u_i^s = m_s` for the weights.
fn solve_vandermonde_t(u: &[f64], moments: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut a = vec![vec![0.0; n + 1]; n];
    for (s, row) in a.iter_mut().enumerate() {
        for (i, &ui) in u.iter().enumerate() {
            row[i] = ui.powi(s as i32);
        }
        row[n] = moments[s];
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        let p = a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / p;
            for k in col..=n {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    let mut w = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = a[row][n];
        for k in row + 1..n {
            acc -= a[row][k] * w[k];
        }
        w[row] = acc / a[row][row];
    }
    w
}

/// Radial bin edges over `[0, r]`: geometric refinement toward the origin
/// and toward every singular radius inside the disk.
fn bin_edges(r: f64, spec: &DiskQuadratureSpec) -> Vec<f64> {
    let mut edges = vec![0.0, r];
    let mut t = r;
    for _ in 0..spec.origin_levels {
        t *= 0.5;
        if t < 1e-300 {
            break;
        }
        edges.push(t);
    }
    for &s in &spec.singular_radii {
        if s <= 0.0 || s >= r {
            continue;
        }
        edges.push(s);
        let mut d = 0.25 * s.min(r - s).max(1e-12);
        for _ in 0..spec.singular_levels {
            if s - d > 0.0 {
                edges.push(s - d);
            }
            if s + d < r {
                edges.push(s + d);
            }
            d *= 0.5;
            if d < 1e-14 * r {
                break;
            }
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-300);
    edges
}

/// Disk potential `N(ψ dd^c|z|^2, r) = ∫_{Δ(r)} ψ(z) log(r/|z|) dd^c|z|^2`
/// for a single radius. `ψ(ρ, θ)` must be real and integrable on the disk.
pub fn disk_potential(psi: &dyn Fn(f64, f64) -> f64, r: f64, spec: &DiskQuadratureSpec) -> f64 {
    nphi_on_grid(psi, &[r], spec)[0]
}

/// The same potential on a whole increasing r-grid, sharing every angular
/// mean between radii. Radial weights absorb the `log(r/ρ)` kernel exactly,
/// so a constant ψ integrates to machine precision.
pub fn nphi_on_grid(
    psi: &dyn Fn(f64, f64) -> f64,
    r_grid: &[f64],
    spec: &DiskQuadratureSpec,
) -> Vec<f64> {
    assert!(!r_grid.is_empty());
    let r_max = *r_grid.last().unwrap();
    let edges = {
        // Grid radii become bin edges so each N(r) sums whole bins.
        let mut e = bin_edges(r_max, spec);
        e.extend_from_slice(r_grid);
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        e.dedup_by(|a, b| (*a - *b).abs() < 1e-300);
        e
    };

    // For each bin: log-weighted and plain integrals of the angular mean.
    // The log kernel is taken against r_max; correcting to a smaller radius r
    // uses log(r/ρ) = log(r_max/ρ) - log(r_max/r) on the plain part.
    struct BinData {
        upper: f64,
        weighted: f64,
        plain: f64,
    }
    let mut bins = Vec::new();
    for w in edges.windows(2) {
        let (rho0, rho1) = (w[0], w[1]);
        if rho1 - rho0 <= 0.0 {
            continue;
        }
        let bin = make_bin(rho0, rho1, r_max, spec.radial_points);
        let mut weighted = 0.0;
        let mut plain = 0.0;
        for ((&rho, &lw), &pw) in bin
            .radii
            .iter()
            .zip(&bin.log_weights)
            .zip(&bin.plain_weights)
        {
            let mean = circle_mean(&|theta| psi(rho, theta), &spec.angular).0;
            weighted += lw * mean;
            plain += pw * mean;
        }
        bins.push(BinData {
            upper: rho1,
            weighted,
            plain,
        });
    }

    r_grid
        .iter()
        .map(|&r| {
            let correction = (r_max / r).ln();
            bins.iter()
                .filter(|b| b.upper <= r * (1.0 + 1e-12))
                .map(|b| b.weighted - correction * b.plain)
                .sum()
        })
        .collect()
}
