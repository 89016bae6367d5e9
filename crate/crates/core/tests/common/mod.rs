#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre rule: `panels` equal panels of `n` nodes.
pub fn composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for &(x, w) in rule {
            total += 0.5 * h * w * f(mid + 0.5 * h * x);
        }
    }
    total
}

/// Gaussian mass of B((x,0), r) from the raw polar double integral
/// (1/2πσ²) ∫₀^r ∫₀^{2π} exp(-(x² + t² + 2xt cos θ)/2σ²) t dθ dt on a
/// tensor grid.
pub fn disk_mass_double_integral(x: f64, r: f64, sigma: f64) -> f64 {
    let rule = gauss_legendre(20);
    let s2 = sigma * sigma;
    let outer = composite(
        |t| {
            let inner = composite(
                |th| (-(x * x + t * t + 2.0 * x * t * th.cos()) / (2.0 * s2)).exp(),
                0.0,
                2.0 * PI,
                32,
                &rule,
            );
            inner * t
        },
        0.0,
        r,
        32,
        &rule,
    );
    outer / (2.0 * PI * s2)
}

/// 1 - Q1(a, b) as a Poisson mixture of Erlang CDFs (non-central
/// chi-square with two degrees of freedom).
pub fn marcum_complement(a: f64, b: f64) -> f64 {
    let mu = 0.5 * a * a;
    let y = 0.5 * b * b;
    let mut weight = (-mu).exp();
    // Erlang CDF P(j + 1, y) = 1 - e^{-y} Σ_{k<=j} y^k / k!
    let mut term = (-y).exp();
    let mut partial = term;
    let mut total = 0.0;
    for j in 0..2000 {
        total += weight * (1.0 - partial);
        weight *= mu / (j + 1) as f64;
        term *= y / (j + 1) as f64;
        partial += term;
        if weight < 1e-300 && j as f64 > mu {
            break;
        }
    }
    total
}
