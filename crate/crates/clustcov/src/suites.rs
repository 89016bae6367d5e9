//! Randomized parameter grids shared by the validation command and the
//! acceptance tests.

use std::f64::consts::PI;

use rand::Rng;

use clustcov_core::analytic::{
    cap_mcp, cap_mcp_area_bounds, cap_mcp_simple_bounds_with, ClusterExponent, CoverageQuery,
};
use clustcov_core::power::{power_mcp, power_ppp, power_tcp, solve_m, solve_r_d, solve_sigma};
use clustcov_core::{BooleanModel, ProcessSpec, QuadratureSettings, Result, Seed};

/// Effective radius used by the nesting grid; the bounds are scale-free in
/// `(m, r_d / r, λp π r²)`.
pub const NESTING_RADIUS: f64 = 50.0;

#[derive(Debug, Clone, Copy)]
pub struct NestingCase {
    pub m: f64,
    pub ratio: f64,
    pub mass: f64,
}

impl NestingCase {
    pub fn query(&self, q: QuadratureSettings) -> CoverageQuery {
        let r = NESTING_RADIUS;
        let spec = ProcessSpec::Matern {
            lambda_p: self.mass / (PI * r * r),
            m: self.m,
            r_d: self.ratio * r,
        };
        CoverageQuery::new(BooleanModel::new(spec, r), 0.0).with_quadrature(q)
    }
}

fn stratum<R: Rng>(rng: &mut R, lo: f64, hi: f64, i: usize, n: usize, log: bool) -> f64 {
    let u = (i as f64 + rng.random::<f64>()) / n as f64;
    if log {
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    } else {
        lo + u * (hi - lo)
    }
}

/// `n³` cases, one jittered point per cell of a grid over
/// `m ∈ [1, 30]`, `r_d / r ∈ [0.1, 10]` and `λp π r² ∈ [0.05, 2]`
/// (the last two log-spaced).
pub fn nesting_grid(seed: Seed, n: usize) -> Vec<NestingCase> {
    let mut rng = seed.rng(0);
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push(NestingCase {
                    m: stratum(&mut rng, 1.0, 30.0, i, n, false),
                    ratio: stratum(&mut rng, 0.1, 10.0, j, n, true),
                    mass: stratum(&mut rng, 0.05, 2.0, k, n, true),
                });
            }
        }
    }
    out
}

/// Largest violation of
/// `simple.lower ≤ area.lower ≤ exact ≤ area.upper ≤ simple.upper`;
/// zero or negative when the chain holds.
pub fn nesting_violation(q: &CoverageQuery, exponent: ClusterExponent) -> Result<f64> {
    let exact = cap_mcp(q)?;
    let area = cap_mcp_area_bounds(q)?;
    let simple = cap_mcp_simple_bounds_with(q, exponent)?;
    let chain = [simple.lower, area.lower, exact, area.upper, simple.upper];
    Ok(chain.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max))
}

/// Tolerance for an inequality between two integrals computed at `q`.
pub fn nesting_slack(q: &QuadratureSettings) -> f64 {
    2.0 * q.rel_tol.max(q.abs_tol)
}

#[derive(Debug, Clone, Copy)]
pub struct PowerCase {
    pub m: f64,
    pub lambda_p: f64,
    pub tau: f64,
    pub alpha: f64,
    pub spread: f64,
}

pub fn power_cases(seed: Seed, n: usize) -> Vec<PowerCase> {
    let mut rng = seed.rng(1);
    let mut log_uniform = |lo: f64, hi: f64| (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp();
    (0..n)
        .map(|_| PowerCase {
            m: log_uniform(0.1, 100.0),
            lambda_p: log_uniform(1e-7, 1e-3),
            tau: log_uniform(0.01, 100.0),
            alpha: log_uniform(2.0, 6.0),
            spread: log_uniform(0.1, 500.0),
        })
        .collect()
}

/// Worst relative error of the three inverse solvers applied to their
/// forward models.
pub fn roundtrip_error(c: &PowerCase) -> Result<f64> {
    let rel = |got: f64, want: f64| ((got - want) / want).abs();
    let e = power_mcp(c.m, c.lambda_p, c.tau, c.alpha, c.spread)?;
    let a = rel(solve_r_d(e, c.m, c.lambda_p, c.tau, c.alpha)?, c.spread);
    let e = power_tcp(c.m, c.lambda_p, c.tau, c.alpha, c.spread)?;
    let b = rel(solve_sigma(e, c.m, c.lambda_p, c.tau, c.alpha)?, c.spread);
    let e = power_ppp(c.m, c.lambda_p, c.tau, c.alpha)?;
    let d = rel(solve_m(e, c.lambda_p, c.tau, c.alpha)?, c.m);
    Ok(a.max(b).max(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_covers_ranges() {
        let g = nesting_grid(Seed(3), 5);
        assert_eq!(g.len(), 125);
        assert!(g
            .iter()
            .all(|c| (1.0..=30.0).contains(&c.m) && (0.1..=10.0).contains(&c.ratio) && (0.05..=2.0).contains(&c.mass)));
        assert!(g.iter().any(|c| c.ratio < 0.25) && g.iter().any(|c| c.ratio > 4.0));
    }
}
