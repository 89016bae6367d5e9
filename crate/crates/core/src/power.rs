//! Per-unit-area power needed for every sensor to reach its cluster head,
//! `E[Σ τ |z - c(z)|^α]` over sensors in a unit area, and the inverse
//! problems that size a deployment to a power budget.
//!
//! `tau` is the SNR threshold (linear) and `alpha` the path-loss exponent.
//! Budgets carry the units of `tau · m^alpha` per m²; comparisons usually
//! normalize `tau = 1`.

use core::f64::consts::PI;

use crate::error::{non_negative, positive, Result};
use crate::numerics::special::gamma;
use crate::process::ProcessSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerParams {
    pub tau: f64,
    pub alpha: f64,
}

impl PowerParams {
    pub fn new(tau: f64, alpha: f64) -> Result<Self> {
        non_negative("tau", tau)?;
        positive("alpha", alpha)?;
        Ok(Self { tau, alpha })
    }
}

fn check(m: f64, lambda_p: f64, tau: f64, alpha: f64) -> Result<()> {
    non_negative("m", m)?;
    positive("lambda_p", lambda_p)?;
    non_negative("tau", tau)?;
    positive("alpha", alpha)?;
    Ok(())
}

fn check_inverse(e_net: f64, lambda_p: f64, tau: f64, alpha: f64) -> Result<()> {
    non_negative("e_net", e_net)?;
    positive("lambda_p", lambda_p)?;
    positive("tau", tau)?;
    positive("alpha", alpha)?;
    Ok(())
}

/// Matérn: `m λp τ r_d^α / (α/2 + 1)`. Daughters are uniform on the
/// cluster disk, so `E|y|^α = r_d^α / (α/2 + 1)`.
pub fn power_mcp(m: f64, lambda_p: f64, tau: f64, alpha: f64, r_d: f64) -> Result<f64> {
    check(m, lambda_p, tau, alpha)?;
    non_negative("r_d", r_d)?;
    Ok(m * lambda_p * tau * libm::pow(r_d, alpha) / (0.5 * alpha + 1.0))
}

/// Thomas: `m λp τ Γ(α/2 + 1) (2σ²)^{α/2}`.
pub fn power_tcp(m: f64, lambda_p: f64, tau: f64, alpha: f64, sigma: f64) -> Result<f64> {
    check(m, lambda_p, tau, alpha)?;
    non_negative("sigma", sigma)?;
    Ok(m * lambda_p * tau * gamma(0.5 * alpha + 1.0) * libm::pow(2.0 * sigma * sigma, 0.5 * alpha))
}

/// Poisson sensors attached to the nearest head of an independent Poisson
/// process of density `λp`: `m λp (π λp)^{-α/2} τ Γ(α/2 + 1)`.
pub fn power_ppp(m: f64, lambda_p: f64, tau: f64, alpha: f64) -> Result<f64> {
    check(m, lambda_p, tau, alpha)?;
    Ok(m * lambda_p * libm::pow(PI * lambda_p, -0.5 * alpha) * tau * gamma(0.5 * alpha + 1.0))
}

/// Power requirement of any deployment.
pub fn required_power(spec: &ProcessSpec, p: &PowerParams) -> Result<f64> {
    let (m, lambda_p) = (spec.mean_cluster_size(), spec.lambda_p());
    match *spec {
        ProcessSpec::Poisson { .. } => power_ppp(m, lambda_p, p.tau, p.alpha),
        ProcessSpec::Matern { r_d, .. } => power_mcp(m, lambda_p, p.tau, p.alpha, r_d),
        ProcessSpec::Thomas { sigma, .. } => power_tcp(m, lambda_p, p.tau, p.alpha, sigma),
    }
}

/// Cluster radius whose Matérn power requirement equals `e_net`.
pub fn solve_r_d(e_net: f64, m: f64, lambda_p: f64, tau: f64, alpha: f64) -> Result<f64> {
    check_inverse(e_net, lambda_p, tau, alpha)?;
    positive("m", m)?;
    Ok(libm::pow(
        e_net * (1.0 + 0.5 * alpha) / (m * lambda_p * tau),
        1.0 / alpha,
    ))
}

/// Thomas spread whose power requirement equals `e_net`.
pub fn solve_sigma(e_net: f64, m: f64, lambda_p: f64, tau: f64, alpha: f64) -> Result<f64> {
    check_inverse(e_net, lambda_p, tau, alpha)?;
    positive("m", m)?;
    let denom = m * lambda_p * tau * gamma(1.0 + 0.5 * alpha) * libm::pow(2.0, 0.5 * alpha);
    Ok(libm::pow(e_net / denom, 1.0 / alpha))
}

/// Mean sensors per head of a Poisson deployment whose power requirement
/// equals `e_net`.
pub fn solve_m(e_net: f64, lambda_p: f64, tau: f64, alpha: f64) -> Result<f64> {
    check_inverse(e_net, lambda_p, tau, alpha)?;
    Ok(e_net / (gamma(0.5 * alpha + 1.0) * tau * lambda_p * libm::pow(PI * lambda_p, -0.5 * alpha)))
}
