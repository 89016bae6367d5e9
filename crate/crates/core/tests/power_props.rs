use clustcov_core::power::{power_mcp, power_ppp, power_tcp, solve_m, solve_r_d, solve_sigma};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #[test]
    fn solvers_invert_power(
        m in 0.1f64..100.0,
        lambda_p in 1e-7f64..1e-3,
        tau in 0.01f64..100.0,
        alpha in 2.0f64..6.0,
        spread in 0.1f64..500.0,
    ) {
        let e = power_mcp(m, lambda_p, tau, alpha, spread).unwrap();
        prop_assert!(rel(solve_r_d(e, m, lambda_p, tau, alpha).unwrap(), spread) < 1e-10);
        let e = power_tcp(m, lambda_p, tau, alpha, spread).unwrap();
        prop_assert!(rel(solve_sigma(e, m, lambda_p, tau, alpha).unwrap(), spread) < 1e-10);
        let e = power_ppp(m, lambda_p, tau, alpha).unwrap();
        prop_assert!(rel(solve_m(e, lambda_p, tau, alpha).unwrap(), m) < 1e-10);
    }

    #[test]
    fn power_increases_with_each_parameter(
        m in 0.1f64..100.0,
        tau in 0.01f64..100.0,
        alpha in 2.0f64..6.0,
        spread in 0.1f64..500.0,
    ) {
        let lp = 20e-6;
        let k = 1.01;
        for f in [
            |m: f64, t: f64, a: f64, s: f64| power_mcp(m, 20e-6, t, a, s).unwrap(),
            |m: f64, t: f64, a: f64, s: f64| power_tcp(m, 20e-6, t, a, s).unwrap(),
        ] {
            let base = f(m, tau, alpha, spread);
            prop_assert!(f(m * k, tau, alpha, spread) > base);
            prop_assert!(f(m, tau * k, alpha, spread) > base);
            prop_assert!(f(m, tau, alpha, spread * k) > base);
        }
        let base = power_ppp(m, lp, tau, alpha).unwrap();
        prop_assert!(power_ppp(m * k, lp, tau, alpha).unwrap() > base);
        prop_assert!(power_ppp(m, lp, tau * k, alpha).unwrap() > base);
    }
}
