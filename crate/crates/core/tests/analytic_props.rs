use approx::assert_abs_diff_eq;
use clustcov_core::analytic::{
    cap_mcp, cap_mcp_area_bounds, cap_mcp_limit, cap_mcp_simple_bounds, cap_ppp, cap_tcp, capacity, CoverageQuery,
    McpLimit,
};
use clustcov_core::{BooleanModel, ProcessSpec};
use proptest::prelude::*;

const SLACK: f64 = 2e-8;

fn mcp(lambda_p: f64, m: f64, r_d: f64, big_r: f64, r_k: f64) -> CoverageQuery {
    CoverageQuery::new(BooleanModel::new(ProcessSpec::Matern { lambda_p, m, r_d }, big_r), r_k)
}

fn tcp(lambda_p: f64, m: f64, sigma: f64, big_r: f64, r_k: f64) -> CoverageQuery {
    CoverageQuery::new(
        BooleanModel::new(ProcessSpec::Thomas { lambda_p, m, sigma }, big_r),
        r_k,
    )
}

fn ppp(lambda_p: f64, m: f64, big_r: f64, r_k: f64) -> CoverageQuery {
    CoverageQuery::new(BooleanModel::new(ProcessSpec::Poisson { lambda_p, m }, big_r), r_k)
}

#[test]
fn radius_fungibility() {
    for q in [
        mcp(20e-6, 30.0, 20.0, 5.0, 10.0),
        tcp(20e-6, 30.0, 20.0, 5.0, 10.0),
        ppp(20e-6, 30.0, 5.0, 10.0),
    ] {
        let mut merged = q;
        merged.model.sensing_radius = 15.0;
        merged.r_k = 0.0;
        assert_eq!(capacity(&q).unwrap(), capacity(&merged).unwrap());
    }
}

#[test]
fn limits_are_approached() {
    let (lambda_p, m, r) = (20e-6, 3.0, 80.0);
    let zero = cap_mcp_limit(&mcp(lambda_p, m, 1.0, r, 0.0), McpLimit::ClusterRadiusToZero).unwrap();
    let inf = cap_mcp_limit(&mcp(lambda_p, m, 1.0, r, 0.0), McpLimit::ClusterRadiusToInfinity).unwrap();
    assert!((cap_mcp(&mcp(lambda_p, m, r / 1e3, r, 0.0)).unwrap() - zero).abs() < 1e-3);
    assert!((cap_mcp(&mcp(lambda_p, m, r * 1e3, r, 0.0)).unwrap() - inf).abs() < 1e-3);
}

#[test]
fn thomas_grows_with_spread_toward_poisson() {
    let p = cap_ppp(600e-6, 5.0, 0.0).unwrap();
    let mut prev = 0.0;
    for sigma in [2.0, 5.0, 10.0, 20.0, 40.0, 200.0] {
        let c = cap_tcp(&tcp(20e-6, 30.0, sigma, 5.0, 0.0)).unwrap();
        assert!(c > prev && c <= p);
        prev = c;
    }
}

#[test]
fn deployment_ordering_on_spread_grid() {
    for spread in [5.0, 10.0, 20.0, 40.0, 80.0] {
        for r_k in [0.0, 5.0, 20.0] {
            let m = cap_mcp(&mcp(20e-6, 30.0, spread, 5.0, r_k)).unwrap();
            let t = cap_tcp(&tcp(20e-6, 30.0, spread, 5.0, r_k)).unwrap();
            let p = cap_ppp(600e-6, 5.0, r_k).unwrap();
            assert!(
                m <= t + SLACK && t <= p + SLACK,
                "spread {spread} r_k {r_k}: {m} {t} {p}"
            );
        }
    }
}

#[test]
fn monotone_in_every_parameter() {
    let base = (20e-6, 10.0, 30.0, 10.0, 5.0);
    let eval = |(lp, m, s, r, rk): (f64, f64, f64, f64, f64)| {
        (
            cap_mcp(&mcp(lp, m, s, r, rk)).unwrap(),
            cap_tcp(&tcp(lp, m, s, r, rk)).unwrap(),
        )
    };
    let (bm, bt) = eval(base);
    let bumps = [
        (base.0 * 1.1, base.1, base.2, base.3, base.4),
        (base.0, base.1 * 1.1, base.2, base.3, base.4),
        (base.0, base.1, base.2, base.3 * 1.1, base.4),
        (base.0, base.1, base.2, base.3, base.4 * 1.1),
    ];
    for b in bumps {
        let (m, t) = eval(b);
        assert!(m > bm && t > bt, "{b:?}");
    }
}

#[test]
fn empty_process_never_senses() {
    assert_eq!(cap_mcp(&mcp(0.0, 3.0, 60.0, 80.0, 0.0)).unwrap(), 0.0);
    assert_eq!(cap_tcp(&tcp(20e-6, 0.0, 60.0, 80.0, 0.0)).unwrap(), 0.0);
    assert_eq!(capacity(&ppp(0.0, 3.0, 80.0, 0.0)).unwrap(), 0.0);
}

#[test]
fn matern_small_parameters() {
    assert_abs_diff_eq!(
        cap_mcp(&mcp(20e-6, 1e-9, 60.0, 80.0, 0.0)).unwrap(),
        0.0,
        epsilon = 1e-8
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bounds_nest(m in 0.5f64..40.0, ratio in 0.05f64..20.0, mass in 0.01f64..3.0, r_k_frac in 0.0f64..1.0) {
        let r = 50.0;
        let lambda_p = mass / (std::f64::consts::PI * r * r);
        let big_r = r * (1.0 - 0.9 * r_k_frac);
        let q = mcp(lambda_p, m, ratio * r, big_r, r - big_r);
        let exact = cap_mcp(&q).unwrap();
        let area = cap_mcp_area_bounds(&q).unwrap();
        let simple = cap_mcp_simple_bounds(&q).unwrap();
        prop_assert!(simple.lower <= area.lower + SLACK);
        prop_assert!(area.lower <= exact + SLACK);
        prop_assert!(exact <= area.upper + SLACK);
        prop_assert!(area.upper <= simple.upper + SLACK);
        prop_assert!((0.0..=1.0).contains(&exact));
    }
}
