use clustcov::harness::{estimate_fac, estimate_power, estimate_sensing_prob, McConfig};
use clustcov_core::analytic::{cap_mcp, cap_ppp, CoverageQuery};
use clustcov_core::power::PowerParams;
use clustcov_core::{BooleanModel, ProcessSpec, Seed, Window};

fn ppp(lambda_p: f64, m: f64, r: f64) -> BooleanModel {
    BooleanModel::new(ProcessSpec::Poisson { lambda_p, m }, r)
}

#[test]
fn confidence_intervals_are_calibrated() {
    let model = ppp(20e-6, 3.0, 80.0);
    let truth = cap_ppp(60e-6, 80.0, 0.0).unwrap();
    let runs = 200;
    let hits = (0..runs)
        .filter(|&k| {
            let cfg = McConfig {
                n_realizations: 30,
                n_probes: 200,
                seed: Seed(10_000 + k),
                parallelism: 1,
                ..McConfig::default()
            };
            estimate_fac(&model, &cfg).unwrap().contains(truth)
        })
        .count();
    let rate = hits as f64 / runs as f64;
    assert!((0.90..=0.99).contains(&rate), "coverage rate {rate}");
}

#[test]
fn vanishing_radius_covers_nothing() {
    let cfg = McConfig {
        n_realizations: 50,
        n_probes: 1000,
        ..McConfig::default()
    };
    let e = estimate_fac(&ppp(20e-6, 3.0, 1e-6), &cfg).unwrap();
    assert!(e.contains(0.0) || e.value == 0.0);
}

#[test]
fn sensing_probability_matches_matern_sweep() {
    let model = BooleanModel::new(
        ProcessSpec::Matern {
            lambda_p: 20e-6,
            m: 30.0,
            r_d: 20.0,
        },
        5.0,
    );
    let cfg = McConfig {
        n_realizations: 100_000,
        window: Window::new(300.0, 300.0).unwrap(),
        seed: Seed(21),
        ..McConfig::default()
    };
    for r_k in [0.0, 10.0, 20.0] {
        let cap = cap_mcp(&CoverageQuery::new(model, r_k)).unwrap();
        let e = estimate_sensing_prob(&model, r_k, &cfg).unwrap();
        assert!(e.contains(cap), "r_K={r_k}: {cap} not in {:?}", e.ci95);
    }
}

#[test]
fn radius_fungibility_in_simulation() {
    let process = ProcessSpec::Thomas {
        lambda_p: 20e-6,
        m: 3.0,
        sigma: 30.0,
    };
    let cfg = McConfig {
        n_realizations: 40_000,
        window: Window::new(800.0, 800.0).unwrap(),
        seed: Seed(5),
        ..McConfig::default()
    };
    let split = estimate_sensing_prob(&BooleanModel::new(process, 20.0), 15.0, &cfg).unwrap();
    let merged = estimate_sensing_prob(
        &BooleanModel::new(process, 35.0),
        0.0,
        &McConfig { seed: Seed(6), ..cfg },
    )
    .unwrap();
    let joint = (split.std_error.powi(2) + merged.std_error.powi(2)).sqrt();
    assert!((split.value - merged.value).abs() <= 1.96 * joint);
}

#[test]
fn window_must_hold_the_event_neighbourhood() {
    let cfg = McConfig {
        window: Window::new(100.0, 100.0).unwrap(),
        ..McConfig::default()
    };
    assert!(estimate_sensing_prob(&ppp(20e-6, 3.0, 40.0), 20.0, &cfg).is_err());
}

#[test]
fn power_of_poisson_deployment() {
    let cfg = McConfig {
        n_realizations: 1000,
        seed: Seed(8),
        ..McConfig::default()
    };
    let e = estimate_power(&ppp(20e-6, 3.0, 20.0), &PowerParams::new(1.0, 2.0).unwrap(), &cfg).unwrap();
    assert!(e.contains(3.0 / std::f64::consts::PI), "{e:?}");
}
