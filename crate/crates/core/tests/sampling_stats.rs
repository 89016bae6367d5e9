use clustcov_core::montecarlo::head_offsets;
use clustcov_core::process::{sample, Sampler};
use clustcov_core::{ProcessSpec, Seed, Window};
use proptest::prelude::*;

fn window() -> Window {
    Window::new(1000.0, 1000.0).unwrap()
}

fn matern() -> ProcessSpec {
    ProcessSpec::Matern {
        lambda_p: 20e-6,
        m: 3.0,
        r_d: 60.0,
    }
}

fn thomas() -> ProcessSpec {
    ProcessSpec::Thomas {
        lambda_p: 20e-6,
        m: 3.0,
        sigma: 60.0,
    }
}

#[test]
fn poisson_count_mean() {
    let spec = ProcessSpec::Poisson {
        lambda_p: 20e-6,
        m: 3.0,
    };
    let n = 200;
    let total: usize = (0..n)
        .map(|s| sample(&spec, &window(), 0.0, Seed(s)).unwrap().germs.len())
        .sum();
    let mean = total as f64 / n as f64;
    assert!((mean - 60.0).abs() <= 3.0 * (60.0f64 / n as f64).sqrt(), "mean {mean}");
}

#[test]
fn cluster_counts_in_window_have_right_mean() {
    let w = window();
    for (spec, margin) in [(matern(), 60.0), (thomas(), 360.0)] {
        let n = 2000;
        let counts: Vec<f64> = (0..n)
            .map(|s| {
                let r = sample(&spec, &w, margin, Seed(1000 + s)).unwrap();
                r.germs.iter().filter(|g| w.contains(g)).count() as f64
            })
            .collect();
        let mean = counts.iter().sum::<f64>() / n as f64;
        let var = counts.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        // Sensors whose parent fell outside the dilated region are the only
        // loss; 6σ makes that negligible.
        assert!((mean - 60.0).abs() < 3.0 * se, "{spec:?}: {mean} ± {se}");
        assert!(var > 60.0, "cluster counts should be over-dispersed");
    }
}

#[test]
fn thomas_offset_variance() {
    let mut dx = Vec::new();
    let mut seed = 0;
    while dx.len() < 20_000 {
        let r = sample(&thomas(), &window(), 0.0, Seed(seed)).unwrap();
        dx.extend(head_offsets(&r).into_iter().flat_map(|(x, y)| [x, y]));
        seed += 1;
    }
    let n = dx.len() as f64;
    let var = dx.iter().map(|x| x * x).sum::<f64>() / n;
    assert!((var - 3600.0).abs() < 0.05 * 3600.0, "variance {var}");
}

// Chi-square statistic of offset angles over 16 equal bins.
fn angle_chi_square(spec: &ProcessSpec, min: usize) -> f64 {
    let bins = 16;
    let mut counts = vec![0usize; bins];
    let mut total = 0;
    let mut seed = 0;
    while total < min {
        let r = sample(spec, &window(), 0.0, Seed(seed)).unwrap();
        for (x, y) in head_offsets(&r) {
            let a = y.atan2(x) + std::f64::consts::PI;
            let b = ((a / (2.0 * std::f64::consts::PI)) * bins as f64) as usize;
            counts[b.min(bins - 1)] += 1;
            total += 1;
        }
        seed += 1;
    }
    let expected = total as f64 / bins as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

#[test]
fn offsets_are_isotropic() {
    // 99th percentile of chi-square with 15 degrees of freedom.
    let critical = 30.578;
    assert!(angle_chi_square(&matern(), 20_000) < critical);
    assert!(angle_chi_square(&thomas(), 20_000) < critical);
}

#[test]
fn resource_cap_is_configurable() {
    let sampler = Sampler {
        max_expected_points: 10,
    };
    assert!(sampler.sample(&matern(), &window(), 60.0, Seed(0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), kind in 0usize..3, margin in 0.0f64..200.0) {
        let spec = [ProcessSpec::Poisson { lambda_p: 20e-6, m: 3.0 }, matern(), thomas()][kind];
        let a = sample(&spec, &window(), margin, Seed(seed)).unwrap();
        let b = sample(&spec, &window(), margin, Seed(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
