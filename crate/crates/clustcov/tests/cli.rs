use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clustcov_core::analytic::cap_ppp;

const SMALL: &str = r#"
[[series]]
label = "mcp"
process = "mcp"
lambda_p = 20e-6
m = 3.0
r_d = 60.0
R = 20.0

[[series]]
label = "tcp"
process = "tcp"
lambda_p = 20e-6
m = 3.0
sigma = 60.0
R = 20.0

[event]
sweep = { min = 0.0, max = 10.0, step = 10.0 }

[mc]
n_realizations = 64
n_probes = 500
seed = 3
estimators = ["fac", "sensing_prob", "power"]
"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_clustcov"));
    c.env_remove("CLUSTCOV_THREADS");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(t) = threads {
        c.env("CLUSTCOV_THREADS", t);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn simulate_is_byte_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let four = write(dir.path(), "four.toml", &format!("{SMALL}parallelism = 4\n"));
    let one = write(dir.path(), "one.toml", &format!("{SMALL}parallelism = 1\n"));
    let a = run(&["simulate", four.to_str().unwrap()], None);
    let b = run(&["simulate", one.to_str().unwrap()], None);
    let c = run(&["simulate", four.to_str().unwrap()], Some("2"));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let text = stdout(&a);
    assert_eq!(
        text.lines().next().unwrap(),
        "series,estimator,r_K,value,std_error,ci_lo,ci_hi,n"
    );
    // fac, two sensing radii and power for each of two series.
    assert_eq!(text.lines().count(), 1 + 2 * 4);

    let reseeded = run(&["simulate", four.to_str().unwrap(), "--seed", "4"], None);
    assert_ne!(a.stdout, reseeded.stdout);
}

#[test]
fn dump_lists_germs_with_heads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", SMALL);
    let dump = dir.path().join("pattern.csv");
    let o = run(
        &["simulate", cfg.to_str().unwrap(), "--dump", dump.to_str().unwrap()],
        None,
    );
    assert!(o.status.success());
    for label in ["mcp", "tcp"] {
        let text = std::fs::read_to_string(dir.path().join(format!("pattern-{label}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("germ_x,germ_y,head_x,head_y"));
        assert!(lines.all(|l| l.split(',').count() == 4));
    }
}

#[test]
fn analytic_sweeps_and_single_rows() {
    let o = run(&["figure", "2"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let caps = |label: &str| -> Vec<f64> {
        rows.iter()
            .filter(|r| r[0] == label)
            .map(|r| r[2].parse().unwrap())
            .collect()
    };
    let (tight, loose) = (caps("mcp-rd10"), caps("mcp-rd40"));
    assert!(tight.windows(2).all(|w| w[1] > w[0]));
    assert!(tight.iter().zip(&loose).all(|(t, l)| l > t));
    // Bound columns filled for Matérn rows.
    assert!(rows.iter().all(|r| r[3..].iter().all(|c| !c.is_empty())));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "one.toml",
        "[[series]]\nprocess = \"ppp\"\nlambda_p = 20e-6\nm = 3\nR = 80\n[event]\nsweep = { min = 4.0, max = 4.0, step = 1.0 }\n",
    );
    let o = run(&["analytic", cfg.to_str().unwrap()], None);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert_eq!(text.lines().nth(1).unwrap().split(',').skip(3).collect::<String>(), "");
}

#[test]
fn power_sweep_matches_poisson_closed_form_at_matching_budget() {
    let dir = tempfile::tempdir().unwrap();
    // With alpha = 2 and tau = 1 the Poisson deployment needs m / π per m²,
    // so e_net = 30 / π buys m = 30.
    let e = 30.0 / std::f64::consts::PI;
    let cfg = write(
        dir.path(),
        "p.toml",
        &format!("[power]\nm = 30.0\nlambda_p = 20e-6\nR = 5.0\ne_net = {{ min = {e:?}, max = {e:?}, step = 1.0 }}\n"),
    );
    let o = run(&["power-sweep", cfg.to_str().unwrap()], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "e_net,r_d,cov_mcp,sigma,cov_tcp,m_ppp,cov_ppp"
    );
    let m: f64 = column(&text, "m_ppp")[0].parse().unwrap();
    let cov: f64 = column(&text, "cov_ppp")[0].parse().unwrap();
    assert!((m - 30.0).abs() < 1e-6);
    assert!((cov - cap_ppp(30.0 * 20e-6, 5.0, 0.0).unwrap()).abs() < 1e-8);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write(
        dir.path(),
        "typo.toml",
        "[[series]]\nprocess = \"ppp\"\nlambda_p = 1e-5\nm = 3\nradius = 4\n",
    );
    let o = run(&["analytic", typo.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let o = run(&["analytic", dir.path().join("missing.toml").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));

    let starved = write(
        dir.path(),
        "starved.toml",
        "[[series]]\nprocess = \"tcp\"\nlambda_p = 2e-5\nm = 3\nsigma = 60\nR = 80\n[quadrature]\nrel_tol = 1e-15\nabs_tol = 0.0\nmax_subdivisions = 2\n",
    );
    let o = run(&["analytic", starved.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    // The failing row is still written, with blank cells.
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn validate_catches_corrupted_bound_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let base = include_str!("../configs/validate.toml");
    let fast = base.replace("n_realizations = 4000", "n_realizations = 200");
    let good = write(dir.path(), "good.toml", &fast);
    let o = run(&["validate", good.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let bad = write(
        dir.path(),
        "bad.toml",
        &format!("{fast}\n[diagnostics]\nsimple_bound_exponent = \"radius-squared\"\n"),
    );
    let o = run(&["validate", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    assert!(report
        .lines()
        .any(|l| l.contains("bound nesting") && l.ends_with("FAIL")));
    assert!(report
        .lines()
        .filter(|l| l.ends_with("FAIL"))
        .all(|l| l.contains("bound nesting")));
}

#[test]
fn validate_zero_density_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "zero.toml",
        r#"
[[series]]
process = "ppp"
lambda_p = 0.0
m = 3.0
R = 20.0

[[series]]
process = "mcp"
lambda_p = 0.0
m = 3.0
r_d = 60.0
R = 20.0

[[series]]
process = "tcp"
lambda_p = 20e-6
m = 0.0
sigma = 60.0
R = 20.0

[event]
sweep = { min = 0.0, max = 10.0, step = 10.0 }

[mc]
n_realizations = 50
n_probes = 100

[diagnostics]
compare_closed_form_bounds = true
"#,
    );
    let o = run(&["validate", cfg.to_str().unwrap()], None);
    let report = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{report}");
    for line in report.lines().filter(|l| l.contains("vs simulation")) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        let n = cells.len();
        assert_eq!((cells[n - 4], cells[n - 3]), ("0", "0"), "{line}");
    }
    assert!(report.contains("note: mcp2 r_K=0: closed-form area bounds"));
}
