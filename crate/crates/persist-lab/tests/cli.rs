use persist_lab::manifest::RunManifest;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn persist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persist"))
        .args(args)
        .output()
        .expect("spawn persist")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|v| v.parse().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    (header, rows)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn distribution_smoke() {
    let o = persist(&[
        "distribution",
        "--m",
        "0",
        "--ell-max",
        "10",
        "--method",
        "nystrom",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(
        h.join(","),
        "ell,p_plus,p_minus,p_total,d_plus,d_minus,kappa"
    );
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[0][3], 1.0);
    assert!(rows.windows(2).all(|w| w[1][3] <= w[0][3]));
}

#[test]
fn ode_and_nystrom_columns_agree() {
    for m in ["0", "0.5"] {
        let run = |method| {
            let o = persist(&[
                "distribution",
                "--m",
                m,
                "--ell-max",
                "10",
                "--method",
                method,
            ]);
            assert_eq!(code(&o), 0);
            csv_rows(&stdout(&o)).1
        };
        let (a, b) = (run("ode"), run("nystrom"));
        assert_eq!(a.len(), b.len());
        for (ra, rb) in a.iter().zip(&b) {
            for (x, y) in ra.iter().zip(rb) {
                assert!((x - y).abs() < 1e-6, "m={m}: {ra:?} vs {rb:?}");
            }
        }
    }
}

#[test]
fn exponent_reports() {
    let o = persist(&["exponent", "--m", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["kappa"], 0.375);
    assert_eq!(
        json(&persist(&["exponent", "--q", "1"]))["dhp_theta_hat"],
        0.0
    );
    assert_eq!(json(&persist(&["exponent", "--m", "1"]))["kappa"], 0.0);
    let v = json(&persist(&["exponent", "--m", "-0.5"]));
    for key in ["kappa", "dhp_theta_hat", "phi", "A"] {
        assert!(v[key].is_number(), "{key}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["exponent", "--m", "0", "--q", "2"][..],
        &["exponent"],
        &["distribution", "--m", "0", "--method", "bogus"],
        &["distribution", "--m", "2"],
        &["distribution"],
        &["distribution", "--m", "0", "--ell-step", "0"],
        &["simulate", "--m", "0", "--replicas", "0"],
        &["simulate", "--m", "0", "--length", "3"],
        &["verify", "nonsense"],
        &["frobnicate"],
    ] {
        let o = persist(args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn asymptotics_and_eigens() {
    let o = persist(&["asymptotics", "--theta", "0.5", "--m", "0.5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["critical"]["c"].as_f64().unwrap() - 6.0 * std::f64::consts::LN_2).abs() < 1e-12);
    assert!(v["off_critical"]["A"].as_f64().unwrap() < 0.0);
    let o = persist(&["eigens", "--ell", "4", "--count", "5", "--parity", "even"]);
    assert_eq!(code(&o), 0);
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["index", "eigenvalue", "one_minus_eigenvalue"]);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[1] > 0.0 && r[1] < 1.0));
}

fn simulate_to(dir: &Path, name: &str, extra: &[&str]) -> (Vec<u8>, RunManifest) {
    let out = dir.join(name);
    let mut args = vec![
        "simulate",
        "--m",
        "0.2",
        "--t1",
        "20",
        "--length",
        "2000",
        "--replicas",
        "6",
        "--seed",
        "99",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let o = persist(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = RunManifest::read(&RunManifest::sidecar_path(&out)).unwrap();
    (std::fs::read(&out).unwrap(), m)
}

#[test]
fn simulate_is_reproducible_from_its_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let (a, man) = simulate_to(dir.path(), "a.csv", &[]);
    let (b, _) = simulate_to(dir.path(), "b.csv", &["--threads", "1"]);
    assert_eq!(a, b);
    assert_eq!(man.seeds, vec![99]);
    assert_eq!(man.command, "simulate");
    assert_eq!(man.library_version, persist_core::VERSION);
    // replay the recorded command line
    let argv: Vec<&str> = man.command_line[1..].iter().map(|s| s.as_str()).collect();
    std::fs::remove_file(dir.path().join("a.csv")).unwrap();
    assert_eq!(code(&persist(&argv)), 0);
    assert_eq!(std::fs::read(dir.path().join("a.csv")).unwrap(), a);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with(
        "t1,t2,p_plus_hat,p_minus_hat,stderr_plus,stderr_minus,n,exponent,exponent_stderr\n"
    ));
}

#[test]
fn simulate_physics() {
    let o = persist(&[
        "simulate",
        "--m",
        "1",
        "--length",
        "1000",
        "--replicas",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&stdout(&o));
    assert!(rows.iter().all(|r| r[2] == 1.0 && r[3] == 0.0));

    let o = persist(&["simulate", "--m", "0", "--replicas", "16", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&stdout(&o));
    let x = rows[0][7];
    assert!((x - 0.375).abs() < 0.1 * 0.375, "exponent {x}");
}

#[test]
fn t1_doublings_add_blocks() {
    let o = persist(&[
        "simulate",
        "--m",
        "0",
        "--t1",
        "10",
        "--length",
        "500",
        "--replicas",
        "2",
        "--t1-doublings",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&stdout(&o));
    let t1s: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(t1s, [10.0, 10.0, 10.0, 20.0, 20.0, 20.0, 40.0, 40.0, 40.0]);
}

#[test]
fn verify_suites() {
    let o = persist(&["verify", "oracle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[PASS] criterion 1"));
    let o = persist(&["verify", "painleve"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("P_VI [0,0,0,0] residual after double fold"));

    let t0 = Instant::now();
    let o = persist(&["verify", "all", "--skip", "montecarlo"]);
    assert!(t0.elapsed() < Duration::from_secs(600));
    let text = stdout(&o);
    let lines = text
        .lines()
        .filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]"));
    assert_eq!(lines.count(), 8);
    assert_eq!(code(&o), if text.contains("[FAIL]") { 1 } else { 0 });
}
