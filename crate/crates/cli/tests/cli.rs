use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn dicke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn canonical_header() {
    let text = stdout(&dicke(&["canonical", "--gamma-ratio", "1.5", "--beta-range", "0.1:10:5:log"]));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "beta,eta,phase,chi,free_energy,entropy,internal_energy,heat_capacity,photon_number,sigma_x,sigma_z"
    );
    assert_eq!(lines.count(), 5);
}

#[test]
fn temperature_sweep_equals_reciprocal_beta() {
    let t = stdout(&dicke(&["canonical", "--gamma-ratio", "1.5", "--temperature-range", "0.5:2:2"]));
    let b = stdout(&dicke(&["canonical", "--gamma-ratio", "1.5", "--beta-range", "0.5:2:2"]));
    let t_rows: Vec<&str> = t.lines().skip(1).collect();
    let b_rows: Vec<&str> = b.lines().skip(1).collect();
    // T = 0.5, 2 gives beta = 2, 0.5
    assert_eq!(t_rows[0], b_rows[1]);
    assert_eq!(t_rows[1], b_rows[0]);
}

#[test]
fn weighted_multiplicities_sum_to_hilbert_dimension() {
    let text = stdout(&dicke(&["multiplicity", "--n-atoms", "10"]));
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let total: u64 = rows.iter().map(|r| r[3].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 1024);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sdos",
        "--gamma-ratio",
        "2",
        "--n-atoms",
        "10",
        "--energy-range=-8:6:6",
        "--mc-samples",
        "20000",
        "--seed",
        "7",
    ];
    let a = dicke(&args);
    let b = dicke(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn errors_are_one_line() {
    for args in [
        vec!["canonical"],
        vec!["canonical", "--gamma", "-1"],
        vec!["canonical", "--gamma", "1", "--beta-range", "2:1:5"],
        vec!["sdos", "--gamma", "1", "--n-atoms", "10", "--j", "1.5"],
        vec!["nonsense"],
    ] {
        let o = dicke(&args);
        assert!(!o.status.success(), "{args:?} succeeded");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn beta_and_temperature_are_exclusive() {
    let o = dicke(&[
        "canonical",
        "--gamma",
        "1",
        "--beta-range",
        "1:2:2",
        "--temperature-range",
        "1:2:2",
    ]);
    assert!(!o.status.success());

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("both.conf");
    fs::write(&cfg, "gamma = 1\nbeta_range = 1:2:2\ntemperature_range = 1:2:2\n").unwrap();
    let o = dicke(&["canonical", "--config", cfg.to_str().unwrap()]);
    assert!(!o.status.success());
    // a flag resolves the ambiguity
    let o = dicke(&["canonical", "--config", cfg.to_str().unwrap(), "--beta-range", "1:2:2"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# sweep\nn_atoms = 12\nformat = json\n").unwrap();
    let v: Value = serde_json::from_str(&stdout(&dicke(&["multiplicity", "--config", cfg.to_str().unwrap()]))).unwrap();
    assert_eq!(v["meta"]["params"]["n_atoms"], 12);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);

    let text = stdout(&dicke(&[
        "multiplicity",
        "--config",
        cfg.to_str().unwrap(),
        "--n-atoms",
        "4",
        "--format",
        "csv",
    ]));
    assert_eq!(text.lines().count(), 4);

    fs::write(&cfg, "colour = red\n").unwrap();
    assert!(!dicke(&["multiplicity", "--config", cfg.to_str().unwrap()]).status.success());
}

#[test]
fn json_rows_follow_columns() {
    let v: Value = serde_json::from_str(&stdout(&dicke(&[
        "microcanonical",
        "--gamma-ratio",
        "1.5",
        "--epsilon-range=-1:0:3",
        "--format",
        "json",
        "--columns",
        "epsilon,entropy",
    ])))
    .unwrap();
    assert_eq!(v["meta"]["command"], "microcanonical");
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert!((v["meta"]["params"]["gamma_ratio"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["entropy", "epsilon"]);
    assert_eq!(rows[2]["epsilon"], 0.0);
    assert!((rows[2]["entropy"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn output_file_written_whole_or_not_at_all() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phase.csv");
    let o = dicke(&["phase-diagram", "--gamma-range", "0:3:11", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 12);

    // a failing run leaves the previous file untouched and no temporaries behind
    let o = dicke(&["phase-diagram", "--gamma-range", "3:0:11", "--output", path.to_str().unwrap()]);
    assert!(!o.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), written);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_quick_reports_each_criterion() {
    let text = stdout(&dicke(&["verify", "--level", "quick"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[..8].iter().all(|l| l.starts_with("criterion") && l.contains(" PASS ")));
    assert_eq!(lines[8], "8 of 8 criteria passed");
}
