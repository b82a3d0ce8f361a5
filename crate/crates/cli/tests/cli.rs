use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coupled-array"));
    cmd.env_remove("COUPLED_ARRAY_THREADS");
    cmd
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).arg("--out-dir").arg(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .parse()
        .unwrap()
}

fn records(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(Result::unwrap).collect()
}

#[test]
fn eval_half_wavelength_pair_is_uncoupled() {
    let dir = tempfile::tempdir().unwrap();
    // 0.15 m at the default 0.3 m wavelength is half a wavelength
    let o = run(&["eval", "--positions", "0,0.15"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((field(&text, "directivity") - 2.0).abs() < 1e-9);
    assert!((field(&text, "excitation_norm") - 1.0).abs() < 1e-9);
}

#[test]
fn eval_optimal_pair() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["eval", "--positions", "0,0.216", "--theta", "90"], dir.path());
    let g = field(&stdout(&o), "directivity");
    // 2 / (1 + sinc(1.44))
    assert!((g - 2.554_712_86).abs() < 1e-6, "{g}");
}

#[test]
fn eval_wavelength_flag_rescales() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["eval", "--positions", "0,1", "--wavelength", "2"], dir.path());
    assert!((field(&stdout(&o), "directivity") - 2.0).abs() < 1e-9);
}

#[test]
fn eval_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["eval", "--positions", "0,abc"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--positions", "0,0.001"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--positions", "0,0.1", "--theta", "200"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--positions", "0,0.001", "--allow-infeasible"], dir.path());
    assert!(o.status.success());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "wavelength_m = 2.0\npositions = [0.0, 1.0]\n").unwrap();
    let o = run(&["eval", "--config", cfg.to_str().unwrap()], dir.path());
    assert!((field(&stdout(&o), "directivity") - 2.0).abs() < 1e-9);
    let o = run(
        &["eval", "--config", cfg.to_str().unwrap(), "--positions", "0,0.5"],
        dir.path(),
    );
    // 0.5 m at a 2 m wavelength is a quarter wavelength
    let g = field(&stdout(&o), "directivity");
    assert!((g - 2.0 / (1.0 + (std::f64::consts::FRAC_PI_2).sin() / std::f64::consts::FRAC_PI_2)).abs() < 1e-9);

    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    let o = run(&["eval", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn optimize_greedy_matches_exhaustive_for_two_antennas() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = Vec::new();
    for algo in ["gs", "es"] {
        let o = run(
            &["optimize", "--algo", algo, "-n", "2", "--d-max", "1.3", "--theta", "40"],
            dir.path(),
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        rows.push(records(&dir.path().join("optimize.csv")).remove(0));
    }
    assert_eq!(&rows[0][4], &rows[1][4]);
    assert_eq!(&rows[0][5], &rows[1][5]);
}

#[test]
fn optimize_exhaustive_over_budget() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["optimize", "--algo", "es", "-n", "5", "--d-max", "8"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BudgetExceeded"));
}

#[test]
fn optimize_broadside_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let o = run(
        &["optimize", "--algo", "gsgd", "--theta", "90", "--trace", trace.to_str().unwrap()],
        dir.path(),
    );
    assert!(o.status.success());
    let row = records(&dir.path().join("optimize.csv")).remove(0);
    assert_eq!(&row[2], "GS-GD");
    assert!(row[4].parse::<f64>().unwrap() >= 6.8);
    assert_eq!(&row[7], "0.00000000");
    let steps = records(&trace);
    assert!(!steps.is_empty());
    let g: Vec<f64> = steps.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(g.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn optimize_needs_an_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["optimize"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["optimize", "--algo", "sa"], dir.path()).status.code(), Some(2));
}

#[test]
fn sweep_ulah_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["sweep", "--algorithms", "ulah", "--thetas", "0:90:15", "--formats", "csv"],
        dir.path(),
    );
    assert!(o.status.success());
    let rows = records(&dir.path().join("sweep.csv"));
    assert_eq!(rows.len(), 7 * 3);
    for r in &rows {
        assert!((r[4].parse::<f64>().unwrap() - 5.0).abs() < 1e-9);
    }
    assert!(!dir.path().join("fig3.svg").exists());
}

#[test]
fn sweep_writes_charts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["sweep", "--algorithms", "gsgd,ulah", "--thetas", "0,45,90", "-n", "3"],
        dir.path(),
    );
    assert!(o.status.success());
    let svg = std::fs::read_to_string(dir.path().join("fig3.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
    assert!(dir.path().join("fig4.svg").exists());
}

#[test]
fn sweep_rejects_unknown_algorithm_and_bad_threads() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["sweep", "--algorithms", "foo"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = bin()
        .env("COUPLED_ARRAY_THREADS", "many")
        .args(["reproduce", "table1", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_table1_and_fig2() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["reproduce", "table1"], dir.path()).status.success());
    let rows = records(&dir.path().join("table1.csv"));
    let n: Vec<&str> = rows.iter().map(|r| &r[0]).collect();
    assert_eq!(n, ["2", "3", "4", "5"]);

    assert!(run(&["reproduce", "fig2"], dir.path()).status.success());
    let rows = records(&dir.path().join("fig2.csv"));
    assert!(!rows.is_empty());
    for r in rows.iter().filter(|r| &r[1] == "0.500000000") {
        // half-wavelength spacing decouples the elements, so each pattern carries unit power
        assert_eq!(&r[2], "1.00000000");
    }
}
