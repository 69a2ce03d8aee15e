use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn header(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("# {key}=")))
        .unwrap_or_else(|| panic!("no {key} header"))
        .to_string()
}

struct Csv {
    header: String,
    rows: Vec<Vec<String>>,
}

fn read_csv(path: &Path) -> Csv {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    Csv { header, rows }
}

fn column(csv: &Csv, i: usize) -> Vec<f64> {
    csv.rows.iter().map(|r| r[i].parse::<f64>().unwrap()).collect()
}

fn errscan(dir: &TempDir, args: &[&str]) -> Csv {
    let out = dir.path().join("scan.csv");
    let mut full = vec!["errscan"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path_str(&out)]);
    let o = run(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("max rel error"));
    read_csv(&out)
}

#[test]
fn gen_writes_53_coefficients_with_small_tail() {
    let dir = TempDir::new().unwrap();
    for f in ["gamma", "lngamma"] {
        let path = dir.path().join(format!("{f}.tab"));
        let o = run(&["gen", f, "--digits", "30", "--ncoeffs", "53", "--out", path_str(&path)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("53 coefficients"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(header(&text, "function"), f);
        assert_eq!(header(&text, "ncoeffs"), "53");
        assert_eq!(header(&text, "convention"), "half-a0");
        assert_eq!(header(&text, "argmap"), "inverse-z");
        assert_eq!(header(&text, "normalization"), "2-over-m");
        let tail: f64 = header(&text, "tail_bound").parse().unwrap();
        assert!(tail < 1e-30, "{f}: {tail}");
        let coeffs: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(coeffs.len(), 53);
        assert!(coeffs.iter().enumerate().all(|(i, l)| l.starts_with(&format!("{i} +"))
            || l.starts_with(&format!("{i} -"))));
    }
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.tab");
    let b = dir.path().join("b.tab");
    for p in [&a, &b] {
        let o = run(&["gen", "invgamma", "--digits", "16", "--out", path_str(p)]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn gen_rejects_bad_arguments() {
    assert_eq!(run(&["gen", "gamma", "--ncoeffs", "0"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "zeta"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "gamma", "--digits", "100000"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "gamma", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("24.000"), "{}", stdout(&o));

    let o = run(&["eval", "psi0", "1"]);
    assert!(stdout(&o).starts_with("-0.5772156649015328606"), "{}", stdout(&o));

    let o = run(&["eval", "gamma", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("domain"));

    let o = run(&["eval", "gamma", "0.5"]);
    assert!(stdout(&o).starts_with("1.7724538509055160273"), "{}", stdout(&o));

    assert_eq!(run(&["eval", "gamma", "abc"]).status.code(), Some(1));
}

#[test]
fn eval_uses_a_table_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("ln.tab");
    assert!(run(&["gen", "lngamma", "--digits", "18", "--out", path_str(&path)]).status.success());
    let o = run(&["eval", "lngamma", "11", "--table", path_str(&path)]);
    // ln(10!) = ln 3628800
    assert!(stdout(&o).starts_with("15.1044125730755153"), "{}", stdout(&o));
    let o = run(&["eval", "gamma", "3", "--table", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn errscan_two_coefficient_gamma() {
    let dir = TempDir::new().unwrap();
    let csv = errscan(&dir, &["gamma", "--ncoeffs", "2", "--zmin", "1", "--zmax", "100"]);
    assert_eq!(csv.header, "z,approx,reference,rel_error,abs_error");
    let z = column(&csv, 0);
    assert!(z.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(z[0], 1.0);
    assert_eq!(*z.last().unwrap(), 100.0);
    let worst = column(&csv, 3).into_iter().fold(0.0, f64::max);
    assert!(worst < 8e-4, "{worst}");
    for r in &csv.rows {
        assert_eq!(r.len(), 5);
        assert!(r[1].parse::<f64>().is_ok() && r[2].parse::<f64>().is_ok());
    }
}

#[test]
fn errscan_reciprocal_and_log_forms() {
    let dir = TempDir::new().unwrap();
    let inv = errscan(&dir, &["invgamma", "--ncoeffs", "4", "--zmax", "1000", "--points", "100"]);
    let worst = column(&inv, 3).into_iter().fold(0.0, f64::max);
    assert!(worst < 7e-6, "{worst}");

    let ln = errscan(&dir, &["lngamma", "--ncoeffs", "5", "--zmax", "1000", "--points", "100"]);
    let worst = column(&ln, 4).into_iter().fold(0.0, f64::max);
    assert!(worst < 2e-7, "{worst}");
}

#[test]
fn errscan_error_stays_under_tail_bound() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.tab");
    assert!(run(&["gen", "gamma", "--digits", "16", "--out", path_str(&path)]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let tail: f64 = header(&text, "tail_bound").parse().unwrap();
    let csv = errscan(&dir, &["gamma", "--table", path_str(&path), "--zmax", "500", "--points", "60"]);
    let worst = column(&csv, 3).into_iter().fold(0.0, f64::max);
    assert!(worst <= tail + 1e-16, "{worst} vs {tail}");
}

#[test]
fn errscan_reports_parse_errors_with_line() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.tab");
    std::fs::write(
        &path,
        "# function=gamma\n# digits=10\n# ncoeffs=2\n# convention=half-a0\n# argmap=inverse-z\n# normalization=2-over-m\n0 +2.0e0\n1 oops\n",
    )
    .unwrap();
    let o = run(&["errscan", "gamma", "--table", path_str(&path)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 8"), "{}", stderr(&o));

    let o = run(&["errscan", "gamma", "--table", path_str(&dir.path().join("missing.tab"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn errscan_below_one_needs_extend() {
    let dir = TempDir::new().unwrap();
    let o = run(&["errscan", "lngamma", "--digits", "12", "--zmin", "0.5", "--zmax", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let csv = errscan(&dir, &["lngamma", "--digits", "12", "--zmin", "0.5", "--zmax", "4", "--extend", "--points", "20"]);
    assert_eq!(column(&csv, 0)[0], 0.5);
    assert!(column(&csv, 4).into_iter().fold(0.0, f64::max) < 1e-11);
}

#[test]
fn stirling_scan_rows() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("st.csv");
    let o = run(&["stirling", "--zmin", "1", "--zmax", "10", "--points", "10", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = read_csv(&out);
    assert_eq!(csv.header, "z,n_opt,est_digits");
    assert_eq!(csv.rows.len(), 10);
    assert_eq!(csv.rows[0][1], "4");
    let est = column(&csv, 2);
    assert!(est.windows(2).all(|w| w[0] < w[1]));

    let o = run(&["stirling", "--zmin", "5", "--zmax", "40", "--points", "3", "--nscan", "30", "--out", path_str(&out)]);
    assert!(o.status.success());
    let csv = read_csv(&out);
    assert_eq!(csv.rows[2][1], "NA");

    assert_eq!(run(&["stirling", "--zmin", "0.5"]).status.code(), Some(2));
}

#[test]
fn harmonic_examples() {
    let o = run(&["harmonic", "--m", "0", "--n", "5"]);
    assert!(stdout(&o).starts_with("2.28333333333333333"), "{}", stdout(&o));
    let o = run(&["harmonic", "--m", "1", "--n", "2"]);
    assert!(stdout(&o).starts_with("1.0000000000"), "{}", stdout(&o));
    let o = run(&["harmonic", "--m", "0", "--n", "1"]);
    assert!(stdout(&o).starts_with("1.0000000000"), "{}", stdout(&o));
    assert_eq!(run(&["harmonic", "--n", "0"]).status.code(), Some(1));
}

#[test]
fn harmonic_names_the_gen_command_when_table_is_missing() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("psi1.tab");
    let o = run(&["harmonic", "--m", "1", "--n", "4", "--table", path_str(&missing)]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("chebgamma gen psi1"), "{}", stderr(&o));

    let psi0 = dir.path().join("psi0.tab");
    assert!(run(&["gen", "psi0", "--digits", "14", "--out", path_str(&psi0)]).status.success());
    let o = run(&["harmonic", "--m", "1", "--n", "4", "--table", path_str(&psi0)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("chebgamma gen psi1"));

    assert!(run(&["gen", "psi1", "--digits", "14", "--out", path_str(&missing)]).status.success());
    let o = run(&["harmonic", "--m", "1", "--n", "4", "--table", path_str(&missing)]);
    // 1 + 1/4 + 1/9 = 49/36
    assert!(stdout(&o).starts_with("1.3611111111111"), "{}", stdout(&o));
}
