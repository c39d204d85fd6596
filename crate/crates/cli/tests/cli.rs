use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superhirota"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bell_expansions() {
    let o = run(&["bell", "--index", "3x", "--fields", "c*B,d*p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "3*B_x*p_xx*c*d + B_x^3*c^3 + B_xxx*c");
    let o = run(&["bell", "--index", "xx", "--fields", "n,m"]);
    assert_eq!(stdout(&o).trim(), "m_xx + n_x^2");
    let o = run(&["bell", "--index", "t2", "--fields", "n,m"]);
    assert_eq!(stdout(&o).trim(), "n_t2");
    let o = run(&["bell", "--index", "x,theta1"]);
    assert_eq!(stdout(&o).trim(), "D1f*f_x + D1f_x");
    let o = run(&["bell", "--index", "2x", "--fields", "1/2*u,v"]);
    assert_eq!(stdout(&o).trim(), "1/4*u_x^2 + v_xx");
}

#[test]
fn bell_usage_errors() {
    for args in [
        &["bell", "--index", "q"][..],
        &["bell", "--index", "x,theta2"],
        &["bell", "--index", "x", "--fields", "a,b,c"],
        &["bell", "--index", "x", "--fields", "2*f"],
        &["bell", "--index", "x", "--fields", "a+b,c"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn verify_single_case() {
    let o = run(&["verify", "--case", "a1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("a1: PASS"));
    assert!(!stdout(&o).contains("[FAIL]"));
}

#[test]
fn verify_json_reports_a4_solution() {
    let o = run(&["verify", "--case", "a4", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let sol = &v["cases"][0]["extra"]["solution"];
    assert_eq!(sol["alpha"], "2i");
    assert_eq!(sol["beta"], "-2");
    assert_eq!(sol["gamma"], "i/8");
    assert_eq!(sol["delta"], "3i/8");
}

#[test]
fn verify_bell_link_is_seeded() {
    let a = run(&["verify", "--case", "bell-link", "--seed", "11", "--json"]);
    let b = run(&["verify", "--case", "bell-link", "--seed", "11", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"kapa": "1"}"#).unwrap();
    assert_eq!(
        code(&run(&["verify", "--case", "a1", "--config", path(&bad)])),
        2
    );
    fs::write(&bad, "not json").unwrap();
    assert_eq!(
        code(&run(&["verify", "--case", "a1", "--config", path(&bad)])),
        2
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&run(&[
            "verify",
            "--case",
            "a1",
            "--config",
            path(&missing)
        ])),
        2
    );
}

#[test]
fn soliton_csv_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("u11.csv");
    let gp = dir.path().join("u11.gp");
    let args = [
        "soliton",
        "--profile",
        "u11",
        "--x-min",
        "-1",
        "--x-max",
        "1",
        "--samples",
        "3",
        "--times",
        "0",
        "--out",
        path(&csv),
        "--plot-script",
        path(&gp),
    ];
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "x,t,value");
    assert_eq!(lines[2], "0,0,0.8");
    assert_eq!(lines[1].split(',').nth(2), lines[3].split(',').nth(2));
    let script = fs::read_to_string(&gp).unwrap();
    assert!(script.contains(path(&csv)));
    assert_eq!(script.matches("with lines").count(), 1);

    let first = fs::read(&csv).unwrap();
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(fs::read(&csv).unwrap(), first);
}

#[test]
fn soliton_defaults_cover_three_times() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("v21.csv");
    assert_eq!(
        code(&run(&["soliton", "--profile", "v21", "--out", path(&csv)])),
        0
    );
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 801);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("k.json");
    fs::write(&cfg, r#"{"kappa_tilde": "1/2"}"#).unwrap();
    let csv = dir.path().join("u.csv");
    let base = [
        "soliton",
        "--profile",
        "u11",
        "--samples",
        "3",
        "--times",
        "0",
        "--x-min",
        "-1",
        "--x-max",
        "1",
    ];
    let mut args = base.to_vec();
    args.extend(["--out", path(&csv), "--config", path(&cfg)]);
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(
        fs::read_to_string(&csv).unwrap().lines().nth(2),
        Some("0,0,0.5")
    );
    args.extend(["--kappa-tilde", "3/10"]);
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(
        fs::read_to_string(&csv).unwrap().lines().nth(2),
        Some("0,0,0.3")
    );
}

#[test]
fn soliton_errors() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("x.csv");
    let out = path(&csv);
    let bad_grid = [
        "soliton",
        "--profile",
        "u11",
        "--x-min",
        "1",
        "--x-max",
        "0",
        "--out",
        out,
    ];
    assert_eq!(code(&run(&bad_grid)), 2);
    let one_sample = [
        "soliton",
        "--profile",
        "u11",
        "--samples",
        "1",
        "--out",
        out,
    ];
    assert_eq!(code(&run(&one_sample)), 2);
    let unknown = ["soliton", "--profile", "u12", "--out", out];
    assert_eq!(code(&run(&unknown)), 2);
    let degenerate = [
        "soliton",
        "--profile",
        "u22",
        "--kappa-tilde1",
        "1/2",
        "--kappa-tilde2",
        "-1/2",
        "--out",
        out,
    ];
    assert_eq!(code(&run(&degenerate)), 2);
    // a complex wave number makes v complex-valued
    let complex = [
        "soliton",
        "--profile",
        "v11",
        "--kappa",
        "1+i",
        "--samples",
        "5",
        "--out",
        out,
    ];
    let o = run(&complex);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("imaginary"));
}
