use std::path::Path;
use std::process::{Command, Output};

fn lct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lct")).args(args).env_remove("LCT_TOL").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn stdout_table(o: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    assert_eq!(code(o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    table(&String::from_utf8(o.stdout.clone()).unwrap())
}

#[test]
fn gamma_of_base_indicator_is_one_minus_exp() {
    let o = lct(&["gamma", "--symbol", "indicator:0.5", "--k", "0", "--grid", "log:0.01:50:200"]);
    let (header, rows) = stdout_table(&o);
    assert_eq!(header, ["xi", "re", "im", "err_estimate", "cf_re", "cf_im", "abs_dev"]);
    assert_eq!(rows.len(), 200);
    for r in &rows {
        assert!((r[1] - (1.0 - (-r[0]).exp())).abs() < 1e-12, "{r:?}");
        assert!(r[6] < 1e-8);
    }
}

#[test]
fn gamma_of_constant_and_sine() {
    let (_, rows) = stdout_table(&lct(&["gamma", "--symbol", "constant:1", "--k", "7"]));
    assert!(rows.iter().all(|r| (r[1] - 1.0).abs() < 1e-12 && r[2] == 0.0));
    let (header, rows) = stdout_table(&lct(&["gamma", "--symbol", "sine", "--k", "1"]));
    assert_eq!(header.last().unwrap(), "abs_dev");
    assert!(rows.iter().all(|r| r[6] < 1e-8));
    let (header, _) = stdout_table(&lct(&["gamma", "--symbol", "sine", "--k", "2", "--grid", "lin:1:2:3"]));
    assert_eq!(header, ["xi", "re", "im", "err_estimate"]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let o = lct(&["gamma", "--symbol", "osc_exp", "--k", "2", "--output", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(!text.contains('\r') && text.ends_with('\n'));
    assert!(text.lines().nth(1).unwrap().starts_with("1.0000000000000000e-2,"));
    let o1 = lct(&["transfer", "--map", "transfer:1,3"]);
    let o2 = lct(&["transfer", "--map", "transfer:1,3"]);
    assert_eq!(o1.stdout, o2.stdout);
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["gamma", "--symbol", "wavy"][..],
        &["gamma", "--symbol", "indicator:-1"],
        &["gamma", "--symbol", "sine", "--grid", "log:0:1:10"],
        &["gamma", "--symbol", "sine", "--grid", "lin:2:1:10"],
        &["gamma", "--symbol", "sine", "--k", "-1"],
        &["gamma", "--symbol", "sine", "--k", "2", "--method", "closed"],
        &["gamma"],
        &["verify", "--only", "everything"],
        &["transfer", "--map", "nabla:1"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&lct(args)), 2, "{args:?}");
    }
}

#[test]
fn quadrature_failure_exits_3() {
    let o = lct(&["gamma", "--symbol", "sine", "--k", "1", "--grid", "lin:1:2:2", "--tol", "1e-300"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(["gamma", "--symbol", "sine", "--k", "1", "--grid", "lin:1:2:2"])
        .env("LCT_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    // the flag beats the environment
    let o = Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(["gamma", "--symbol", "sine", "--k", "1", "--grid", "lin:1:2:2", "--tol", "1e-10"])
        .env("LCT_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

fn write_signal(path: &Path, f: impl Fn(f64) -> f64, n: usize, fs: f64) {
    let mut s = String::from("t,re\n");
    for i in 0..n {
        let t = i as f64 / fs;
        s.push_str(&format!("{t},{}\n", f(t)));
    }
    std::fs::write(path, s).unwrap();
}

#[test]
fn filter_identity_zero_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let out = dir.path().join("out.csv");
    let tone = |t: f64| (-(t - 8.0) * (t - 8.0) / 4.0).exp() * (2.0 * std::f64::consts::PI * 3.0 * t).cos();
    write_signal(&input, tone, 512, 32.0);
    let run = |symbol: &str| {
        let o = lct(&["filter", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap(), "--symbol", symbol, "--k", "1"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        table(&std::fs::read_to_string(&out).unwrap())
    };
    let (header, rows) = run("constant:1");
    assert_eq!(header, ["t", "re", "im"]);
    // The analytic part keeps the positive frequencies only, so its real
    // part is half the real input.
    let err: f64 = rows.iter().map(|r| (r[1] - 0.5 * tone(r[0])).powi(2)).sum::<f64>().sqrt();
    let norm: f64 = rows.iter().map(|r| (0.5 * tone(r[0])).powi(2)).sum::<f64>().sqrt();
    assert!(err < 1e-3 * norm, "{err} vs {norm}");
    let (_, rows) = run("constant:0");
    assert!(rows.iter().all(|r| r[1] == 0.0 && r[2] == 0.0));

    let missing = dir.path().join("missing.csv");
    assert_eq!(code(&lct(&["filter", "--input", missing.to_str().unwrap(), "--symbol", "sine"])), 4);
    std::fs::write(&input, "t,re\n0,1\n1,x\n").unwrap();
    assert_eq!(code(&lct(&["filter", "--input", input.to_str().unwrap(), "--symbol", "sine"])), 4);
}

#[test]
fn transfer_kernel_and_wick_outputs() {
    let (header, rows) = stdout_table(&lct(&["transfer", "--map", "delta:1", "--grid", "lin:0:1:5"]));
    assert_eq!(header, ["x", "value"]);
    assert_eq!(rows[2], vec![0.5, 0.75]);
    let (header, rows) = stdout_table(&lct(&["transfer", "--map", "nabla:0.5", "--symbol", "osc_exp", "--k", "1", "--grid", "lin:0.1:0.9:3"]));
    assert_eq!(header, ["x", "re", "im"]);
    assert_eq!(rows.len(), 3);
    let (header, rows) = stdout_table(&lct(&["kernel", "--k", "2", "--xi-grid", "lin:1:3:3", "--t-grid", "lin:1:3:3"]));
    assert_eq!(header, ["xi", "t", "re", "im"]);
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().filter(|r| r[0] == r[1]).all(|r| r[2] == 1.0));
    let (header, rows) = stdout_table(&lct(&["wick", "--symbol", "constant:1", "--k", "3", "--grid", "log:0.1:10:4"]));
    assert_eq!(header, ["v", "re", "im"]);
    assert!(rows.iter().all(|r| (r[1] - 1.0).abs() < 1e-8));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# base indicator\nsymbol = indicator:0.5\nk = 3\ngrid = lin:1:2:2\n").unwrap();
    let from_file = lct(&["gamma", "--config", cfg.to_str().unwrap()]);
    let explicit = lct(&["gamma", "--symbol", "indicator:0.5", "--k", "3", "--grid", "lin:1:2:2"]);
    assert_eq!(stdout_table(&from_file), stdout_table(&explicit));
    let overridden = lct(&["gamma", "--config", cfg.to_str().unwrap(), "--k", "0"]);
    let (_, rows) = stdout_table(&overridden);
    assert!((rows[0][1] - (1.0 - (-1f64).exp())).abs() < 1e-12);
    std::fs::write(&cfg, "symbol = sine\nroute = spectral\n").unwrap();
    assert_eq!(code(&lct(&["gamma", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn verify_selection_and_forced_failure() {
    let o = lct(&["verify", "--only", "appendix"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{text}");
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains("13 appendix/"));

    let o = lct(&["verify", "--only", "appendix", "--tolerance", "0"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(text.contains("FAIL 13 appendix/Laguerre identities"), "{text}");
    assert!(text.contains("cumulative ∫ℓ_k² vs quadrature") && text.contains("[FAILED]"));
}
