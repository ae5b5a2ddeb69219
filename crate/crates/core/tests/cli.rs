use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_huygens-bessel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_cosine() {
    let o = run(&["eval", "--kind", "j", "--nu", "-0.5", "--x", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.5403023058681398\n");
}

#[test]
fn eval_accepts_rational_order_and_bound() {
    let o = run(&["eval", "--kind", "i", "--nu", "1/2", "--x", "1", "--bound"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.1752011936438014 "));
}

#[test]
fn eval_oracle_honours_digits_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_huygens-bessel"))
        .args(["eval", "--kind", "j", "--nu", "-1/2", "--x", "1", "--oracle"])
        .env("HUYGENS_BESSEL_DIGITS", "35")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mantissa = s.trim().split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 35);
    assert!(s.starts_with("5.40302305868139717400936607442976"));
}

#[test]
fn zero_prints_half_pi() {
    let o = run(&["zero", "--nu", "-0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1.570796326794897\n");
}

#[test]
fn scan_theorem2_exits_zero() {
    let o = run(&["scan", "--check", "theorem2", "--nu", "0.5", "--x-log", "0.01:100:25"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let body: Vec<&str> = s.lines().skip_while(|l| l.starts_with('#')).collect();
    assert_eq!(body[0], "check,nu,x,margin,satisfied");
    assert_eq!(body.len(), 26);
    assert!(!s.contains('\r'));
}

#[test]
fn scan_with_violations_exits_one() {
    let o = run(&["scan", "--check", "sharpness-c", "--nu", "-1/2", "--dp", "-1e-3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",false"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--kind", "j", "--nu", "-2", "--x", "1"][..],
        &["scan", "--check", "no-such-check", "--nu", "0"][..],
        &["frobnicate"][..],
        &["zero", "--nu", "0", "--tol", "1e-30"][..],
        &["scan", "--check", "turan-j", "--nu", "0", "--x-lin", "0.1:1.5:3"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn scan_out_file_and_timing() {
    let dir = std::env::temp_dir().join(format!("huygens-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.csv");
    let o = run(&["scan", "--check", "turan-i", "--nu", "0,-1/2", "--x-log", "0.01:100:10", "--out", path.to_str().unwrap(), "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.contains("# wall_time="));
    assert_eq!(csv.lines().filter(|l| l.starts_with("turan-i")).count(), 20);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn check_samples_are_seeded() {
    let args = ["check", "--check", "theorem1", "--nu", "-0.5", "--samples", "5", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 6);
}

#[test]
fn plot_emits_series() {
    let o = run(&["plot", "--func", "f", "--nu", "-0.5", "--x-lin", "0.1:0.9:5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "x,F");
    assert_eq!(lines.len(), 6);
}
