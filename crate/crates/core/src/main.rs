use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use huygens_bessel::inequality::{ratio_f, ratio_g, HuygensWeights};
use huygens_bessel::oracle::{default_digits, oracle_eval};
use huygens_bessel::scan::{check_point, fmt_num, run_scan, CheckName, ScanSpec, XGrid};
use huygens_bessel::{
    deriv_i, deriv_j, eval_i, eval_j, first_zero, Error, Evaluation, Family, Order, Result, Scaling,
};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "huygens-bessel", version, about = "Normalized Bessel functions and Turán/Huygens inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate 𝒥ν(x) or ℐν(x)
    Eval(EvalArgs),
    /// First positive zero j(ν,1)
    Zero(ZeroArgs),
    /// Evaluate one inequality at a point or at random points
    Check(CheckArgs),
    /// Evaluate an inequality over a (ν, x) grid and write a CSV report
    Scan(ScanArgs),
    /// Emit (x, Fν(x)) or (x, Gν(x)) as CSV
    Plot(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    J,
    I,
}

impl From<Kind> for Family {
    fn from(k: Kind) -> Self {
        match k {
            Kind::J => Family::J,
            Kind::I => Family::I,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
    nu: Order,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,
    /// Return e^(−|x|)·ℐν(x)
    #[arg(long)]
    scaled: bool,
    /// Evaluate the derivative instead
    #[arg(long, conflicts_with_all = ["scaled", "oracle"])]
    deriv: bool,
    /// Also print the error bound and term count
    #[arg(long)]
    bound: bool,
    /// Print the extended-precision reference value instead
    #[arg(long, conflicts_with = "scaled")]
    oracle: bool,
    /// Oracle digits (default: HUYGENS_BESSEL_DIGITS or 50)
    #[arg(long)]
    digits: Option<u32>,
}

#[derive(Args)]
struct ZeroArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
    nu: Order,
    #[arg(long, default_value_t = 1e-15)]
    tol: f64,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_parser = parse_check)]
    check: CheckName,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
    nu: Order,
    /// Absolute argument
    #[arg(long, allow_hyphen_values = true, required_unless_present = "samples")]
    x: Option<f64>,
    /// Number of uniformly random points instead of --x
    #[arg(long, conflicts_with = "x")]
    samples: Option<usize>,
    /// Sampling range `a:b`; fractions of j(ν,1) for J-family checks
    #[arg(long, value_parser = parse_range)]
    x_range: Option<(f64, f64)>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_check)]
    check: CheckName,
    /// Comma-separated orders, e.g. `-1/2,0,0.5`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_order, value_delimiter = ',', required = true)]
    nu: Vec<Order>,
    /// Linear grid `a:b:n`
    #[arg(long, value_parser = parse_lin, conflicts_with = "x_log")]
    x_lin: Option<XGrid>,
    /// Log grid `a:b:n`
    #[arg(long, value_parser = parse_log)]
    x_log: Option<XGrid>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Offset added to p
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    dp: f64,
    /// Offset added to q
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    dq: f64,
    /// Consecutive-difference tolerance for monotonicity checks
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 30)]
    n_max: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Include wall time in the metadata
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Func {
    F,
    G,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    func: Func,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
    nu: Order,
    /// Linear grid `a:b:n`; fractions of j(ν,1) for F
    #[arg(long, value_parser = parse_lin)]
    x_lin: Option<XGrid>,
}

fn parse_order(s: &str) -> std::result::Result<Order, String> {
    let s = s.trim();
    let res = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|e| format!("bad numerator in {s}: {e}"))?;
            let q: i64 = q.trim().parse().map_err(|e| format!("bad denominator in {s}: {e}"))?;
            Order::from_ratio(p, q)
        }
        None => Order::new(s.parse().map_err(|e| format!("bad order {s}: {e}"))?),
    };
    res.map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> std::result::Result<CheckName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s}"))?;
    let a = a.parse().map_err(|e| format!("{a}: {e}"))?;
    let b = b.parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((a, b))
}

fn parse_grid(s: &str) -> std::result::Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("expected a:b:n, got {s}"));
    };
    let a = a.parse().map_err(|e| format!("{a}: {e}"))?;
    let b = b.parse().map_err(|e| format!("{b}: {e}"))?;
    let n = n.parse().map_err(|e| format!("{n}: {e}"))?;
    Ok((a, b, n))
}

fn parse_lin(s: &str) -> std::result::Result<XGrid, String> {
    parse_grid(s).map(|(lo, hi, count)| XGrid::Linear { lo, hi, count })
}

fn parse_log(s: &str) -> std::result::Result<XGrid, String> {
    parse_grid(s).map(|(lo, hi, count)| XGrid::Log { lo, hi, count })
}

/// Library errors exit with 2; `Ok(false)` means violations were found.
fn run(cli: Cli) -> Result<bool> {
    let mut stdout = std::io::stdout().lock();
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    match cli.command {
        Command::Eval(a) => {
            if a.oracle {
                let digits = a.digits.unwrap_or_else(default_digits);
                let v = oracle_eval(a.kind.into(), &a.nu, a.x, digits)?;
                writeln!(stdout, "{v}").map_err(io)?;
                return Ok(true);
            }
            let ev: Evaluation = match (a.kind, a.deriv) {
                (Kind::J, false) => eval_j(&a.nu, a.x, a.tol)?,
                (Kind::J, true) => deriv_j(&a.nu, a.x, a.tol)?,
                (Kind::I, false) => {
                    let scaling = if a.scaled { Scaling::ExpScaled } else { Scaling::Unscaled };
                    eval_i(&a.nu, a.x, a.tol, scaling)?
                }
                (Kind::I, true) => deriv_i(&a.nu, a.x, a.tol)?,
            };
            if a.bound {
                writeln!(stdout, "{} {:e} {}", ev.value, ev.abs_error_bound, ev.terms_used).map_err(io)?;
            } else {
                writeln!(stdout, "{}", ev.value).map_err(io)?;
            }
            Ok(true)
        }
        Command::Zero(a) => {
            let z = first_zero(&a.nu, a.tol)?;
            let decimals = (-a.tol.log10()).ceil().clamp(0.0, 17.0) as usize;
            writeln!(stdout, "{:.*}", decimals, z.location).map_err(io)?;
            Ok(true)
        }
        Command::Check(a) => {
            let weights = match (a.p, a.q) {
                (None, None) => None,
                (p, q) => {
                    let sharp = match a.check.family() {
                        Some(Family::I) => HuygensWeights::sharp_i(&a.nu),
                        _ => HuygensWeights::sharp_j(&a.nu),
                    };
                    Some(HuygensWeights::new(p.unwrap_or(sharp.p), q.unwrap_or(sharp.q)))
                }
            };
            let xs = match (a.x, a.samples) {
                (Some(x), _) => vec![x],
                (None, Some(n)) => sample_points(&a, n)?,
                (None, None) => unreachable!("clap requires --x or --samples"),
            };
            writeln!(stdout, "check,nu,x,margin,satisfied").map_err(io)?;
            let mut ok = true;
            for x in xs {
                for r in check_point(a.check, &a.nu, weights, x)? {
                    if let Some(e) = &r.error {
                        eprintln!("x = {}: {e}", fmt_num(x));
                    }
                    ok &= r.satisfied;
                    writeln!(stdout, "{}", r.csv_row()).map_err(io)?;
                }
            }
            Ok(ok)
        }
        Command::Scan(a) => {
            let grid = a.x_lin.or(a.x_log).unwrap_or(XGrid::Search);
            let mut spec = ScanSpec::new(a.check, a.nu, grid);
            if a.p.is_some() || a.q.is_some() {
                let order = spec.nu_grid[0];
                let sharp = match a.check.family() {
                    Some(Family::I) => HuygensWeights::sharp_i(&order),
                    _ => HuygensWeights::sharp_j(&order),
                };
                spec.weights = Some(HuygensWeights::new(a.p.unwrap_or(sharp.p), a.q.unwrap_or(sharp.q)));
            }
            spec.weight_offset = (a.dp, a.dq);
            if let Some(tol) = a.tol {
                spec.tol = tol;
            }
            spec.n_max = a.n_max;
            let report = run_scan(&spec)?;
            let csv = report.to_csv(a.timing);
            match a.out {
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?,
                None => stdout.write_all(csv.as_bytes()).map_err(io)?,
            }
            if report.violations > 0 {
                eprintln!("{} violation(s) in {} records", report.violations, report.records.len());
            }
            Ok(report.violations == 0)
        }
        Command::Plot(a) => {
            let (grid, scale) = match a.func {
                Func::F => {
                    let j = first_zero(&a.nu, 1e-14)?.location;
                    (a.x_lin.unwrap_or(XGrid::Linear { lo: 0.005, hi: 0.995, count: 200 }), j)
                }
                Func::G => (a.x_lin.unwrap_or(XGrid::Linear { lo: 0.25, hi: 50.0, count: 200 }), 1.0),
            };
            let XGrid::Linear { lo, hi, count } = grid else { unreachable!("plot grids are linear") };
            let name = match a.func {
                Func::F => "F",
                Func::G => "G",
            };
            writeln!(stdout, "x,{name}").map_err(io)?;
            for i in 0..count {
                let t = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
                let x = (lo + (hi - lo) * t) * scale;
                let v = match a.func {
                    Func::F => ratio_f(&a.nu, x)?,
                    Func::G => ratio_g(&a.nu, x)?,
                };
                writeln!(stdout, "{},{}", fmt_num(x), fmt_num(v)).map_err(io)?;
            }
            Ok(true)
        }
    }
}

fn sample_points(a: &CheckArgs, n: usize) -> Result<Vec<f64>> {
    let family = a.check.family().unwrap_or(Family::I);
    let (lo, hi) = a.x_range.unwrap_or(match family {
        Family::J => (0.0, 1.0),
        Family::I => (0.0, 50.0),
    });
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("empty range {lo}:{hi}")));
    }
    let scale = match family {
        Family::J => first_zero(&a.nu, 1e-14)?.location,
        Family::I => 1.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    Ok((0..n)
        .map(|_| {
            // open interval: reject the endpoints
            loop {
                let x: f64 = rng.gen_range(lo..hi);
                if x > lo {
                    return x * scale;
                }
            }
        })
        .collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
