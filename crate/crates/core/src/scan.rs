//! Grid scans over `(ν, x)` producing deterministic CSV reports.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inequality::{
    huygens_i_weighted, huygens_j_weighted, huygens_theorem1, huygens_theorem2, origin_limit,
    ratio_f, ratio_g_excess, sharpness_points, turan_i, turan_i_coefficients, turan_i_coefficients_approx, turan_j,
    HuygensWeights, InequalityCheck, MONOTONE_TOL,
};
use crate::specfun::{closed_form, Family, Order};
use crate::zeros::first_zero;

/// Bracket tolerance for `j(ν,1)` when J-family grids are scaled.
const GRID_ZERO_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckName {
    TuranJ,
    TuranI,
    TuranICoeffs,
    HuygensJWeighted,
    HuygensIWeighted,
    Theorem1,
    Theorem2,
    RatioFMonotone,
    RatioGMonotone,
    SharpnessC,
    SharpnessD,
    Remark3,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::TuranJ,
        CheckName::TuranI,
        CheckName::TuranICoeffs,
        CheckName::HuygensJWeighted,
        CheckName::HuygensIWeighted,
        CheckName::Theorem1,
        CheckName::Theorem2,
        CheckName::RatioFMonotone,
        CheckName::RatioGMonotone,
        CheckName::SharpnessC,
        CheckName::SharpnessD,
        CheckName::Remark3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::TuranJ => "turan-j",
            CheckName::TuranI => "turan-i",
            CheckName::TuranICoeffs => "turan-i-coeffs",
            CheckName::HuygensJWeighted => "huygens-j-weighted",
            CheckName::HuygensIWeighted => "huygens-i-weighted",
            CheckName::Theorem1 => "theorem1",
            CheckName::Theorem2 => "theorem2",
            CheckName::RatioFMonotone => "ratio-f-monotone",
            CheckName::RatioGMonotone => "ratio-g-monotone",
            CheckName::SharpnessC => "sharpness-c",
            CheckName::SharpnessD => "sharpness-d",
            CheckName::Remark3 => "remark3",
        }
    }

    /// The family whose domain the x grid lives on; `None` for the
    /// coefficient check, which has no x grid.
    pub fn family(self) -> Option<Family> {
        match self {
            CheckName::TuranJ
            | CheckName::HuygensJWeighted
            | CheckName::Theorem1
            | CheckName::RatioFMonotone
            | CheckName::SharpnessC => Some(Family::J),
            CheckName::TuranICoeffs => None,
            _ => Some(Family::I),
        }
    }

    /// Default weights: the sharp thresholds.
    fn default_weights(self, order: &Order) -> Option<HuygensWeights> {
        match self {
            CheckName::HuygensJWeighted | CheckName::SharpnessC => Some(HuygensWeights::sharp_j(order)),
            CheckName::HuygensIWeighted | CheckName::SharpnessD => Some(HuygensWeights::sharp_i(order)),
            _ => None,
        }
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl std::fmt::Display for CheckName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// x grid. For J-family checks the bounds are fractions of `j(ν,1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XGrid {
    /// `count` evenly spaced points from `lo` to `hi` inclusive.
    Linear { lo: f64, hi: f64, count: usize },
    /// `count` log-spaced points from `lo` to `hi` inclusive.
    Log { lo: f64, hi: f64, count: usize },
    /// The sharpness search points of the family.
    Search,
}

impl XGrid {
    fn points(&self, scale: f64) -> Vec<f64> {
        let (lo, hi, count, log) = match *self {
            XGrid::Linear { lo, hi, count } => (lo, hi, count, false),
            XGrid::Log { lo, hi, count } => (lo, hi, count, true),
            XGrid::Search => return Vec::new(),
        };
        (0..count)
            .map(|i| {
                // endpoints are exact
                let x = if i == 0 {
                    lo
                } else if i + 1 == count {
                    hi
                } else {
                    let t = i as f64 / (count - 1) as f64;
                    if log {
                        10f64.powf(lo.log10() + (hi.log10() - lo.log10()) * t)
                    } else {
                        lo + (hi - lo) * t
                    }
                };
                x * scale
            })
            .collect()
    }
}

impl std::fmt::Display for XGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            XGrid::Linear { lo, hi, count } => write!(f, "lin:{lo}:{hi}:{count}"),
            XGrid::Log { lo, hi, count } => write!(f, "log:{lo}:{hi}:{count}"),
            XGrid::Search => f.write_str("search"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSpec {
    pub check: CheckName,
    pub nu_grid: Vec<Order>,
    pub x_grid: XGrid,
    /// Weights for the weighted and sharpness checks; the sharp thresholds
    /// when absent.
    pub weights: Option<HuygensWeights>,
    /// Added to the weights (explicit or sharp) for the sharpness checks.
    pub weight_offset: (f64, f64),
    /// Consecutive-difference tolerance of the monotonicity checks.
    pub tol: f64,
    /// Largest coefficient index for `turan-i-coeffs`.
    pub n_max: usize,
}

impl ScanSpec {
    pub fn new(check: CheckName, nu_grid: Vec<Order>, x_grid: XGrid) -> Self {
        Self { check, nu_grid, x_grid, weights: None, weight_offset: (0.0, 0.0), tol: MONOTONE_TOL, n_max: 30 }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.nu_grid.is_empty() {
            return bad("empty nu grid".into());
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return bad(format!("tolerance {} must be finite and nonnegative", self.tol));
        }
        let family = self.check.family();
        if let XGrid::Linear { lo, hi, count } | XGrid::Log { lo, hi, count } = self.x_grid {
            if count == 0 {
                return bad("empty x grid".into());
            }
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return bad(format!("x bounds {lo}:{hi} must be finite and ordered"));
            }
            if matches!(self.x_grid, XGrid::Log { .. }) && lo <= 0.0 {
                return bad(format!("log grid needs positive bounds, got {lo}"));
            }
            if family == Some(Family::J) && !(lo > 0.0 && hi < 1.0) {
                return bad(format!("J-family bounds are fractions of j(nu,1) and must lie in (0,1), got {lo}:{hi}"));
            }
        }
        Ok(())
    }

    fn weights_for(&self, order: &Order) -> Option<HuygensWeights> {
        let base = self.weights.or_else(|| self.check.default_weights(order))?;
        Some(base.offset(self.weight_offset.0, self.weight_offset.1))
    }
}

/// One row of a report. `error` is set when the point could not be evaluated;
/// such rows count as violations.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub check: String,
    pub nu: Order,
    pub x: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub within_hypothesis: bool,
    pub error: Option<String>,
}

impl ScanRecord {
    /// `check,nu,x,margin,satisfied` without line ending.
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.check, fmt_num(self.nu.nu()), fmt_num(self.x), fmt_num(self.margin), self.satisfied)
    }

    fn from_check(c: InequalityCheck) -> Self {
        Self {
            check: c.name,
            nu: c.nu,
            x: c.x,
            margin: c.margin,
            satisfied: c.satisfied,
            within_hypothesis: c.within_hypothesis,
            error: None,
        }
    }

    fn from_error(check: CheckName, nu: Order, x: f64, e: Error) -> Self {
        Self {
            check: check.as_str().to_string(),
            nu,
            x,
            margin: f64::NAN,
            satisfied: false,
            within_hypothesis: true,
            error: Some(e.to_string()),
        }
    }

    fn from_margin(check: &str, nu: Order, x: f64, margin: f64) -> Self {
        Self::from_check(InequalityCheck { name: check.into(), nu, x, margin, satisfied: margin > 0.0, within_hypothesis: true })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub spec: ScanSpec,
    pub records: Vec<ScanRecord>,
    /// Smallest margin among evaluated rows and its row index.
    pub min_margin: Option<(f64, usize)>,
    pub violations: usize,
    pub wall_time: Duration,
}

/// Report number format: 17 significant digits in exponent notation.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:.16e}")
    }
}

impl ScanReport {
    /// CSV with `#` metadata lines before the header. Wall time is written
    /// only when `include_timing` is set, so reports are otherwise
    /// byte-identical across runs.
    pub fn to_csv(&self, include_timing: bool) -> String {
        let mut out = String::new();
        let spec = &self.spec;
        let nus: Vec<String> = spec.nu_grid.iter().map(|o| o.to_string()).collect();
        let _ = writeln!(out, "# check={}", spec.check);
        let _ = writeln!(out, "# nu={}", nus.join(";"));
        match spec.check {
            CheckName::TuranICoeffs => {
                let _ = writeln!(out, "# n_max={}", spec.n_max);
            }
            CheckName::RatioFMonotone | CheckName::RatioGMonotone => {
                let _ = writeln!(out, "# x={} tol={}", spec.x_grid, fmt_num(spec.tol));
            }
            _ => {
                let _ = writeln!(out, "# x={}", spec.x_grid);
            }
        }
        if let Some(w) = spec.weights {
            let _ = writeln!(out, "# weights=p:{},q:{}", fmt_num(w.p), fmt_num(w.q));
        }
        if spec.weight_offset != (0.0, 0.0) {
            let _ = writeln!(out, "# offset=dp:{},dq:{}", fmt_num(spec.weight_offset.0), fmt_num(spec.weight_offset.1));
        }
        let _ = writeln!(out, "# records={} violations={}", self.records.len(), self.violations);
        if let Some((m, i)) = self.min_margin {
            let r = &self.records[i];
            let _ = writeln!(out, "# min_margin={} nu={} x={}", fmt_num(m), fmt_num(r.nu.nu()), fmt_num(r.x));
        }
        for (i, r) in self.records.iter().enumerate() {
            if let Some(e) = &r.error {
                let _ = writeln!(out, "# error row={i}: {e}");
            }
        }
        if include_timing {
            let _ = writeln!(out, "# wall_time={:.6}s", self.wall_time.as_secs_f64());
        }
        out.push_str("check,nu,x,margin,satisfied\n");
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }
}

fn x_points(spec: &ScanSpec, order: &Order, family: Family) -> Result<Vec<f64>> {
    if spec.x_grid == XGrid::Search {
        return sharpness_points(family, order);
    }
    let scale = match family {
        Family::J => first_zero(order, GRID_ZERO_TOL)?.location,
        Family::I => 1.0,
    };
    Ok(spec.x_grid.points(scale))
}

fn weighted(check: CheckName, family: Family, order: &Order, w: HuygensWeights, x: f64) -> Vec<ScanRecord> {
    let res = match family {
        Family::J => huygens_j_weighted(order, w, x),
        Family::I => huygens_i_weighted(order, w, x),
    };
    match res {
        Ok((l, r)) => vec![ScanRecord::from_check(l), ScanRecord::from_check(r)],
        Err(e) => vec![ScanRecord::from_error(check, *order, x, e)],
    }
}

/// `9 − (sinh x/x)(−6 + 5x³/(x cosh x − sinh x))`, with the cancelling
/// denominator taken from the stable closed form of ℐ₃/₂.
fn remark3_margin(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::DomainViolation(format!("x = {x} must be positive and finite")));
    }
    let i32 = closed_form(Family::I, &Order::from_ratio(3, 2)?, x)?;
    let sinhc = closed_form(Family::I, &Order::from_ratio(1, 2)?, x)?;
    // x cosh x − sinh x = x³ℐ₃/₂(x)/3
    Ok(9.0 - sinhc * (-6.0 + 15.0 / i32))
}

fn point_records(spec: &ScanSpec, order: &Order, x: f64) -> Vec<ScanRecord> {
    let check = spec.check;
    let single = |r: Result<InequalityCheck>| match r {
        Ok(c) => vec![ScanRecord::from_check(c)],
        Err(e) => vec![ScanRecord::from_error(check, *order, x, e)],
    };
    match check {
        CheckName::TuranJ => single(turan_j(order, x)),
        CheckName::TuranI => single(turan_i(order, x)),
        CheckName::Theorem1 => single(huygens_theorem1(order, x)),
        CheckName::Theorem2 => single(huygens_theorem2(order, x)),
        CheckName::HuygensJWeighted | CheckName::SharpnessC => {
            let w = spec.weights_for(order).expect("weighted checks have default weights");
            weighted(check, Family::J, order, w, x)
        }
        CheckName::HuygensIWeighted | CheckName::SharpnessD => {
            let w = spec.weights_for(order).expect("weighted checks have default weights");
            weighted(check, Family::I, order, w, x)
        }
        CheckName::Remark3 => match remark3_margin(x) {
            Ok(m) => vec![ScanRecord::from_margin("remark3", *order, x, m)],
            Err(e) => vec![ScanRecord::from_error(check, *order, x, e)],
        },
        CheckName::TuranICoeffs | CheckName::RatioFMonotone | CheckName::RatioGMonotone => {
            unreachable!("handled per order")
        }
    }
}

/// Evaluates a pointwise check at one absolute `x`. Monotonicity and
/// coefficient checks need a grid and are rejected.
pub fn check_point(check: CheckName, order: &Order, weights: Option<HuygensWeights>, x: f64) -> Result<Vec<ScanRecord>> {
    if matches!(check, CheckName::TuranICoeffs | CheckName::RatioFMonotone | CheckName::RatioGMonotone) {
        return Err(Error::InvalidArgument(format!("{check} needs a grid; use scan")));
    }
    let mut spec = ScanSpec::new(check, vec![*order], XGrid::Search);
    spec.weights = weights;
    Ok(point_records(&spec, order, x))
}

/// Consecutive-difference records; the first point is compared against the
/// limit at the origin.
fn monotone_records(spec: &ScanSpec, order: &Order, xs: &[f64]) -> Vec<ScanRecord> {
    let check = spec.check;
    let values: Vec<Result<f64>> = xs
        .par_iter()
        .map(|&x| match check {
            CheckName::RatioFMonotone => ratio_f(order, x),
            _ => ratio_g_excess(order, x),
        })
        .collect();
    let mut prev = Some(match check {
        CheckName::RatioFMonotone => origin_limit(order),
        _ => 1.0 / (order.nu() + 1.0),
    });
    xs.iter()
        .zip(values)
        .map(|(&x, v)| match v {
            Ok(v) => {
                let diff = match check {
                    // Fν nondecreasing
                    CheckName::RatioFMonotone => prev.map(|p| v - p),
                    // Gν − 1 nonincreasing
                    _ => prev.map(|p| p - v),
                };
                prev = Some(v);
                let margin = diff.map_or(f64::NAN, |d| d + spec.tol);
                ScanRecord::from_margin(check.as_str(), *order, x, margin)
            }
            Err(e) => {
                prev = None;
                ScanRecord::from_error(check, *order, x, e)
            }
        })
        .collect()
}

fn coefficient_records(spec: &ScanSpec, order: &Order) -> Vec<ScanRecord> {
    let check = CheckName::TuranICoeffs;
    if order.as_rational().is_some() {
        return match turan_i_coefficients(order, spec.n_max) {
            Ok(seq) => seq
                .values
                .iter()
                .enumerate()
                .map(|(n, v)| {
                    let positive = v > &num_rational::BigRational::from_integer(0.into());
                    let margin = rational_to_f64(v);
                    let mut r = ScanRecord::from_margin(check.as_str(), *order, n as f64, margin);
                    r.satisfied = positive;
                    r
                })
                .collect(),
            Err(e) => vec![ScanRecord::from_error(check, *order, 0.0, e)],
        };
    }
    match turan_i_coefficients_approx(order, spec.n_max) {
        Ok(cs) => cs
            .iter()
            .enumerate()
            .map(|(n, c)| ScanRecord::from_margin("turan-i-coeffs/approx", *order, n as f64, c.value - c.error_bound))
            .collect(),
        Err(e) => vec![ScanRecord::from_error(check, *order, 0.0, e)],
    }
}

fn rational_to_f64(v: &num_rational::BigRational) -> f64 {
    // numerator and denominator may each overflow f64; scale by powers of two
    use num_traits::{Signed, ToPrimitive};
    let (n, d) = (v.numer().abs(), v.denom().clone());
    let shift = n.bits() as i64 - d.bits() as i64;
    let (n, d) = if shift > 0 { (n, d << shift as usize) } else { (n << (-shift) as usize, d) };
    // n/d in [1/2, 2); keep 64 extra bits
    let q = ((n << 64usize) / d).to_f64().unwrap_or(f64::NAN);
    let mag = q * 2f64.powi(shift as i32 - 64);
    if v.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Evaluates the scan at every grid point, ν outer and x inner.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanReport> {
    spec.validate()?;
    let start = Instant::now();
    let per_order: Vec<Vec<ScanRecord>> = spec
        .nu_grid
        .par_iter()
        .map(|order| -> Vec<ScanRecord> {
            let Some(family) = spec.check.family() else {
                return coefficient_records(spec, order);
            };
            let xs = match x_points(spec, order, family) {
                Ok(xs) => xs,
                Err(e) => return vec![ScanRecord::from_error(spec.check, *order, f64::NAN, e)],
            };
            match spec.check {
                CheckName::RatioFMonotone | CheckName::RatioGMonotone => monotone_records(spec, order, &xs),
                _ => xs.par_iter().flat_map_iter(|&x| point_records(spec, order, x)).collect(),
            }
        })
        .collect();
    let records: Vec<ScanRecord> = per_order.into_iter().flatten().collect();
    let violations = records.iter().filter(|r| !r.satisfied).count();
    let min_margin = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.error.is_none() && !r.margin.is_nan())
        .min_by(|a, b| a.1.margin.total_cmp(&b.1.margin))
        .map(|(i, r)| (r.margin, i));
    Ok(ScanReport { spec: spec.clone(), records, min_margin, violations, wall_time: start.elapsed() })
}
