//! Normalized Bessel functions of the first kind.
//!
//! ```text
//! 𝒥ν(x) = Σ (−x²/4)ⁿ / ((ν+1)ₙ n!)        ℐν(x) = Σ (x²/4)ⁿ / ((ν+1)ₙ n!)
//! ```
//!
//! Both are even in `x` and equal 1 at the origin. Terms are generated by the
//! ratio recurrence `tₙ₊₁ = tₙ · (∓x²/4) / ((n+1)(ν+n+1))` and accumulated in
//! double-double arithmetic, so the alternating series for 𝒥ν keeps full f64
//! accuracy through the cancellation at moderate `x`.
//!
//! Tolerances are mixed absolute/relative: an evaluation succeeds when its
//! error bound is at most `tol · max(1, |value|)`. The bound covers series
//! truncation, accumulated double-double rounding and the final rounding to
//! f64.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dd::{DoubleDouble, DD_OP_ERROR};
use crate::error::{Error, Result};

/// Largest denominator tried when recovering an exact rational from an f64 order.
const MAX_RECOVERED_DENOMINATOR: i64 = 4096;

/// Above this argument the unscaled ℐν may leave the f64 range.
const OVERFLOW_LOG_LIMIT: f64 = 705.0;

/// A Bessel order `ν > −1`.
///
/// An order built with [`Order::from_ratio`] remembers its exact value, which
/// the exact coefficient routines in [`crate::inequality`] require.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Order {
    nu: f64,
    exact: Option<(i64, i64)>,
}

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= -1.0 {
            return Err(Error::InvalidOrder(nu));
        }
        Ok(Self { nu, exact: None })
    }

    /// The order `num/den`, kept exact.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let (num, den) = (num / g, den / g);
        let nu = num as f64 / den as f64;
        if num <= -den {
            return Err(Error::InvalidOrder(nu));
        }
        Ok(Self { nu, exact: Some((num, den)) })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// The order `ν + k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            nu: self.nu + k as f64,
            exact: self.exact.map(|(p, q)| (p + k as i64 * q, q)),
        }
    }

    /// The exact value of ν, if it is known or is an f64 that equals a
    /// rational with denominator at most 4096.
    pub fn as_rational(&self) -> Option<BigRational> {
        if let Some((p, q)) = self.exact {
            return Some(BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
        (1..=MAX_RECOVERED_DENOMINATOR).find_map(|q| {
            let p = (self.nu * q as f64).round();
            if p.abs() < 1e15 && p / q as f64 == self.nu {
                Some(BigRational::new(BigInt::from(p as i64), BigInt::from(q)))
            } else {
                None
            }
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.exact {
            Some((p, 1)) => write!(f, "{p}"),
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.nu),
        }
    }
}

/// Which normalized family: 𝒥ν (oscillating) or ℐν (modified, growing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    J,
    I,
}

/// How a stored value relates to the function value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scaling {
    Unscaled,
    /// The stored value is `e^(−x)·ℐν(x)`.
    ExpScaled,
}

/// A function value together with a bound on its distance from the true
/// (possibly scaled) value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub abs_error_bound: f64,
    pub scaling: Scaling,
    pub terms_used: usize,
}

impl Evaluation {
    fn exact_one(scaling: Scaling) -> Self {
        Self { value: 1.0, abs_error_bound: 0.0, scaling, terms_used: 1 }
    }
}

/// Evaluation knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    /// Arguments above this use the asymptotic expansion for exp-scaled ℐν.
    pub x_switch: f64,
    /// Hard cap on series terms; exceeding it is an error.
    pub max_terms: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { x_switch: 30.0, max_terms: 10_000 }
    }
}

/// Result of summing a normalized series.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SeriesSum {
    /// Σₙ₌₁ tₙ, i.e. value − 1.
    pub tail: DoubleDouble,
    pub truncation: f64,
    pub rounding: f64,
    pub terms: usize,
}

impl SeriesSum {
    pub fn value(&self) -> DoubleDouble {
        DoubleDouble::ONE + self.tail
    }
}

/// Sums the series until `done(truncation_bound, value, tail)` accepts.
///
/// The truncation bound is only offered once it is valid: for 𝒥 after term
/// magnitudes start decreasing (alternating-series bound), for ℐ once the
/// geometric ratio `x²/(4(N+1)(ν+N+2))` drops below one.
pub(crate) fn sum_series(
    family: Family,
    nu: f64,
    x: f64,
    max_terms: usize,
    done: impl Fn(f64, f64, f64) -> bool,
) -> Result<SeriesSum> {
    let mut z = DoubleDouble::prod_f64(x, x).scale(0.25);
    if family == Family::J {
        z = -z;
    }
    let x2 = x * x;
    let mut term = DoubleDouble::ONE;
    let mut tail = DoubleDouble::ZERO;
    let mut abs_sum = 1.0;
    // index of the last included term
    let mut n = 0usize;
    loop {
        let k = (n + 1) as f64;
        let denom = DoubleDouble::from_f64(k) * DoubleDouble::sum_f64(nu, k);
        let next = term * z / denom;
        if !next.hi.is_finite() {
            return Err(Error::OverflowRisk(x));
        }
        let truncation = match family {
            Family::J => (next.hi.abs() < term.hi.abs()).then(|| next.hi.abs() * (1.0 + 1e-15)),
            Family::I => {
                let q = x2 / (4.0 * k * (nu + k + 1.0));
                (q < 1.0).then(|| next.hi.abs() / (1.0 - q) * (1.0 + 1e-15))
            }
        };
        if let Some(bound) = truncation {
            let value = (DoubleDouble::ONE + tail).to_f64();
            if done(bound, value, tail.to_f64()) {
                let ops = 8.0 * (n as f64 + 2.0);
                return Ok(SeriesSum {
                    tail,
                    truncation: bound,
                    rounding: abs_sum * ops * DD_OP_ERROR,
                    terms: n + 1,
                });
            }
        }
        tail = tail + next;
        abs_sum += next.hi.abs();
        term = next;
        n += 1;
        if n + 1 > max_terms {
            return Err(Error::ToleranceUnreachable(format!(
                "series did not converge within {max_terms} terms at x = {x}"
            )));
        }
    }
}

fn half_ulp(v: f64) -> f64 {
    0.5 * f64::EPSILON * v.abs() + f64::from_bits(1)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("x = {x} is not finite")))
    }
}

fn within(bound: f64, value: f64, tol: f64, what: &str) -> Result<()> {
    if bound <= tol * value.abs().max(1.0) {
        Ok(())
    } else {
        Err(Error::ToleranceUnreachable(format!(
            "{what}: error bound {bound:e} exceeds tolerance {tol:e} at value {value:e}"
        )))
    }
}

fn series_eval(family: Family, order: &Order, x: f64, tol: f64, cfg: &EvalConfig) -> Result<Evaluation> {
    let sum = sum_series(family, order.nu, x, cfg.max_terms, |trunc, value, _| {
        trunc <= (0.25 * tol * value.abs().max(1.0)).min(0.01 * f64::EPSILON * value.abs())
    })?;
    let value = sum.value().to_f64();
    let bound = sum.truncation + sum.rounding + half_ulp(value);
    Ok(Evaluation { value, abs_error_bound: bound, scaling: Scaling::Unscaled, terms_used: sum.terms })
}

/// 𝒥ν(x) with the default configuration.
pub fn eval_j(order: &Order, x: f64, tol: f64) -> Result<Evaluation> {
    eval_j_with(order, x, tol, &EvalConfig::default())
}

pub fn eval_j_with(order: &Order, x: f64, tol: f64, cfg: &EvalConfig) -> Result<Evaluation> {
    check_tol(tol)?;
    check_x(x)?;
    let x = x.abs();
    if x == 0.0 {
        return Ok(Evaluation::exact_one(Scaling::Unscaled));
    }
    let ev = series_eval(Family::J, order, x, tol, cfg)?;
    within(ev.abs_error_bound, ev.value, tol, "eval_j")?;
    Ok(ev)
}

/// ℐν(x) with the default configuration. Negative `x` is mapped to `|x|`.
pub fn eval_i(order: &Order, x: f64, tol: f64, scaling: Scaling) -> Result<Evaluation> {
    eval_i_with(order, x, tol, scaling, &EvalConfig::default())
}

pub fn eval_i_with(order: &Order, x: f64, tol: f64, scaling: Scaling, cfg: &EvalConfig) -> Result<Evaluation> {
    check_tol(tol)?;
    check_x(x)?;
    let x = x.abs();
    if x == 0.0 {
        return Ok(Evaluation::exact_one(scaling));
    }
    match scaling {
        Scaling::Unscaled => {
            if log_i_estimate(order.nu, x) > OVERFLOW_LOG_LIMIT {
                return Err(Error::OverflowRisk(x));
            }
            let ev = series_eval(Family::I, order, x, tol, cfg)?;
            within(ev.abs_error_bound, ev.value, tol, "eval_i")?;
            Ok(ev)
        }
        Scaling::ExpScaled => {
            if x > cfg.x_switch {
                let asym = asymptotic_scaled(order.nu, x, cfg);
                if asym.abs_error_bound <= tol * asym.value.abs().max(1.0) {
                    return Ok(asym);
                }
                if log_i_estimate(order.nu, x) > OVERFLOW_LOG_LIMIT {
                    within(asym.abs_error_bound, asym.value, tol, "eval_i asymptotic")?;
                }
            }
            let ev = series_eval(Family::I, order, x, tol, cfg)?;
            let damp = (-x).exp();
            let value = ev.value * damp;
            let bound = ev.abs_error_bound * damp + 4.0 * f64::EPSILON * value.abs();
            within(bound, value, tol, "eval_i scaled")?;
            Ok(Evaluation { value, abs_error_bound: bound, scaling: Scaling::ExpScaled, terms_used: ev.terms_used })
        }
    }
}

/// Rough `ln ℐν(x)` from the leading asymptotic term; only used to detect
/// overflow, so it is only consulted for large `x`.
fn log_i_estimate(nu: f64, x: f64) -> f64 {
    if x < 600.0 {
        return 0.0;
    }
    x - (nu + 0.5) * x.ln() + nu * std::f64::consts::LN_2 + libm::lgamma(nu + 1.0)
        - 0.5 * (2.0 * std::f64::consts::PI).ln()
}

/// `2^ν Γ(ν+1) x^(−ν) / √(2πx)` with a relative error allowance.
fn asymptotic_prefactor(nu: f64, x: f64) -> (f64, f64) {
    let direct = libm::tgamma(nu + 1.0) * (2.0 / x).powf(nu) / (2.0 * std::f64::consts::PI * x).sqrt();
    if direct.is_finite() && direct > f64::MIN_POSITIVE {
        (direct, 16.0 * f64::EPSILON)
    } else {
        let log = libm::lgamma(nu + 1.0) + nu * (2.0 / x).ln() - 0.5 * (2.0 * std::f64::consts::PI * x).ln();
        (log.exp(), 16.0 * f64::EPSILON * (1.0 + log.abs()))
    }
}

/// `e^(−x)ℐν(x)` from `Iν(x) ~ e^x/√(2πx) Σ (−1)ᵏ aₖ(ν)/xᵏ`, truncated at the
/// smallest term, whose magnitude is taken as the truncation bound.
fn asymptotic_scaled(nu: f64, x: f64, cfg: &EvalConfig) -> Evaluation {
    let mu = 4.0 * nu * nu;
    let k_limit = ((2.0 * x + nu.abs() + 10.0) as usize).min(cfg.max_terms);
    // partial sum of the terms before index k, and |term_k|
    let mut partial = DoubleDouble::ZERO;
    let mut term = 1.0f64;
    let mut best = (DoubleDouble::ZERO, 1.0f64, 0usize);
    for k in 1..=k_limit {
        partial = partial + DoubleDouble::from_f64(term);
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (8.0 * k as f64 * x);
        if term.abs() > 1.0 {
            // growing past the leading term: outside the asymptotic regime
            break;
        }
        if term.abs() < best.1 {
            best = (partial, term.abs(), k);
        }
        if term == 0.0 || term.abs() <= 1e-3 * f64::EPSILON * partial.to_f64().abs() {
            break;
        }
    }
    let (sum, smallest, terms) = best;
    let (prefactor, pre_rel) = asymptotic_prefactor(nu, x);
    let value = prefactor * sum.to_f64();
    let companion = (-2.0 * x).exp();
    let bound = prefactor * smallest * (1.0 + pre_rel)
        + (pre_rel + companion) * value.abs()
        + half_ulp(value);
    Evaluation { value, abs_error_bound: bound, scaling: Scaling::ExpScaled, terms_used: terms.max(1) }
}

fn deriv(
    inner: Evaluation,
    factor: f64,
    tol: f64,
    what: &str,
) -> Result<Evaluation> {
    let value = factor * inner.value;
    let bound = factor.abs() * inner.abs_error_bound + 3.0 * f64::EPSILON * value.abs();
    within(bound, value, tol, what)?;
    Ok(Evaluation { value, abs_error_bound: bound, ..inner })
}

/// 𝒥ν′(x) = −x/(2(ν+1)) · 𝒥ν+1(x).
pub fn deriv_j(order: &Order, x: f64, tol: f64) -> Result<Evaluation> {
    check_tol(tol)?;
    check_x(x)?;
    if x == 0.0 {
        return Ok(Evaluation { value: 0.0, abs_error_bound: 0.0, scaling: Scaling::Unscaled, terms_used: 1 });
    }
    let factor = -x / (2.0 * (order.nu + 1.0));
    let inner_tol = 0.5 * tol * (1.0 / factor.abs()).min(1.0);
    let inner = eval_j(&order.shift(1), x, inner_tol)?;
    deriv(inner, factor, tol, "deriv_j")
}

/// ℐν′(x) = x/(2(ν+1)) · ℐν+1(x).
pub fn deriv_i(order: &Order, x: f64, tol: f64) -> Result<Evaluation> {
    check_tol(tol)?;
    check_x(x)?;
    if x == 0.0 {
        return Ok(Evaluation { value: 0.0, abs_error_bound: 0.0, scaling: Scaling::Unscaled, terms_used: 1 });
    }
    let factor = x / (2.0 * (order.nu + 1.0));
    let inner_tol = 0.5 * tol * (1.0 / factor.abs()).min(1.0);
    let inner = eval_i(&order.shift(1), x, inner_tol, Scaling::Unscaled)?;
    deriv(inner, factor, tol, "deriv_i")
}

/// Elementary closed forms at half-integer orders:
/// 𝒥₋½ = cos x, 𝒥½ = sin x/x, ℐ₋½ = cosh x, ℐ½ = sinh x/x,
/// ℐ₃/₂ = 3(x cosh x − sinh x)/x³.
pub fn closed_form(family: Family, order: &Order, x: f64) -> Result<f64> {
    check_x(x)?;
    let nu = order.nu;
    match (family, nu) {
        (Family::J, n) if n == -0.5 => Ok(x.cos()),
        (Family::J, n) if n == 0.5 => Ok(if x == 0.0 { 1.0 } else { x.sin() / x }),
        (Family::I, n) if n == -0.5 => Ok(x.cosh()),
        (Family::I, n) if n == 0.5 => Ok(if x == 0.0 { 1.0 } else { x.sinh() / x }),
        (Family::I, n) if n == 1.5 => Ok(i_three_halves(x)),
        _ => Err(Error::UnsupportedOrder(nu)),
    }
}

/// `3(x cosh x − sinh x)/x³`. Below |x| = 1 the difference cancels, so it is
/// expanded as `x cosh x − sinh x = Σₖ₌₁ 2k x^(2k+1)/(2k+1)!`.
fn i_three_halves(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return 3.0 * (x * x.cosh() - x.sinh()) / (x * x * x);
    }
    let x2 = x * x;
    // Σₖ₌₁ 2k x^(2k−2)/(2k+1)!
    let mut power = 1.0;
    let mut fact = 6.0;
    let mut sum = 0.0;
    for k in 1..=12 {
        let kf = k as f64;
        sum += 2.0 * kf * power / fact;
        power *= x2;
        fact *= (2.0 * kf + 2.0) * (2.0 * kf + 3.0);
    }
    3.0 * sum
}

/// 𝒥ν(x) and 𝒥ν(x) − 1 (or the ℐ pair), each to full relative accuracy.
#[derive(Clone, Copy, Debug)]
pub(crate) struct UnitOffset {
    pub value: f64,
    pub minus_one: f64,
}

pub(crate) fn unit_offset(family: Family, nu: f64, x: f64, cfg: &EvalConfig) -> Result<UnitOffset> {
    check_x(x)?;
    let x = x.abs();
    if x == 0.0 {
        return Ok(UnitOffset { value: 1.0, minus_one: 0.0 });
    }
    let sum = sum_series(family, nu, x, cfg.max_terms, |trunc, value, tail| {
        trunc <= 1e-20 * value.abs().min(tail.abs())
    })?;
    Ok(UnitOffset { value: sum.value().to_f64(), minus_one: sum.tail.to_f64() })
}

/// e^(−x)·ℐν(x) to near full accuracy, for the large-argument inequality paths.
pub(crate) fn i_scaled(order: &Order, x: f64, cfg: &EvalConfig) -> Result<f64> {
    eval_i_with(order, x, 1e-13, Scaling::ExpScaled, cfg).map(|e| e.value)
}
