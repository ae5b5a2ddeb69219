//! Extended-precision reference values.
//!
//! An independent evaluator of the same series in arbitrary-precision binary
//! floating point. Each term is formed as `power / denominator` from its own
//! running power of `x²/4` and its own running product `(ν+1)ₙ n!`, rather
//! than by a term-ratio recurrence, and nothing is shared with
//! [`crate::specfun`].

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::error::{Error, Result};
use crate::specfun::{Family, Order};

const RM: RoundingMode = RoundingMode::ToEven;

pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 30;
pub const MAX_DIGITS: u32 = 5000;

/// Oracle precision from `HUYGENS_BESSEL_DIGITS`, or 50.
pub fn default_digits() -> u32 {
    std::env::var("HUYGENS_BESSEL_DIGITS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DIGITS)
}

/// A reference value carrying at least `digits` significant decimal digits.
#[derive(Clone, Debug)]
pub struct OracleValue {
    pub value: BigFloat,
    pub digits: u32,
}

impl OracleValue {
    /// Nearest f64, via the decimal expansion.
    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.value)
    }

    /// Decimal expansion with `digits` significant digits.
    pub fn to_decimal(&self) -> String {
        let mut cc = consts();
        let s = self.value.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "NaN".into());
        truncate_mantissa(&s, self.digits as usize)
    }
}

impl std::fmt::Display for OracleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants cache")
}

fn big_to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let mut cc = consts();
    v.format(Radix::Dec, RM, &mut cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}

/// Keeps `n` mantissa digits of a string like `-1.2345e-3`.
fn truncate_mantissa(s: &str, n: usize) -> String {
    let (mant, exp) = s.split_once('e').unwrap_or((s, ""));
    let mut out = String::new();
    let mut kept = 0;
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if kept == n {
                continue;
            }
            kept += 1;
        }
        out.push(ch);
    }
    if !exp.is_empty() {
        out.push('e');
        out.push_str(exp);
    }
    out
}

fn check_digits(digits: u32) -> Result<()> {
    if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        return Err(Error::PrecisionUnavailable(format!(
            "{digits} digits requested; supported range is {MIN_DIGITS}..={MAX_DIGITS}"
        )));
    }
    Ok(())
}

/// Working precision in bits: the requested digits, guard bits, and room
/// for the cancellation of terms as large as `e^|x|`.
fn working_bits(digits: u32, x_abs: f64) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64 + (x_abs * std::f64::consts::LOG2_E).ceil() as usize
}

fn big_order(order: &Order, p: usize) -> BigFloat {
    match order.as_rational() {
        Some(r) => {
            let num = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, &mut consts());
            let den = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, &mut consts());
            num.div(&den, p, RM)
        }
        None => BigFloat::from_f64(order.nu(), p),
    }
}

/// 𝒥ν(x) or ℐν(x) to at least `digits` significant digits.
pub fn oracle_eval(family: Family, order: &Order, x: f64, digits: u32) -> Result<OracleValue> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("x = {x} is not finite")));
    }
    check_digits(digits)?;
    let p = working_bits(digits, x.abs());
    oracle_eval_big(family, order, &BigFloat::from_f64(x, p), digits)
}

/// As [`oracle_eval`] with an extended-precision argument.
pub fn oracle_eval_big(family: Family, order: &Order, x: &BigFloat, digits: u32) -> Result<OracleValue> {
    check_digits(digits)?;
    let x_abs = big_to_f64(&x.abs()).abs();
    let p = working_bits(digits, x_abs);
    let nu = big_order(order, p);
    let one = BigFloat::from_i64(1, p);
    let s = x.mul(x, p, RM).div(&BigFloat::from_i64(4, p), p, RM);
    let s_f = x_abs * x_abs / 4.0;

    let threshold = BigFloat::from_i64(10, p).powi((digits + 10) as usize, p, RM).reciprocal(p, RM);
    let mut sum = one.clone();
    let mut power = one.clone();
    let mut denom = one.clone();
    let mut n: usize = 0;
    loop {
        n += 1;
        let nf = BigFloat::from_i64(n as i64, p);
        power = power.mul(&s, p, RM);
        denom = denom.mul(&nf, p, RM).mul(&nu.add(&nf, p, RM), p, RM);
        let mut term = power.div(&denom, p, RM);
        if family == Family::J && n % 2 == 1 {
            term = term.neg();
        }
        sum = sum.add(&term, p, RM);
        // terms are decreasing once n(ν+n) exceeds x²/4
        let decreasing = (n as f64) * (order.nu() + n as f64) > s_f;
        let small = sum.is_zero() && term.is_zero()
            || term.abs().cmp(&sum.abs().mul(&threshold, p, RM)).is_some_and(|c| c < 0);
        if decreasing && small {
            break;
        }
        if n > 1_000_000 {
            return Err(Error::ToleranceUnreachable("oracle series did not converge".into()));
        }
    }
    Ok(OracleValue { value: sum, digits })
}

/// `j(ν,1)` to at least `digits` digits, by bisection of the oracle series.
pub fn oracle_first_zero(order: &Order, digits: u32) -> Result<OracleValue> {
    check_digits(digits)?;
    let eval = |x: &BigFloat| -> Result<BigFloat> { Ok(oracle_eval_big(Family::J, order, x, digits + 5)?.value) };
    let cap = 10.0 * (order.nu() + 10.0);
    let p_guess = working_bits(digits + 5, cap);
    let mut lo = BigFloat::from_i64(0, p_guess);
    let mut hi = None;
    let mut k = 1;
    while (k as f64) * 0.125 <= cap {
        let x = BigFloat::from_f64(k as f64 * 0.125, p_guess);
        if eval(&x)?.is_negative() {
            hi = Some(x);
            break;
        }
        lo = x;
        k += 1;
    }
    let Some(mut hi) = hi else {
        return Err(Error::NoSignChange { nu: order.nu(), cap });
    };
    let p = working_bits(digits + 5, big_to_f64(&hi));
    let half = BigFloat::from_f64(0.5, p);
    let iterations = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8;
    for _ in 0..iterations {
        let mid = lo.add(&hi, p, RM).mul(&half, p, RM);
        let f = eval(&mid)?;
        if f.is_zero() {
            return Ok(OracleValue { value: mid, digits });
        }
        if f.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(OracleValue { value: lo.add(&hi, p, RM).mul(&half, p, RM), digits })
}

/// Elementary closed forms at the half-integer orders −½, ½ and 3/2,
/// evaluated with extended-precision sin, cos, sinh and cosh.
pub fn oracle_closed_form(family: Family, order: &Order, x: f64, digits: u32) -> Result<OracleValue> {
    check_digits(digits)?;
    if !x.is_finite() || x == 0.0 {
        return Err(Error::InvalidArgument(format!("closed forms need finite nonzero x, got {x}")));
    }
    let p = working_bits(digits, 0.0) + 64;
    let mut cc = consts();
    let xb = BigFloat::from_f64(x, p);
    let (s, c) = match family {
        Family::J => (xb.sin(p, RM, &mut cc), xb.cos(p, RM, &mut cc)),
        Family::I => (xb.sinh(p, RM, &mut cc), xb.cosh(p, RM, &mut cc)),
    };
    let value = match order.nu() {
        nu if nu == -0.5 => c,
        nu if nu == 0.5 => s.div(&xb, p, RM),
        nu if nu == 1.5 => {
            // 𝒥: 3(sin x − x cos x)/x³, ℐ: 3(x cosh x − sinh x)/x³
            let xc = xb.mul(&c, p, RM);
            let diff = match family {
                Family::J => s.sub(&xc, p, RM),
                Family::I => xc.sub(&s, p, RM),
            };
            let x3 = xb.powi(3, p, RM);
            diff.mul(&BigFloat::from_i64(3, p), p, RM).div(&x3, p, RM)
        }
        _ => return Err(Error::UnsupportedOrder(order.nu())),
    };
    Ok(OracleValue { value, digits })
}

/// Extended-precision evaluation of elementary expressions for the
/// acceptance and integration tests.
pub mod elementary {
    use super::*;

    /// `(sin x, cos x, tan x)` or the hyperbolic triple, rounded to f64.
    pub fn trig(hyperbolic: bool, x: f64, digits: u32) -> Result<(f64, f64, f64)> {
        check_digits(digits)?;
        let p = working_bits(digits, 0.0) + 64;
        let mut cc = consts();
        let xb = BigFloat::from_f64(x, p);
        let (s, c) = if hyperbolic {
            (xb.sinh(p, RM, &mut cc), xb.cosh(p, RM, &mut cc))
        } else {
            (xb.sin(p, RM, &mut cc), xb.cos(p, RM, &mut cc))
        };
        let t = s.div(&c, p, RM);
        Ok((big_to_f64(&s), big_to_f64(&c), big_to_f64(&t)))
    }

    /// `9 − (sinh x/x)(−6 + 5x³/(x cosh x − sinh x))`.
    pub fn remark3_bracket(x: f64, digits: u32) -> Result<f64> {
        check_digits(digits)?;
        let p = working_bits(digits, x.abs()) + 64;
        let mut cc = consts();
        let xb = BigFloat::from_f64(x, p);
        let (s, c) = (xb.sinh(p, RM, &mut cc), xb.cosh(p, RM, &mut cc));
        let den = xb.mul(&c, p, RM).sub(&s, p, RM);
        let inner = BigFloat::from_i64(5, p).mul(&xb.powi(3, p, RM), p, RM).div(&den, p, RM).sub(&BigFloat::from_i64(6, p), p, RM);
        let v = BigFloat::from_i64(9, p).sub(&s.div(&xb, p, RM).mul(&inner, p, RM), p, RM);
        Ok(big_to_f64(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn minus_half_matches_cosine_to_fifty_digits() {
        let series = oracle_eval(Family::J, &Order::from_ratio(-1, 2).unwrap(), 1.0, 50).unwrap();
        let closed = oracle_closed_form(Family::J, &ord(-0.5), 1.0, 50).unwrap();
        let p = 300;
        let diff = series.value.sub(&closed.value, p, RM).abs();
        let tol = BigFloat::from_i64(10, p).powi(50, p, RM).reciprocal(p, RM);
        assert!(diff.cmp(&tol).unwrap() < 0, "{series} vs {closed}");
        assert!(series.to_decimal().starts_with("5.403023058681397174009366074429766037323"));
    }

    #[test]
    fn origin_is_one() {
        let v = oracle_eval(Family::I, &ord(0.0), 0.0, 50).unwrap();
        assert_eq!(v.to_f64(), 1.0);
    }

    #[test]
    fn first_zero_of_order_zero() {
        let v = oracle_eval(Family::J, &ord(0.0), 2.404825557695773, 50).unwrap();
        assert!(v.to_f64().abs() < 1e-14);
        let z = oracle_first_zero(&ord(0.0), 40).unwrap();
        assert!(z.to_decimal().starts_with("2.40482555769577276862163187932"), "{z}");
    }

    #[test]
    fn precision_limits() {
        assert!(matches!(oracle_eval(Family::J, &ord(0.0), 1.0, 20), Err(Error::PrecisionUnavailable(_))));
        assert!(oracle_eval(Family::J, &ord(0.0), 1.0, 6000).is_err());
    }

    #[test]
    fn large_argument_cancellation() {
        // 𝒥½(x) = sin x/x at x = 40 where terms reach ~1e16
        let s = oracle_eval(Family::J, &ord(0.5), 40.0, 40).unwrap().to_f64();
        let c = oracle_closed_form(Family::J, &ord(0.5), 40.0, 40).unwrap().to_f64();
        assert_eq!(s, c);
    }

    #[test]
    fn hyperbolic_closed_form() {
        let a = oracle_eval(Family::I, &ord(1.5), 3.0, 40).unwrap().to_f64();
        let b = oracle_closed_form(Family::I, &ord(1.5), 3.0, 40).unwrap().to_f64();
        assert_eq!(a, b);
    }

    #[test]
    fn truncation_keeps_exponent() {
        assert_eq!(truncate_mantissa("-1.23456e-3", 3), "-1.23e-3");
        assert_eq!(truncate_mantissa("7.5", 5), "7.5");
    }
}
