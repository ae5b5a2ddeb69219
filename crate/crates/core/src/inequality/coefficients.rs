//! Exact power-series coefficients behind the Turán inequality for ℐν and
//! the monotone weight ratio in the Huygens inequality for ℐν.
//!
//! All Γ-ratios that appear differ by integers, so they reduce to rising
//! factorials and every coefficient is an exact rational.

use std::ops::Div;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dd::{DoubleDouble, DD_OP_ERROR};
use crate::error::{Error, Result};
use crate::specfun::Order;

/// Largest supported index for exact coefficient sequences.
pub const MAX_EXACT_TERMS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    TuranI,
    CauchyProduct,
}

/// Exact coefficients of `x^(2n)`, `n = 0, 1, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSequence {
    pub kind: CoefficientKind,
    pub nu: Order,
    pub values: Vec<BigRational>,
}

/// A coefficient computed in double-double precision with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxCoefficient {
    pub value: f64,
    pub error_bound: f64,
}

/// `cₙ(ν) = (ν+n+1)/(ν+n+2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightRatio {
    pub value: f64,
    pub exact: Option<BigRational>,
    /// Whether the exact value equals `aₙ/bₙ` built from the product
    /// coefficients; `None` for irrational ν.
    pub matches_coefficient_ratio: Option<bool>,
}

/// Strict monotonicity of `aₙ/bₙ`, with the first index breaking each direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioMonotonicity {
    pub increasing: bool,
    pub first_increasing_violation: Option<usize>,
    pub decreasing: bool,
    pub first_decreasing_violation: Option<usize>,
}

fn rational(order: &Order) -> Result<BigRational> {
    order.as_rational().ok_or(Error::OrderNotRational(order.nu()))
}

fn check_index(n: usize) -> Result<()> {
    if n > MAX_EXACT_TERMS {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds {MAX_EXACT_TERMS}")));
    }
    Ok(())
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Rising factorial `(a)ₙ`.
fn pochhammer(a: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, k| acc * (a + int(k)))
}

fn factorial_four_pow(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| acc * int(4 * k))
}

/// Coefficient of `x^(2n)` in ℐν: `1/(4ⁿ n! (ν+1)ₙ)`.
pub fn series_coefficient(order: &Order, n: usize) -> Result<BigRational> {
    check_index(n)?;
    let nu = rational(order)?;
    Ok((factorial_four_pow(n) * pochhammer(&(nu + int(1)), n)).recip())
}

fn cauchy_exact(mu: &BigRational, nu: &BigRational, n: usize) -> BigRational {
    let num = pochhammer(&(mu + nu + int(n + 1)), n);
    let den = factorial_four_pow(n) * pochhammer(&(mu + int(1)), n) * pochhammer(&(nu + int(1)), n);
    num / den
}

/// Coefficient of `x^(2n)` in ℐμ·ℐν:
///
/// ```text
/// (μ+ν+n+1)ₙ / (4ⁿ n! (μ+1)ₙ (ν+1)ₙ)
/// ```
pub fn cauchy_product_coefficient(mu: &Order, nu: &Order, n: usize) -> Result<BigRational> {
    check_index(n)?;
    Ok(cauchy_exact(&rational(mu)?, &rational(nu)?, n))
}

/// Coefficients of ℐμ·ℐν for `n = 0..=n_max`. The sequence records `μ`.
pub fn cauchy_product_coefficients(mu: &Order, nu: &Order, n_max: usize) -> Result<CoefficientSequence> {
    check_index(n_max)?;
    let (m, v) = (rational(mu)?, rational(nu)?);
    Ok(CoefficientSequence {
        kind: CoefficientKind::CauchyProduct,
        nu: *mu,
        values: (0..=n_max).map(|n| cauchy_exact(&m, &v, n)).collect(),
    })
}

/// Coefficients of `(ν+2)/(ν+1)·ℐ²ν+1 − ℐνℐν+2`, each obtained as the
/// difference of the two product coefficients.
pub fn turan_i_coefficients(order: &Order, n_max: usize) -> Result<CoefficientSequence> {
    check_index(n_max)?;
    let nu = rational(order)?;
    let one = int(1);
    let two = int(2);
    let c = (&nu + &two) / (&nu + &one);
    let (nu1, nu2) = (&nu + &one, &nu + &two);
    let values = (0..=n_max)
        .map(|n| &c * cauchy_exact(&nu1, &nu1, n) - cauchy_exact(&nu, &nu2, n))
        .collect();
    Ok(CoefficientSequence { kind: CoefficientKind::TuranI, nu: *order, values })
}

/// The same coefficient in product form,
///
/// ```text
/// (2ν+n+3)ₙ / (4ⁿ n! (ν+1)ₙ₊₁ (ν+3)ₙ)
/// ```
///
/// which is visibly positive.
pub fn turan_i_coefficient_closed(order: &Order, n: usize) -> Result<BigRational> {
    check_index(n)?;
    let nu = rational(order)?;
    let num = pochhammer(&(int(2) * &nu + int(n + 3)), n);
    let den = factorial_four_pow(n) * pochhammer(&(&nu + int(1)), n + 1) * pochhammer(&(&nu + int(3)), n);
    Ok(num / den)
}

fn pochhammer_dd(a: f64, n: usize) -> DoubleDouble {
    (0..n).fold(DoubleDouble::ONE, |acc, k| acc * DoubleDouble::sum_f64(a, k as f64))
}

fn cauchy_dd(mu: f64, nu: f64, n: usize) -> DoubleDouble {
    let num = pochhammer_dd(mu + nu + (n + 1) as f64, n);
    let fact = (1..=n).fold(DoubleDouble::ONE, |acc, k| acc * DoubleDouble::from_f64(4.0 * k as f64));
    num / (fact * pochhammer_dd(mu + 1.0, n) * pochhammer_dd(nu + 1.0, n))
}

/// The Turán coefficients for any real order, by the difference route in
/// double-double arithmetic.
///
/// The bound covers the double-double operations and the representation
/// error of the shifted orders; it does not cover the rounding of ν itself.
pub fn turan_i_coefficients_approx(order: &Order, n_max: usize) -> Result<Vec<ApproxCoefficient>> {
    check_index(n_max)?;
    let nu = order.nu();
    let c = DoubleDouble::sum_f64(nu, 2.0) / DoubleDouble::sum_f64(nu, 1.0);
    Ok((0..=n_max)
        .map(|n| {
            let first = c * cauchy_dd(nu + 1.0, nu + 1.0, n);
            let second = cauchy_dd(nu, nu + 2.0, n);
            let diff = first - second;
            let scale = first.abs().to_f64() + second.abs().to_f64();
            // every shifted order and each of the ~6n+8 operations rounds once
            let ops = (6 * n + 8) as f64;
            let error_bound = scale * (ops * DD_OP_ERROR + (3 * n + 2) as f64 * f64::EPSILON * 0.5)
                + 0.5 * f64::EPSILON * diff.abs().to_f64();
            ApproxCoefficient { value: diff.to_f64(), error_bound }
        })
        .collect())
}

/// `(aₙ, bₙ)` for `n = 0..=n_max`, with
/// `aₙ = (ν+1)/(ν+2)·[x^(2n)](ℐνℐν+2)` and `bₙ = [x^(2n)](ℐ²ν+1)`.
///
/// A common factor shared by `aₙ` and `bₙ` is omitted; the ratio
/// `aₙ/bₙ` is unaffected.
pub fn theorem2_coefficients(order: &Order, n_max: usize) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    check_index(n_max)?;
    let nu = rational(order)?;
    let (nu1, nu2) = (&nu + int(1), &nu + int(2));
    let p = &nu1 / &nu2;
    let a = (0..=n_max).map(|n| &p * cauchy_exact(&nu, &nu2, n)).collect();
    let b = (0..=n_max).map(|n| cauchy_exact(&nu1, &nu1, n)).collect();
    Ok((a, b))
}

/// `cₙ(ν) = (ν+n+1)/(ν+n+2)`, cross-checked against `aₙ/bₙ` for rational ν.
pub fn weight_ratio_c(order: &Order, n: usize) -> Result<WeightRatio> {
    let nu = order.nu();
    let nf = n as f64;
    let value = (nu + nf + 1.0) / (nu + nf + 2.0);
    let Some(r) = order.as_rational() else {
        return Ok(WeightRatio { value, exact: None, matches_coefficient_ratio: None });
    };
    let exact = (&r + int(n + 1)) / (&r + int(n + 2));
    let matches = if n <= MAX_EXACT_TERMS {
        let (r1, r2) = (&r + int(1), &r + int(2));
        let a = &r1 / &r2 * cauchy_exact(&r, &r2, n);
        let b = cauchy_exact(&r1, &r1, n);
        Some(a / b == exact)
    } else {
        None
    };
    Ok(WeightRatio { value, exact: Some(exact), matches_coefficient_ratio: matches })
}

/// Strict monotonicity of the ratio sequence `aₙ/bₙ`.
pub fn coefficient_ratio_monotone<T>(a: &[T], b: &[T]) -> Result<RatioMonotonicity>
where
    T: Clone + PartialOrd + Zero,
    for<'x> &'x T: Div<&'x T, Output = T>,
{
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 terms, got {}", a.len())));
    }
    if let Some(i) = b.iter().position(|v| !(*v > T::zero())) {
        return Err(Error::NonpositiveDenominator(i));
    }
    let ratios: Vec<T> = a.iter().zip(b).map(|(x, y)| x / y).collect();
    let inc = ratios.windows(2).position(|w| !(w[1] > w[0])).map(|i| i + 1);
    let dec = ratios.windows(2).position(|w| !(w[1] < w[0])).map(|i| i + 1);
    Ok(RatioMonotonicity {
        increasing: inc.is_none(),
        first_increasing_violation: inc,
        decreasing: dec.is_none(),
        first_decreasing_violation: dec,
    })
}
