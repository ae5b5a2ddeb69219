//! Margins of the Turán- and Huygens-type inequalities for 𝒥ν and ℐν.
//!
//! Every check reports `margin = guaranteed-larger side − smaller side`, so a
//! check is satisfied exactly when its margin is positive.
//!
//! Near the origin every normalized function is close to 1 and the margins
//! are differences of `O(x²)` quantities. They are therefore assembled from
//! `value − 1` computed directly from the series tail rather than by
//! subtracting 1 from a rounded value. For ℐν above the configured switch
//! point the margins are computed from exp-scaled values and the check name
//! carries an `/exp-scaled` suffix recording the factor applied.

mod coefficients;
mod huygens;
mod turan;

pub use coefficients::{
    cauchy_product_coefficient, cauchy_product_coefficients, coefficient_ratio_monotone, series_coefficient, theorem2_coefficients,
    turan_i_coefficient_closed, turan_i_coefficients, turan_i_coefficients_approx, weight_ratio_c,
    ApproxCoefficient, CoefficientKind, CoefficientSequence, RatioMonotonicity, WeightRatio, MAX_EXACT_TERMS,
};
pub use huygens::{
    find_violation, huygens_i_weighted, huygens_j_weighted, huygens_theorem1, huygens_theorem2, internal_h,
    internal_k, ratio_f, ratio_g, ratio_g_excess, sharpness_points,
};
pub use turan::{turan_i, turan_j};

use crate::error::{Error, Result};
use crate::specfun::{i_scaled, unit_offset, EvalConfig, Family, Order, UnitOffset};
use crate::zeros::{first_zero, ZeroResult};

/// Tolerance for consecutive differences in monotonicity checks.
pub const MONOTONE_TOL: f64 = 1e-10;

/// Below this argument Fν and Gν return their limit at the origin.
pub const NEAR_ZERO: f64 = 1e-3;

/// Bracket tolerance used when locating `j(ν,1)` for domain checks.
const DOMAIN_ZERO_TOL: f64 = 1e-14;

/// Weights of the convex combinations `(1−p)·A + p·B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HuygensWeights {
    pub p: f64,
    pub q: f64,
}

impl HuygensWeights {
    pub fn new(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    /// Sharp weights for the 𝒥 family: `p* = (ν+1)/(ν+2)`, `q* = 0`.
    pub fn sharp_j(order: &Order) -> Self {
        Self { p: sharp_p(order), q: 0.0 }
    }

    /// Sharp weights for the ℐ family: `p* = (ν+1)/(ν+2)`, `q* = 1`.
    pub fn sharp_i(order: &Order) -> Self {
        Self { p: sharp_p(order), q: 1.0 }
    }

    pub fn offset(self, dp: f64, dq: f64) -> Self {
        Self { p: self.p + dp, q: self.q + dq }
    }
}

fn sharp_p(order: &Order) -> f64 {
    (order.nu() + 1.0) / (order.nu() + 2.0)
}

/// `(ν+2)/(ν+1)`, the limit of Fν and Gν at the origin.
pub fn origin_limit(order: &Order) -> f64 {
    (order.nu() + 2.0) / (order.nu() + 1.0)
}

/// One evaluated inequality at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCheck {
    pub name: String,
    pub nu: Order,
    pub x: f64,
    pub margin: f64,
    pub satisfied: bool,
    /// False when the order lies outside the proved range of the statement;
    /// such margins are empirical.
    pub within_hypothesis: bool,
}

impl InequalityCheck {
    pub(crate) fn new(name: impl Into<String>, nu: Order, x: f64, margin: f64) -> Self {
        Self { name: name.into(), nu, x, margin, satisfied: margin > 0.0, within_hypothesis: true }
    }
}

/// Checks `0 < x < j(ν,1)` (or `|x| < j(ν,1)` when `allow_nonpositive`).
pub(crate) fn require_j_domain(order: &Order, x: f64, allow_nonpositive: bool) -> Result<ZeroResult> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("x = {x} is not finite")));
    }
    if !allow_nonpositive && x <= 0.0 {
        return Err(Error::DomainViolation(format!("x = {x} must be positive")));
    }
    let zero = first_zero(order, DOMAIN_ZERO_TOL)?;
    if x.abs() >= zero.lower() {
        return Err(Error::DomainViolation(format!(
            "|x| = {} is not below j({},1) = {}",
            x.abs(),
            order,
            zero.location
        )));
    }
    Ok(zero)
}

pub(crate) fn require_positive(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!("x = {x} must be positive and finite")))
    }
}

pub(crate) fn j_offsets<const N: usize>(order: &Order, x: f64) -> Result<[UnitOffset; N]> {
    offsets(Family::J, order, x)
}

fn offsets<const N: usize>(family: Family, order: &Order, x: f64) -> Result<[UnitOffset; N]> {
    let cfg = EvalConfig::default();
    let mut out = [UnitOffset { value: 1.0, minus_one: 0.0 }; N];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = unit_offset(family, order.nu() + k as f64, x, &cfg)?;
    }
    Ok(out)
}

/// ℐν, ℐν+1, … at `x`: either as (value, value − 1) pairs or, above the
/// switch point, as exp-scaled values.
pub(crate) enum IValues<const N: usize> {
    Direct([UnitOffset; N]),
    Scaled { scaled: [f64; N], damp: f64 },
}

pub(crate) fn i_values<const N: usize>(order: &Order, x: f64) -> Result<IValues<N>> {
    let cfg = EvalConfig::default();
    if x.abs() <= cfg.x_switch {
        return offsets(Family::I, order, x).map(IValues::Direct);
    }
    let mut scaled = [0.0; N];
    for (k, slot) in scaled.iter_mut().enumerate() {
        *slot = i_scaled(&order.shift(k as u32), x, &cfg)?;
    }
    Ok(IValues::Scaled { scaled, damp: (-x.abs()).exp() })
}

pub(crate) fn scaled_name(base: &str, power: u32) -> String {
    if power == 1 {
        format!("{base}/exp-scaled")
    } else {
        format!("{base}/exp{power}-scaled")
    }
}
