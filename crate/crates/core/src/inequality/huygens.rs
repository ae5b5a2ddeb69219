//! Weighted Huygens combinations, the extended Huygens inequalities and the
//! auxiliary functions used in their monotonicity arguments.
//!
//! With `a = 𝒥ν − 1` and `b = 𝒥ν+1 − 1` (or the ℐ analogues):
//!
//! ```text
//! 𝒥ν+1/𝒥ν − 1 = (b − a)/(1 + a)
//! Fν = (1 − 𝒥ν)/(𝒥ν/𝒥ν+1 − 𝒥ν) = a(1 + b) / (b(1 + a))
//! ```
//!
//! which keeps all of these accurate as `x → 0`.

use super::{
    i_values, j_offsets, origin_limit, require_j_domain, require_positive, scaled_name, HuygensWeights, IValues,
    InequalityCheck, NEAR_ZERO,
};
use crate::error::Result;
use crate::specfun::{Family, Order};
use crate::zeros::first_zero;

/// Both sides of `(1−p)𝒥ν+1 + p·𝒥ν+1/𝒥ν > 1 > (1−q)𝒥ν+1 + q·𝒥ν+1/𝒥ν`
/// on `0 < x < j(ν,1)`. The pair is (left, right).
pub fn huygens_j_weighted(
    order: &Order,
    weights: HuygensWeights,
    x: f64,
) -> Result<(InequalityCheck, InequalityCheck)> {
    require_j_domain(order, x, false)?;
    let [a, b] = j_offsets::<2>(order, x)?;
    let (a, b) = (a.minus_one, b.minus_one);
    let ratio_minus_one = (b - a) / (1.0 + a);
    let HuygensWeights { p, q } = weights;
    let left = (1.0 - p) * b + p * ratio_minus_one;
    let right = -(1.0 - q) * b - q * ratio_minus_one;
    Ok((
        InequalityCheck::new("huygens-j-weighted.left", *order, x, left),
        InequalityCheck::new("huygens-j-weighted.right", *order, x, right),
    ))
}

/// Both sides of `(1−p)ℐν+1 + p·ℐν+1/ℐν > 1 > (1−q)ℐν+1 + q·ℐν+1/ℐν`
/// on `x > 0`. Above the switch point a side whose weight on ℐν+1 is
/// nonzero carries a factor `e^(−x)`.
pub fn huygens_i_weighted(
    order: &Order,
    weights: HuygensWeights,
    x: f64,
) -> Result<(InequalityCheck, InequalityCheck)> {
    require_positive(x)?;
    let HuygensWeights { p, q } = weights;
    let name = |side: &str, scaled: bool| {
        let base = format!("huygens-i-weighted.{side}");
        if scaled {
            scaled_name(&base, 1)
        } else {
            base
        }
    };
    let check = |side: &str, margin: f64, scaled: bool| InequalityCheck::new(name(side, scaled), *order, x, margin);
    Ok(match i_values::<2>(order, x)? {
        IValues::Direct([a, b]) => {
            let (a, b) = (a.minus_one, b.minus_one);
            let ratio_minus_one = (b - a) / (1.0 + a);
            (
                check("left", (1.0 - p) * b + p * ratio_minus_one, false),
                check("right", -(1.0 - q) * b - q * ratio_minus_one, false),
            )
        }
        IValues::Scaled { scaled: [s0, s1], damp } => {
            let ratio = s1 / s0;
            // a side without the growing ℐν+1 term stays unscaled, since
            // e^(−x) would underflow it to zero
            let left = if p == 1.0 {
                check("left", ratio - 1.0, false)
            } else {
                check("left", (1.0 - p) * s1 + damp * (p * ratio - 1.0), true)
            };
            let right = if q == 1.0 {
                check("right", 1.0 - ratio, false)
            } else {
                check("right", damp * (1.0 - q * ratio) - (1.0 - q) * s1, true)
            };
            (left, right)
        }
    })
}

/// `1 > (1 − c)𝒥ν + c·𝒥ν/𝒥ν+1` with `c = (ν+2)/(ν+1)`, on `0 < x < j(ν,1)`.
///
/// Proved for `−1 < ν ≤ 0`; other orders are evaluated and flagged with
/// `within_hypothesis = false` and the name `theorem1.empirical`.
///
/// Multiplying the margin by `𝒥ν+1/(c·𝒥ν)` gives the left margin of
/// [`huygens_j_weighted`] at `p = 1/c`; at `ν = −½` the margin equals
/// `(x/tan x)·(2 sin x/x + tan x/x − 3)`.
pub fn huygens_theorem1(order: &Order, x: f64) -> Result<InequalityCheck> {
    require_j_domain(order, x, false)?;
    let [a, b] = j_offsets::<2>(order, x)?;
    let (a, b) = (a.minus_one, b.minus_one);
    let c = origin_limit(order);
    // −(1−c)a − c(a − b)/(1 + b)
    let margin = (c - 1.0) * a - c * (a - b) / (1.0 + b);
    let within = order.nu() <= 0.0;
    let name = if within { "theorem1" } else { "theorem1.empirical" };
    let mut check = InequalityCheck::new(name, *order, x, margin);
    check.within_hypothesis = within;
    Ok(check)
}

/// `1 > (1 − c)ℐν + c·ℐν/ℐν+1` with `c = (ν+2)/(ν+1)`, on `x > 0`.
/// Above the switch point the margin carries a factor `e^(−x)`.
pub fn huygens_theorem2(order: &Order, x: f64) -> Result<InequalityCheck> {
    require_positive(x)?;
    let c = origin_limit(order);
    Ok(match i_values::<2>(order, x)? {
        IValues::Direct([a, b]) => {
            let (a, b) = (a.minus_one, b.minus_one);
            let margin = (c - 1.0) * a - c * (a - b) / (1.0 + b);
            InequalityCheck::new("theorem2", *order, x, margin)
        }
        IValues::Scaled { scaled: [s0, s1], damp } => {
            let margin = damp * (1.0 - c * s0 / s1) + (c - 1.0) * s0;
            InequalityCheck::new(scaled_name("theorem2", 1), *order, x, margin)
        }
    })
}

/// `Fν(x) = (1 − 𝒥ν)/(𝒥ν/𝒥ν+1 − 𝒥ν)` on `0 < x < j(ν,1)`.
///
/// For `x < 1e−3` the limit `(ν+2)/(ν+1)` is returned; the deviation there
/// is `Fν(x) − (ν+2)/(ν+1) ≈ x²(ν+5)/(8(ν+1)²(ν+3))`.
pub fn ratio_f(order: &Order, x: f64) -> Result<f64> {
    require_j_domain(order, x, false)?;
    if x < NEAR_ZERO {
        return Ok(origin_limit(order));
    }
    let [a, b] = j_offsets::<2>(order, x)?;
    let (a, b) = (a.minus_one, b.minus_one);
    Ok(a * (1.0 + b) / (b * (1.0 + a)))
}

/// `Gν(x) = (1 − ℐν)/(ℐν/ℐν+1 − ℐν)` on `x > 0`.
///
/// For `x < 1e−3` the limit `(ν+2)/(ν+1)` is returned, with deviation
/// `≈ −x²(ν+5)/(8(ν+1)²(ν+3))`. Above the switch point it is evaluated as
/// `(1 − 1/ℐν)/(1 − 1/ℐν+1)` with `1/ℐ = e^(−x)/(e^(−x)ℐ)`.
pub fn ratio_g(order: &Order, x: f64) -> Result<f64> {
    require_positive(x)?;
    if x < NEAR_ZERO {
        return Ok(origin_limit(order));
    }
    Ok(match i_values::<2>(order, x)? {
        IValues::Direct([a, b]) => {
            let (a, b) = (a.minus_one, b.minus_one);
            a * (1.0 + b) / (b * (1.0 + a))
        }
        IValues::Scaled { scaled: [s0, s1], damp } => (1.0 - damp / s0) / (1.0 - damp / s1),
    })
}

/// `Gν(x) − 1`, computed without cancellation so that it stays meaningful
/// once Gν rounds to 1 (beyond `x ≈ 40`).
pub fn ratio_g_excess(order: &Order, x: f64) -> Result<f64> {
    require_positive(x)?;
    if x < NEAR_ZERO {
        return Ok(1.0 / (order.nu() + 1.0));
    }
    Ok(match i_values::<2>(order, x)? {
        IValues::Direct([a, b]) => {
            let (a, b) = (a.minus_one, b.minus_one);
            (a - b) / (b * (1.0 + a))
        }
        IValues::Scaled { scaled: [s0, s1], damp } => {
            let (e0, e1) = (damp / s0, damp / s1);
            (e1 - e0) / (1.0 - e1)
        }
    })
}

/// `hν(x) = (ν+1)𝒥ν𝒥ν+2 / ((ν+2)𝒥²ν+1) − 1` on `0 ≤ x < j(ν,1)`.
pub fn internal_h(order: &Order, x: f64) -> Result<f64> {
    require_j_domain(order, x, true)?;
    let [a, b, d] = j_offsets::<3>(order, x)?;
    let p = 1.0 / origin_limit(order);
    Ok(p * a.value * d.value / (b.value * b.value) - 1.0)
}

/// `kν(x) = (ν+1)ℐνℐν+2 / ((ν+2)ℐ²ν+1) − 1` for real `x`.
pub fn internal_k(order: &Order, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(crate::Error::InvalidArgument(format!("x = {x} is not finite")));
    }
    let p = 1.0 / origin_limit(order);
    Ok(match i_values::<3>(order, x)? {
        IValues::Direct([a, b, d]) => p * a.value * d.value / (b.value * b.value) - 1.0,
        IValues::Scaled { scaled: [s0, s1, s2], .. } => p * s0 * s2 / (s1 * s1) - 1.0,
    })
}

/// Points at which the sharpness of the weighted Huygens inequalities is
/// probed.
///
/// For 𝒥ν the points crowd toward both ends of `(0, j(ν,1))`: the `p`
/// threshold is attained as `x → 0` and the `q` threshold as `x → j(ν,1)`.
/// For ℐν they are log-spaced over `[1e−4, 1e3]`, eight per decade.
pub fn sharpness_points(family: Family, order: &Order) -> Result<Vec<f64>> {
    let mut points = match family {
        Family::J => {
            let j = first_zero(order, 1e-14)?.location;
            let mut pts: Vec<f64> = (1..40).map(|i| j * i as f64 / 40.0).collect();
            pts.extend((4..=16).map(|k| j * 10f64.powf(-(k as f64) / 4.0)));
            pts.extend((2..=20).map(|k| j * (1.0 - 10f64.powf(-(k as f64) / 2.0))));
            pts
        }
        Family::I => (0..=56).map(|k| 10f64.powf(-4.0 + k as f64 / 8.0)).collect(),
    };
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(points)
}

/// First violated side of the weighted inequality over [`sharpness_points`].
pub fn find_violation(family: Family, order: &Order, weights: HuygensWeights) -> Result<Option<InequalityCheck>> {
    for x in sharpness_points(family, order)? {
        let (left, right) = match family {
            Family::J => huygens_j_weighted(order, weights, x)?,
            Family::I => huygens_i_weighted(order, weights, x)?,
        };
        if !left.satisfied {
            return Ok(Some(left));
        }
        if !right.satisfied {
            return Ok(Some(right));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{eval_i, eval_j, Scaling};

    fn ord(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn weighted_j_classical_threshold() {
        let (left, right) = huygens_j_weighted(&ord(-0.5), HuygensWeights::new(1.0 / 3.0, 0.0), 1.0).unwrap();
        let (s, t) = (1f64.sin(), 1f64.tan());
        assert!((left.margin - (2.0 / 3.0 * s + t / 3.0 - 1.0)).abs() < 1e-15);
        assert!((right.margin - (1.0 - s)).abs() < 1e-15);
        assert!(left.satisfied && right.satisfied);
    }

    #[test]
    fn weighted_i_classical_threshold() {
        // ℐ₋½ = cosh x, ℐ½ = sinh x/x
        let (left, right) = huygens_i_weighted(&ord(-0.5), HuygensWeights::new(1.0 / 3.0, 1.0), 1.0).unwrap();
        let (s, t) = (1f64.sinh(), 1f64.tanh());
        assert!((left.margin - (2.0 / 3.0 * s + t / 3.0 - 1.0)).abs() < 1e-15);
        assert!((right.margin - (1.0 - t)).abs() < 1e-15);
        assert!(left.satisfied && right.satisfied);
    }

    #[test]
    fn weighted_i_q_threshold_against_values() {
        let (_, right) = huygens_i_weighted(&ord(0.0), HuygensWeights::new(0.5, 1.0), 2.0).unwrap();
        let i0 = eval_i(&ord(0.0), 2.0, 1e-15, Scaling::Unscaled).unwrap().value;
        let i1 = eval_i(&ord(1.0), 2.0, 1e-15, Scaling::Unscaled).unwrap().value;
        assert!((right.margin - (1.0 - i1 / i0)).abs() < 1e-15);
        assert!(right.satisfied);
    }

    #[test]
    fn margins_vanish_at_origin() {
        for nu in [-0.5, 0.0, 1.0] {
            let w = HuygensWeights::new(0.3, 0.7);
            let (l, r) = huygens_j_weighted(&ord(nu), w, 1e-6).unwrap();
            assert!(l.margin.abs() < 1e-11 && r.margin.abs() < 1e-11);
            let (l, r) = huygens_i_weighted(&ord(nu), w, 1e-6).unwrap();
            assert!(l.margin.abs() < 1e-11 && r.margin.abs() < 1e-11);
            assert!(huygens_theorem2(&ord(nu), 1e-6).unwrap().margin.abs() < 1e-20);
        }
        assert!(huygens_theorem1(&ord(-0.5), 1e-6).unwrap().margin.abs() < 1e-20);
    }

    #[test]
    fn theorem1_recovers_classical_huygens() {
        let check = huygens_theorem1(&ord(-0.5), 1.0).unwrap();
        let classical = 2.0 * 1f64.sin() + 1f64.tan() - 3.0;
        assert!((check.margin * 1f64.tan() - classical).abs() < 1e-14);
        assert!(check.satisfied && check.within_hypothesis);
        assert!((classical - 0.2399).abs() < 1e-3);
    }

    #[test]
    fn theorem1_outside_hypothesis_flags() {
        let check = huygens_theorem1(&ord(0.5), 1.0).unwrap();
        assert!(!check.within_hypothesis);
        assert_eq!(check.name, "theorem1.empirical");
    }

    #[test]
    fn theorem2_half_order_elementary() {
        let x: f64 = 2.0;
        let bracket = 9.0 - (x.sinh() / x) * (-6.0 + 5.0 * x.powi(3) / (x * x.cosh() - x.sinh()));
        let check = huygens_theorem2(&ord(0.5), x).unwrap();
        assert!(bracket > 0.0);
        assert!((check.margin - bracket / 9.0).abs() < 1e-14);
    }

    #[test]
    fn theorem2_hyperbolic_at_minus_half() {
        let check = huygens_theorem2(&ord(-0.5), 1.0).unwrap();
        let classical = 2.0 * 1f64.sinh() + 1f64.tanh() - 3.0;
        assert!((check.margin * 1f64.tanh() - classical).abs() < 1e-14);
    }

    #[test]
    fn ratio_limits_at_origin() {
        assert_eq!(ratio_f(&ord(-0.5), 1e-4).unwrap(), 3.0);
        assert_eq!(ratio_f(&ord(0.0), 1e-4).unwrap(), 2.0);
        assert_eq!(ratio_g(&ord(0.5), 1e-4).unwrap(), 2.5 / 1.5);
    }

    #[test]
    fn ratio_f_closed_form() {
        let (c, s) = (1f64.cos(), 1f64.sin());
        let expected = (1.0 - c) / (c / s - c);
        let f = ratio_f(&ord(-0.5), 1.0).unwrap();
        assert!((f - expected).abs() < 1e-14);
        assert!(f > 3.0);
    }

    #[test]
    fn ratio_g_closed_form_and_tail() {
        let (c, s) = (1f64.cosh(), 1f64.sinh());
        let i32 = 3.0 * (c - s);
        let expected = (1.0 - s) / (s / i32 - s);
        assert!((ratio_g(&ord(0.5), 1.0).unwrap() - expected).abs() < 1e-14);
        let g = ratio_g(&ord(0.5), 50.0).unwrap();
        assert!((1.0..1.1).contains(&g));
        let e = ratio_g_excess(&ord(0.5), 50.0).unwrap();
        assert!(e > 0.0 && e < 1e-15);
    }

    #[test]
    fn g_excess_agrees_with_g() {
        for x in [0.01, 0.5, 3.0, 12.0, 29.0, 31.0] {
            let g = ratio_g(&ord(0.25), x).unwrap();
            let e = ratio_g_excess(&ord(0.25), x).unwrap();
            assert!((g - 1.0 - e).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn auxiliary_functions_at_origin() {
        for nu in [-0.5, 0.0, 2.0] {
            let expected = (nu + 1.0) / (nu + 2.0) - 1.0;
            assert!((internal_h(&ord(nu), 0.0).unwrap() - expected).abs() < 1e-16);
            assert!((internal_k(&ord(nu), 0.0).unwrap() - expected).abs() < 1e-16);
        }
    }

    #[test]
    fn internal_k_increasing_samples() {
        let ks: Vec<f64> = [0.5, 1.0, 2.0, 4.0, 8.0].iter().map(|&x| internal_k(&ord(0.5), x).unwrap()).collect();
        assert!(ks.windows(2).all(|w| w[1] > w[0]));
        assert!(ks.iter().all(|&k| k <= 0.0));
    }

    #[test]
    fn g_scaled_branch_continuous() {
        let below = ratio_g(&ord(1.0), 30.0).unwrap();
        let above = ratio_g(&ord(1.0), 30.0 + 1e-9).unwrap();
        assert!((below - above).abs() < 1e-13);
        let below = huygens_theorem2(&ord(1.0), 30.0).unwrap().margin * (-30f64).exp();
        let above = huygens_theorem2(&ord(1.0), 30.0 + 1e-12).unwrap().margin;
        assert!(((below - above) / above).abs() < 1e-12);
    }

    #[test]
    fn sharpness_threshold_and_perturbation() {
        let o = ord(-0.5);
        let sharp = HuygensWeights::sharp_j(&o);
        assert!(find_violation(Family::J, &o, sharp).unwrap().is_none());
        let v = find_violation(Family::J, &o, sharp.offset(-1e-3, 0.0)).unwrap().unwrap();
        assert!(v.name.ends_with("left") && v.x < 0.2);
        let v = find_violation(Family::J, &o, sharp.offset(0.0, 1e-3)).unwrap().unwrap();
        assert!(v.name.ends_with("right") && v.x > 1.5);
    }

    #[test]
    fn domain_errors() {
        assert!(huygens_theorem1(&ord(-0.5), 1.6).is_err());
        assert!(huygens_theorem1(&ord(-0.5), 0.0).is_err());
        assert!(ratio_f(&ord(0.0), 3.0).is_err());
        assert!(ratio_g(&ord(0.0), -1.0).is_err());
        assert!(huygens_theorem2(&ord(0.0), 0.0).is_err());
        let j = eval_j(&ord(0.0), 2.0, 1e-14).unwrap();
        assert!(j.value > 0.0);
    }
}
