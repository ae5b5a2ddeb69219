//! First positive zero `j(ν,1)` of Jν, found as the first sign change of 𝒥ν.

use crate::error::{Error, Result};
use crate::specfun::{unit_offset, EvalConfig, Family, Order};

const SCAN_STEP: f64 = 0.25;

/// Bracketed first zero.
///
/// 𝒥ν changes sign (or vanishes) on `[lower(), upper()]`, an interval of
/// width `bracket_width` centred on `location`. The endpoints are stored
/// because a one-ulp bracket has no representable midpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroResult {
    pub order: Order,
    pub location: f64,
    pub bracket_width: f64,
    /// 𝒥ν evaluated at `location`.
    pub residual: f64,
    bracket: (f64, f64),
}

impl ZeroResult {
    pub fn lower(&self) -> f64 {
        self.bracket.0
    }

    pub fn upper(&self) -> f64 {
        self.bracket.1
    }
}

fn j_value(nu: f64, x: f64) -> Result<f64> {
    unit_offset(Family::J, nu, x, &EvalConfig::default()).map(|u| u.value)
}

/// First positive zero of Jν, bracketed to width `≤ tol`.
///
/// Scans outward from 0 in steps of 0.25, bisects the first sign change
/// and then tries one Newton step with 𝒥ν′ = −x/(2(ν+1))·𝒥ν+1. The Newton
/// point is only used when it falls inside the bracket.
pub fn first_zero(order: &Order, tol: f64) -> Result<ZeroResult> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let nu = order.nu();
    let hard_cap = 10.0 * (nu + 10.0);
    let mut cap = (2.0 * (nu + 2.0)).min(hard_cap);

    let exact = |x: f64| ZeroResult { order: *order, location: x, bracket_width: 0.0, residual: 0.0, bracket: (x, x) };

    let mut lo = 0.0;
    let mut f_lo = 1.0f64;
    let mut step = 1usize;
    let (mut a, mut b) = loop {
        let x = step as f64 * SCAN_STEP;
        if x > cap {
            if cap >= hard_cap {
                return Err(Error::NoSignChange { nu, cap: hard_cap });
            }
            cap = (2.0 * cap).min(hard_cap);
            continue;
        }
        let f = j_value(nu, x)?;
        if f == 0.0 {
            return Ok(exact(x));
        }
        if f.signum() != f_lo.signum() {
            break (lo, x);
        }
        lo = x;
        f_lo = f;
        step += 1;
    };

    // f(a) > 0 > f(b) for the first zero
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let f = j_value(nu, mid)?;
        if f == 0.0 {
            return Ok(exact(mid));
        }
        if f > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }

    let mid = 0.5 * (a + b);
    let f_mid = j_value(nu, mid)?;
    let slope = -mid / (2.0 * (nu + 1.0)) * j_value(nu + 1.0, mid)?;
    if slope != 0.0 {
        let newton = mid - f_mid / slope;
        if newton > a && newton < b {
            let delta = 4.0 * f64::EPSILON * newton;
            let (left, right) = (newton - delta, newton + delta);
            if left > a && right < b && right - left < b - a && j_value(nu, left)? > 0.0 && j_value(nu, right)? < 0.0 {
                a = left;
                b = right;
            } else if j_value(nu, newton)? > 0.0 {
                a = newton;
            } else {
                b = newton;
            }
        }
    }

    if b - a > tol {
        return Err(Error::ToleranceUnreachable(format!(
            "zero bracket width {:e} cannot reach {tol:e} in f64",
            b - a
        )));
    }
    let location = 0.5 * (a + b);
    Ok(ZeroResult {
        order: *order,
        location,
        bracket_width: b - a,
        residual: j_value(nu, location)?,
        bracket: (a, b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn minus_half_is_half_pi() {
        let z = first_zero(&Order::new(-0.5).unwrap(), 1e-12).unwrap();
        assert!((z.location - PI / 2.0).abs() < 1e-12);
        assert!(z.bracket_width <= 1e-12);
    }

    #[test]
    fn half_is_pi() {
        let z = first_zero(&Order::new(0.5).unwrap(), 1e-12).unwrap();
        assert!((z.location - PI).abs() < 1e-12);
        assert!(z.residual.abs() <= 1e-10);
    }

    #[test]
    fn order_zero() {
        let z = first_zero(&Order::new(0.0).unwrap(), 1e-12).unwrap();
        assert!((z.location - 2.404825557695773).abs() < 1e-12);
    }

    #[test]
    fn bracket_straddles_sign_change() {
        for &nu in &[-0.99, -0.9, -0.3, 0.0, 1.0, 2.5, 7.0] {
            let z = first_zero(&Order::new(nu).unwrap(), 1e-12).unwrap();
            let lo = j_value(nu, z.lower()).unwrap();
            let hi = j_value(nu, z.upper()).unwrap();
            assert!(lo >= 0.0 && hi <= 0.0, "nu = {nu}: {lo} {hi}");
            assert!(z.residual.abs() <= 1e-10);
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(first_zero(&Order::new(0.0).unwrap(), 0.0).is_err());
        assert!(matches!(
            first_zero(&Order::new(0.0).unwrap(), 1e-20),
            Err(Error::ToleranceUnreachable(_))
        ));
    }
}
