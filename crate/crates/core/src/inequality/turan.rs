use super::{i_values, j_offsets, require_j_domain, scaled_name, IValues, InequalityCheck};
use crate::error::{Error, Result};
use crate::specfun::Order;

/// `𝒥²ν+1(x) − 𝒥ν(x)𝒥ν+2(x) > 0` on `|x| < j(ν,1)`.
pub fn turan_j(order: &Order, x: f64) -> Result<InequalityCheck> {
    require_j_domain(order, x, true)?;
    let [a, b, d] = j_offsets::<3>(order, x)?;
    let (a, b, d) = (a.minus_one, b.minus_one, d.minus_one);
    // (1+b)² − (1+a)(1+d)
    let margin = (2.0 * b - a - d) + (b * b - a * d);
    Ok(InequalityCheck::new("turan-j", *order, x, margin))
}

/// `(ν+2)/(ν+1)·ℐ²ν+1(x) − ℐν(x)ℐν+2(x) > 0` for all real `x`.
///
/// Above the switch point the margin is multiplied by `e^(−2|x|)`.
pub fn turan_i(order: &Order, x: f64) -> Result<InequalityCheck> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("x = {x} is not finite")));
    }
    let nu = order.nu();
    let c = (nu + 2.0) / (nu + 1.0);
    match i_values::<3>(order, x)? {
        IValues::Direct([a, b, d]) => {
            let (a, b, d) = (a.minus_one, b.minus_one, d.minus_one);
            // c(1+b)² − (1+a)(1+d) with c − 1 = 1/(ν+1)
            let margin = 1.0 / (nu + 1.0) + c * (2.0 * b + b * b) - (a + d + a * d);
            Ok(InequalityCheck::new("turan-i", *order, x, margin))
        }
        IValues::Scaled { scaled: [s0, s1, s2], .. } => {
            let margin = c * s1 * s1 - s0 * s2;
            Ok(InequalityCheck::new(scaled_name("turan-i", 2), *order, x, margin))
        }
    }
}
