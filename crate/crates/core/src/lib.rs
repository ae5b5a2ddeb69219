//! Normalized Bessel functions 𝒥ν, ℐν with error bounds, their first zeros,
//! and evaluators for Turán- and Huygens-type inequalities built on them.
//!
//! * [`specfun`]: series and asymptotic evaluation with truncation bounds.
//! * [`zeros`]: the first positive zero `j(ν,1)`.
//! * [`inequality`]: margins of every inequality, exact coefficient sequences.
//! * [`oracle`]: an independent multiprecision summation used for cross-checks.
//! * [`scan`]: grid scans producing deterministic CSV reports.

mod dd;
pub mod error;
pub mod inequality;
pub mod oracle;
pub mod scan;
pub mod specfun;
pub mod zeros;

pub use error::{Error, Result};
pub use specfun::{
    closed_form, deriv_i, deriv_j, eval_i, eval_i_with, eval_j, eval_j_with, EvalConfig, Evaluation, Family,
    Order, Scaling,
};
pub use zeros::{first_zero, ZeroResult};
