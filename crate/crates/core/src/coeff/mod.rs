//! Exact scalar arithmetic: Laurent polynomials over `Z` and rational
//! functions over `Q`, both in the indeterminate `v`, together with the
//! bar involution `v -> v^-1`.

mod laurent;
mod rational;

pub use laurent::{format_q_poly, LaurentPoly};
pub use rational::RationalFn;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a polynomial in q = v^2: {0}")]
    NotPolynomialInQ(String),
    #[error("not a Laurent polynomial over Z: {0}")]
    NotLaurent(String),
}
