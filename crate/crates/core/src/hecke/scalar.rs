use std::fmt::{Debug, Display};

use crate::coeff::{CoeffError, LaurentPoly, RationalFn};

/// The scalar rings a Hecke element can live over: `Z[v,v^-1]` or `Q(v)`.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    const RING_NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// The bar involution `v -> v^-1`.
    fn bar(&self) -> Self;
    fn v_pow(exp: i64) -> Self;
    fn from_laurent(a: &LaurentPoly) -> Self;
    fn to_laurent(&self) -> Result<LaurentPoly, CoeffError>;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error>;
}

impl Scalar for LaurentPoly {
    const RING_NAME: &'static str = "integral";

    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn bar(&self) -> Self {
        LaurentPoly::bar(self)
    }
    fn v_pow(exp: i64) -> Self {
        LaurentPoly::v_pow(exp)
    }
    fn from_laurent(a: &LaurentPoly) -> Self {
        a.clone()
    }
    fn to_laurent(&self) -> Result<LaurentPoly, CoeffError> {
        Ok(self.clone())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("laurent to json")
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(v.clone())
    }
}

impl Scalar for RationalFn {
    const RING_NAME: &'static str = "rational";

    fn zero() -> Self {
        RationalFn::zero()
    }
    fn one() -> Self {
        RationalFn::one()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn bar(&self) -> Self {
        RationalFn::bar(self)
    }
    fn v_pow(exp: i64) -> Self {
        RationalFn::v_pow(exp)
    }
    fn from_laurent(a: &LaurentPoly) -> Self {
        RationalFn::from_laurent(a)
    }
    fn to_laurent(&self) -> Result<LaurentPoly, CoeffError> {
        RationalFn::to_laurent(self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rational to json")
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(v.clone())
    }
}
