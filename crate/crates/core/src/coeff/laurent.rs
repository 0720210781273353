use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CoeffError;

/// An element of `Z[v, v^-1]`, stored as a dense window of coefficients.
///
/// `coeffs[i]` is the coefficient of `v^(min_exp + i)`. Canonical form:
/// the first and last stored coefficients are nonzero, and zero is the
/// empty window with `min_exp = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The monomial `c * v^exp`; canonicalizes `c = 0` to zero.
    pub fn monomial(exp: i64, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { min_exp: exp, coeffs: vec![c] }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, BigInt::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    /// Builds from arbitrary `(exponent, coefficient)` terms, merging
    /// duplicates and trimming to canonical form.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut collected: Vec<(i64, BigInt)> = terms.into_iter().collect();
        if collected.is_empty() {
            return Self::zero();
        }
        collected.sort_by_key(|&(e, _)| e);
        let lo = collected[0].0;
        let hi = collected[collected.len() - 1].0;
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in collected {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_window(lo, coeffs)
    }

    fn from_window(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let first_nz = self.coeffs.iter().position(|c| !c.is_zero());
        match first_nz {
            None => {
                self.coeffs.clear();
                self.min_exp = 0;
            }
            Some(lo) => {
                let hi = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.drain(hi + 1..);
                self.coeffs.drain(..lo);
                self.min_exp += lo as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `Some((exp, coeff))` when the value is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.coeffs.len() == 1 {
            Some((self.min_exp, &self.coeffs[0]))
        } else {
            None
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        if self.is_zero() || exp < self.min_exp {
            return BigInt::zero();
        }
        let i = (exp - self.min_exp) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// The bar involution `v -> v^-1`: reverses the coefficient window.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let max = self.max_exp().unwrap();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_window(-max, coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `v^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp + exp, coeffs: self.coeffs.clone() }
    }

    /// Reads the value as a polynomial in `q := v^2`, returning the
    /// `q`-coefficients in ascending degree. Fails unless every exponent
    /// is even and nonnegative.
    pub fn as_poly_in_q(&self) -> Result<Vec<BigInt>, CoeffError> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let mut out = vec![BigInt::zero(); (self.max_exp().unwrap() / 2 + 1).max(0) as usize];
        for (e, c) in self.terms() {
            if e < 0 || e % 2 != 0 {
                return Err(CoeffError::NotPolynomialInQ(self.to_string()));
            }
            out[(e / 2) as usize] = c.clone();
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        Ok(out)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - lo) as usize] += c;
        }
        for (e, c) in rhs.terms() {
            coeffs[(e - lo) as usize] += c;
        }
        LaurentPoly::from_window(lo, coeffs)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_window(self.min_exp + rhs.min_exp, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// JSON form: list of [exponent, coefficient] pairs sorted by exponent,
// with the integer coefficient rendered as a decimal string.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, s) in pairs {
            let c: BigInt = s.parse().map_err(|_| D::Error::custom("bad integer coefficient"))?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// Renders `q`-coefficients (ascending degree) as e.g. `1+q+q^3`.
pub fn format_q_poly(coeffs: &[BigInt]) -> String {
    if coeffs.iter().all(|c| c.is_zero()) {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push(sign.chars().next().unwrap());
        }
        let show_coeff = !mag.is_one() || k == 0;
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if k > 0 {
            out.push('q');
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> LaurentPoly {
        LaurentPoly::v_pow(1)
    }

    fn vinv() -> LaurentPoly {
        LaurentPoly::v_pow(-1)
    }

    #[test]
    fn add_disjoint_supports() {
        let sum = v() + vinv();
        assert_eq!(sum.coeff(1), BigInt::one());
        assert_eq!(sum.coeff(-1), BigInt::one());
        assert_eq!(sum.coeff(0), BigInt::zero());
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = v() - vinv();
        let b = vinv() - v();
        assert!((a + b).is_zero());
    }

    #[test]
    fn add_doubles() {
        let a = LaurentPoly::one() + LaurentPoly::v_pow(2);
        let sum = &a + &a;
        assert_eq!(sum, LaurentPoly::from_terms(vec![(0, 2.into()), (2, 2.into())]));
    }

    #[test]
    fn mul_examples() {
        assert!( (v() * vinv()).is_one() );
        let s = v() + vinv();
        let sq = &s * &s;
        let expected = LaurentPoly::from_terms(vec![(-2, 1.into()), (0, 2.into()), (2, 1.into())]);
        assert_eq!(sq, expected);
        let a = LaurentPoly::one() + LaurentPoly::v_pow(2);
        let b = LaurentPoly::one() + LaurentPoly::v_pow(-2);
        assert_eq!(a * b, expected);
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::v_pow(2).bar(), LaurentPoly::v_pow(-2));
        let sym = v() + vinv();
        assert_eq!(sym.bar(), sym);
        let p = LaurentPoly::from_terms(vec![(5, 3.into()), (-1, (-1).into())]);
        assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn poly_in_q() {
        let p = LaurentPoly::one() + LaurentPoly::v_pow(2);
        assert_eq!(p.as_poly_in_q().unwrap(), vec![BigInt::one(), BigInt::one()]);
        assert!(v().as_poly_in_q().is_err());
        let p = LaurentPoly::one() + LaurentPoly::v_pow(2) + LaurentPoly::v_pow(6);
        let q = p.as_poly_in_q().unwrap();
        assert_eq!(format_q_poly(&q), "1+q+q^3");
        assert!(LaurentPoly::v_pow(-2).as_poly_in_q().is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = v() - v();
        assert!(z.is_zero());
        assert_eq!(z, LaurentPoly::zero());
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_terms(vec![(-3, 2.into()), (0, (-7).into()), (4, 1.into())]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"[[-3,"2"],[0,"-7"],[4,"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
}
