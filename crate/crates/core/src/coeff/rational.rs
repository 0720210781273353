use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CoeffError, LaurentPoly};

/// A dense polynomial over `Q` in ascending degree, trimmed of trailing
/// zeros. Purely an implementation detail of [`RationalFn`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn zero() -> Self {
        QPoly(Vec::new())
    }

    fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    fn from_vec(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.0.len().max(rhs.0.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.0.iter().enumerate() {
            out[i] += c;
        }
        QPoly::from_vec(out)
    }

    fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::from_vec(out)
    }

    fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Exact Euclidean division; `rhs` must be nonzero.
    fn divrem(&self, rhs: &QPoly) -> (QPoly, QPoly) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        if self.0.len() < rhs.0.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let dq = self.0.len() - rhs.0.len();
        let mut quot = vec![BigRational::zero(); dq + 1];
        let lead = rhs.leading().clone();
        for k in (0..=dq).rev() {
            let c = &rem[k + rhs.0.len() - 1] / &lead;
            if !c.is_zero() {
                for (j, b) in rhs.0.iter().enumerate() {
                    let t = b * &c;
                    rem[k + j] -= t;
                }
            }
            quot[k] = c;
        }
        (QPoly::from_vec(quot), QPoly::from_vec(rem))
    }

    fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = BigRational::one() / self.leading();
        self.scale(&inv)
    }

    /// Index of the lowest nonzero coefficient.
    fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    fn monomial(k: usize) -> QPoly {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        QPoly(coeffs)
    }

    /// Monic gcd. Common powers of `v` and monomial operands are handled
    /// directly; the general case goes through a primitive integer
    /// remainder sequence to keep intermediate coefficients small.
    fn gcd(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        let val = self.valuation().min(rhs.valuation());
        if self.is_monomial() || rhs.is_monomial() {
            return QPoly::monomial(val);
        }
        let a = to_primitive_int(&self.0[val..]);
        let b = to_primitive_int(&rhs.0[val..]);
        if a.len() == 1 || b.len() == 1 {
            return QPoly::monomial(val);
        }
        let g = zpoly_gcd(a, b);
        let mut coeffs = vec![BigRational::zero(); val];
        coeffs.extend(g.into_iter().map(BigRational::from_integer));
        QPoly::from_vec(coeffs).monic()
    }
}

/// Clears denominators and divides by the content, yielding a primitive
/// integer polynomial with the same roots.
fn to_primitive_int(coeffs: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num_integer::lcm_like(&lcm, c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd_like(&content, c);
    }
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

// Tiny local shims so we do not pull in the full num-integer crate for two
// functions on BigInt.
mod num_integer {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    pub fn gcd_like(a: &BigInt, b: &BigInt) -> BigInt {
        let mut a = a.abs();
        let mut b = b.abs();
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm_like(a: &BigInt, b: &BigInt) -> BigInt {
        if a.is_zero() || b.is_zero() {
            return BigInt::zero();
        }
        (a / gcd_like(a, b)) * b
    }
}

/// Gcd of primitive integer polynomials via a primitive pseudo-remainder
/// sequence. Returns a primitive polynomial (sign-normalized positive lead).
fn zpoly_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    use num_traits::Signed as _;
    let trim = |v: &mut Vec<BigInt>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let mut rem = pseudo_rem(&a, &b);
        trim(&mut rem);
        // divide by content
        let mut content = BigInt::zero();
        for c in &rem {
            content = num_integer::gcd_like(&content, c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in rem.iter_mut() {
                *c /= &content;
            }
        }
        a = b;
        b = rem;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        for c in a.iter_mut() {
            *c = -&*c;
        }
    }
    a
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let c = rem.last().unwrap().clone();
        if c.is_zero() {
            rem.pop();
            continue;
        }
        let shift = rem.len() - b.len();
        for item in rem.iter_mut() {
            *item *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        while rem.last().is_some_and(|x| x.is_zero()) {
            rem.pop();
        }
    }
    rem
}

/// An element of `Q(v)` in canonical form: coprime numerator and
/// denominator, monic denominator, and zero represented as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: QPoly,
    den: QPoly,
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        RationalFn { num: QPoly::one(), den: QPoly::one() }
    }

    fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RationalFn { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            let (qn, rn) = num.divrem(&g);
            let (qd, rd) = den.divrem(&g);
            debug_assert!(rn.is_zero() && rd.is_zero());
            (qn, qd)
        };
        // make the denominator monic
        let lead = den.leading().clone();
        if lead.is_one() {
            RationalFn { num, den }
        } else {
            let inv = BigRational::one() / lead;
            RationalFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_laurent(a: &LaurentPoly) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let shift = (-a.min_exp().unwrap()).max(0);
        let deg = (a.max_exp().unwrap() + shift) as usize;
        let mut num = vec![BigRational::zero(); deg + 1];
        for (e, c) in a.terms() {
            num[(e + shift) as usize] = BigRational::from_integer(c.clone());
        }
        let mut den = vec![BigRational::zero(); shift as usize + 1];
        let last = den.len() - 1;
        den[last] = BigRational::one();
        Self::new(QPoly::from_vec(num), QPoly::from_vec(den))
    }

    pub fn v_pow(exp: i64) -> Self {
        Self::from_laurent(&LaurentPoly::v_pow(exp))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(&LaurentPoly::from_int(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Builds from a fraction already known to be in lowest terms.
    fn from_coprime(num: QPoly, den: QPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading().clone();
        if lead.is_one() {
            RationalFn { num, den }
        } else {
            let inv = BigRational::one() / lead;
            RationalFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        // already coprime; only the new denominator needs monicizing
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // num(1/v)/den(1/v), cleared by v^max(deg num, deg den)
        let m = self.num.degree().max(self.den.degree());
        let rev = |p: &QPoly| {
            let mut coeffs = vec![BigRational::zero(); m + 1];
            for (i, c) in p.0.iter().enumerate() {
                coeffs[m - i] = c.clone();
            }
            QPoly::from_vec(coeffs)
        };
        Self::new(rev(&self.num), rev(&self.den))
    }

    /// The value as an element of `Z[v, v^-1]`, when it is one.
    fn laurent_view(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // canonical den must be a monic monomial v^k
        let k = self.den.degree();
        if self.den.0.iter().take(k).any(|c| !c.is_zero()) || !self.den.0[k].is_one() {
            return None;
        }
        let mut terms = Vec::new();
        for (i, c) in self.num.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.denom().is_one() {
                return None;
            }
            terms.push((i as i64 - k as i64, c.numer().clone()));
        }
        Some(LaurentPoly::from_terms(terms))
    }

    /// Converts back to `Z[v, v^-1]`, failing when the value lies outside.
    pub fn to_laurent(&self) -> Result<LaurentPoly, CoeffError> {
        self.laurent_view().ok_or_else(|| CoeffError::NotLaurent(self.to_string()))
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if num.is_zero() {
                return RationalFn::zero();
            }
            let g = num.gcd(&self.den);
            return if g.is_one() {
                RationalFn::from_coprime(num, self.den.clone())
            } else {
                RationalFn::from_coprime(num.divrem(&g).0, self.den.divrem(&g).0)
            };
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // cross sum is automatically coprime to the product
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return RationalFn::zero();
            }
            return RationalFn::from_coprime(num, self.den.mul(&rhs.den));
        }
        let d1 = self.den.divrem(&g).0;
        let d2 = rhs.den.divrem(&g).0;
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if num.is_zero() {
            return RationalFn::zero();
        }
        // the only possible common factor left sits inside g
        let h = num.gcd(&g);
        let den = d1.mul(&rhs.den);
        if h.is_one() {
            RationalFn::from_coprime(num, den)
        } else {
            RationalFn::from_coprime(num.divrem(&h).0, den.divrem(&h).0)
        }
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // cross-reduce before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.divrem(&g1).0, rhs.den.divrem(&g1).0)
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.divrem(&g2).0, self.den.divrem(&g2).0)
        };
        RationalFn::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }
}

macro_rules! forward_owned_binop_rf {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: RationalFn) -> RationalFn {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: &RationalFn) -> RationalFn {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFn> for &RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: RationalFn) -> RationalFn {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop_rf!(Add, add);
forward_owned_binop_rf!(Sub, sub);
forward_owned_binop_rf!(Mul, mul);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

fn fmt_qpoly(p: &QPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {sign} ")?;
        }
        let show_coeff = !mag.is_one() || k == 0;
        if show_coeff {
            write!(f, "{mag}")?;
        }
        if k > 0 {
            if show_coeff {
                write!(f, "*")?;
            }
            if k == 1 {
                write!(f, "v")?;
            } else {
                write!(f, "v^{k}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_qpoly(&self.num, f);
        }
        // values that are Laurent polynomials print as such
        if let Some(l) = self.laurent_view() {
            return write!(f, "{l}");
        }
        write!(f, "(")?;
        fmt_qpoly(&self.num, f)?;
        write!(f, ")/(")?;
        fmt_qpoly(&self.den, f)?;
        write!(f, ")")
    }
}

// JSON form: {"num": [...], "den": [...]} with rational coefficient strings
// in ascending degree.
impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let to_strings = |p: &QPoly| p.0.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut st = serializer.serialize_struct("RationalFn", 2)?;
        st.serialize_field("num", &to_strings(&self.num))?;
        st.serialize_field("den", &to_strings(&self.den))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Vec<String>,
            den: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let parse = |v: Vec<String>| -> Result<QPoly, D::Error> {
            let mut out = Vec::with_capacity(v.len());
            for s in v {
                out.push(s.parse::<BigRational>().map_err(|_| D::Error::custom("bad rational coefficient"))?);
            }
            Ok(QPoly::from_vec(out))
        };
        let den = parse(raw.den)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalFn::new(parse(raw.num)?, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inv_example() {
        // 1/(v^2 - v^-2) canonicalizes to v^2/(v^4 - 1)
        let a = LaurentPoly::v_pow(2) - LaurentPoly::v_pow(-2);
        let r = RationalFn::from_laurent(&a).inv().unwrap();
        let expected = RationalFn::v_pow(2)
            .div(&(RationalFn::v_pow(4) - RationalFn::one()))
            .unwrap();
        assert_eq!(r, expected);
        // denominator v^4 - 1 is monic with coprime numerator v^2
        assert_eq!(r.to_string(), "(v^2)/(v^4 - 1)");
    }

    #[test]
    fn from_laurent_zero() {
        let z = RationalFn::from_laurent(&LaurentPoly::zero());
        assert!(z.is_zero());
        assert_eq!(z, RationalFn::zero());
    }

    #[test]
    fn mul_by_inverse() {
        let x = RationalFn::from_laurent(&(LaurentPoly::one() + LaurentPoly::v_pow(2)));
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn inv_of_zero_fails() {
        assert_eq!(RationalFn::zero().inv(), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn bar_round_trips_and_matches_laurent() {
        let a = LaurentPoly::from_terms(vec![(-2, 3.into()), (1, 1.into()), (4, (-2).into())]);
        let r = RationalFn::from_laurent(&a);
        assert_eq!(r.bar(), RationalFn::from_laurent(&a.bar()));
        assert_eq!(r.bar().bar(), r);
        let q = r.inv().unwrap();
        assert_eq!(q.bar().bar(), q);
    }

    #[test]
    fn to_laurent_round_trip() {
        let a = LaurentPoly::from_terms(vec![(-3, 5.into()), (0, 1.into()), (2, (-4).into())]);
        let r = RationalFn::from_laurent(&a);
        assert_eq!(r.to_laurent().unwrap(), a);
        let not_laurent = RationalFn::one().div(&(RationalFn::one() + RationalFn::v_pow(2))).unwrap();
        assert!(not_laurent.to_laurent().is_err());
    }

    #[test]
    fn canonical_equality() {
        // (v^2-1)/(v-1) == v+1 structurally after normalization
        let a = RationalFn::v_pow(2) - RationalFn::one();
        let b = RationalFn::v_pow(1) - RationalFn::one();
        let q = a.div(&b).unwrap();
        assert_eq!(q, RationalFn::v_pow(1) + RationalFn::one());
    }

    #[test]
    fn json_round_trip() {
        let r = RationalFn::v_pow(2).div(&(RationalFn::v_pow(4) - RationalFn::one())).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        let back: RationalFn = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }
}
