use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;
use crate::coeff::{CoeffError, LaurentPoly, RationalFn};
use crate::symgroup::Permutation;

/// A finitely supported `R`-linear combination of the `T_w`. No zero
/// coefficients are ever stored, and every supporting permutation has the
/// declared rank.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement<R: Scalar> {
    n: usize,
    terms: BTreeMap<Permutation, R>,
}

impl<R: Scalar> HeckeElement<R> {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    /// The identity `T_e`.
    pub fn one(n: usize) -> Self {
        Self::t_basis(&Permutation::identity(n))
    }

    pub fn t_basis(w: &Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.clone(), R::one());
        HeckeElement { n: w.n(), terms }
    }

    pub fn term(w: &Permutation, c: R) -> Self {
        let mut out = Self::zero(w.n());
        out.add_term(w.clone(), c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Permutation, R)>>(n: usize, iter: I) -> Self {
        let mut out = Self::zero(n);
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Permutation) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &R)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Permutation, c: R) {
        debug_assert_eq!(w.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        HeckeElement {
            n: self.n,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a.mul(c))).collect(),
        }
    }

    /// `self += c * rhs`.
    pub fn add_scaled(&mut self, rhs: &Self, c: &R) {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        if c.is_zero() {
            return;
        }
        for (w, a) in rhs.terms() {
            self.add_term(w.clone(), a.mul(c));
        }
    }

    /// Right multiplication by the generator: uses `T_w T_i = T_{w s_i}`
    /// when the length goes up, and the quadratic relation otherwise.
    pub fn mul_gen_right(&self, i: usize) -> Self {
        let vmv = R::v_pow(1).sub(&R::v_pow(-1));
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            let wsi = w.mul_simple_right(i);
            if w.right_ascent(i) {
                out.add_term(wsi, c.clone());
            } else {
                out.add_term(wsi, c.clone());
                out.add_term(w.clone(), c.mul(&vmv));
            }
        }
        out
    }

    /// Left multiplication by the generator.
    pub fn mul_gen_left(&self, i: usize) -> Self {
        let vmv = R::v_pow(1).sub(&R::v_pow(-1));
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            let siw = w.mul_simple_left(i);
            if w.left_ascent(i) {
                out.add_term(siw, c.clone());
            } else {
                out.add_term(siw, c.clone());
                out.add_term(w.clone(), c.mul(&vmv));
            }
        }
        out
    }

    /// Right multiplication by the inverse generator
    /// `T_i^-1 = T_i + (v^-1 - v) T_e`.
    pub fn mul_gen_inv_right(&self, i: usize) -> Self {
        let correction = R::v_pow(-1).sub(&R::v_pow(1));
        let mut out = self.mul_gen_right(i);
        out.add_scaled(self, &correction);
        out
    }

    /// Exact product, expanding the right factor along reduced words.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let mut acc = Self::zero(self.n);
        for (u, c) in rhs.terms() {
            let mut cur = self.scale(c);
            for i in u.reduced_word() {
                cur = cur.mul_gen_right(i);
            }
            acc = acc.add(&cur);
        }
        acc
    }

    /// `T_w^-1` as an element.
    pub fn t_inverse(w: &Permutation) -> Self {
        let mut out = Self::one(w.n());
        for i in w.reduced_word().into_iter().rev() {
            out = out.mul_gen_inv_right(i);
        }
        out
    }

    /// The bar involution: coefficients are barred and `T_w` becomes
    /// `T_{w^-1}^-1`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            out.add_scaled(&Self::t_inverse(&w.inverse()), &c.bar());
        }
        out
    }

    /// The ring involution `j`: coefficients barred, `T_w` scaled by
    /// `(-1)^{l(w)}`.
    pub fn j_involution(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            let barred = c.bar();
            let signed = if w.length() % 2 == 0 { barred } else { barred.neg() };
            out.add_term(w.clone(), signed);
        }
        out
    }

    /// The `*` anti-isomorphism: `T_w -> T_{w^-1}`, coefficients fixed.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            out.add_term(w.inverse(), c.clone());
        }
        out
    }

    /// The support permutation maximal in (length, then lexicographic
    /// one-line) order; this total order refines the Bruhat order.
    pub fn max_term(&self) -> Option<(&Permutation, &R)> {
        self.terms
            .iter()
            .max_by(|(w1, _), (w2, _)| w1.length().cmp(&w2.length()).then_with(|| w1.cmp(w2)))
    }

    pub fn map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> S) -> HeckeElement<S> {
        HeckeElement {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), f(c))).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "ring": R::RING_NAME,
            "terms": self
                .terms
                .iter()
                .map(|(w, c)| serde_json::json!({"perm": w.one_line(), "coeff": c.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl HeckeElement<LaurentPoly> {
    pub fn to_rational(&self) -> HeckeElement<RationalFn> {
        self.map_coeffs(RationalFn::from_laurent)
    }
}

/// An element wire value of either scalar ring, as tagged in its JSON.
pub enum AnyElement {
    Integral(HeckeElement<LaurentPoly>),
    Rational(HeckeElement<RationalFn>),
}

impl AnyElement {
    pub fn from_json(v: &serde_json::Value) -> Result<AnyElement, String> {
        fn terms_of<R: Scalar>(n: usize, v: &serde_json::Value) -> Result<HeckeElement<R>, String> {
            let terms = v["terms"].as_array().ok_or("missing terms array")?;
            let mut out = HeckeElement::<R>::zero(n);
            for t in terms {
                let perm: Vec<usize> = serde_json::from_value(t["perm"].clone())
                    .map_err(|e| format!("bad perm: {e}"))?;
                let w = Permutation::from_one_line(perm).map_err(|e| format!("{e}"))?;
                if w.n() != n {
                    return Err(format!("term rank {} does not match n = {n}", w.n()));
                }
                let c = R::from_json(&t["coeff"]).map_err(|e| format!("bad coefficient: {e}"))?;
                out.add_term(w, c);
            }
            Ok(out)
        }
        let n = v["n"].as_u64().ok_or("missing rank n")? as usize;
        if n == 0 {
            return Err("rank must be positive".into());
        }
        match v["ring"].as_str() {
            Some("integral") => Ok(AnyElement::Integral(terms_of(n, v)?)),
            Some("rational") => Ok(AnyElement::Rational(terms_of(n, v)?)),
            other => Err(format!("unknown ring tag {other:?}")),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyElement::Integral(e) => e.n(),
            AnyElement::Rational(e) => e.n(),
        }
    }
}

impl HeckeElement<RationalFn> {
    /// Converts to the integral ring, failing if any coefficient lies
    /// outside `Z[v, v^-1]`.
    pub fn to_integral(&self) -> Result<HeckeElement<LaurentPoly>, CoeffError> {
        let mut terms = BTreeMap::new();
        for (w, c) in self.terms() {
            terms.insert(w.clone(), c.to_laurent()?);
        }
        Ok(HeckeElement { n: self.n, terms })
    }
}

impl<R: Scalar> fmt::Display for HeckeElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*T{w}")?;
        }
        Ok(())
    }
}

impl<R: Scalar> fmt::Debug for HeckeElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Elt = HeckeElement<LaurentPoly>;

    fn t(word: &[usize], n: usize) -> Elt {
        Elt::t_basis(&Permutation::from_word(n, word).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let ts = t(&[1], 2);
        let sq = ts.mul(&ts);
        let mut expected = Elt::one(2);
        expected.add_term(
            Permutation::simple(2, 1),
            LaurentPoly::v_pow(1) - LaurentPoly::v_pow(-1),
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn lengths_add() {
        assert_eq!(t(&[1], 3).mul(&t(&[2], 3)), t(&[1, 2], 3));
    }

    #[test]
    fn braid_relation() {
        let lhs = t(&[1], 3).mul(&t(&[2], 3)).mul(&t(&[1], 3));
        let rhs = t(&[2], 3).mul(&t(&[1], 3)).mul(&t(&[2], 3));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, t(&[1, 2, 1], 3));
    }

    #[test]
    fn bar_of_generator() {
        let b = t(&[1], 2).bar();
        let mut expected = t(&[1], 2);
        expected.add_term(
            Permutation::identity(2),
            LaurentPoly::v_pow(-1) - LaurentPoly::v_pow(1),
        );
        assert_eq!(b, expected);
    }

    #[test]
    fn bar_is_semilinear_involution() {
        for w in Permutation::all(3) {
            let e = Elt::t_basis(&w);
            assert_eq!(e.bar().bar(), e);
        }
        // bar(ab) = bar(a) bar(b) on a couple of dense elements
        let a = t(&[1], 3).add(&t(&[2, 1], 3).scale(&LaurentPoly::v_pow(2)));
        let b = t(&[2], 3).add(&Elt::one(3).scale(&LaurentPoly::from_int(3)));
        assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn j_involution_examples() {
        let j = t(&[1], 2).j_involution();
        assert_eq!(j, t(&[1], 2).scale(&LaurentPoly::from_int(-1)));
        // j is a ring involution
        let a = t(&[1], 3).add(&t(&[1, 2], 3).scale(&LaurentPoly::v_pow(-1)));
        let b = t(&[2, 1], 3);
        assert_eq!(a.mul(&b).j_involution(), a.j_involution().mul(&b.j_involution()));
        assert_eq!(a.j_involution().j_involution(), a);
    }

    #[test]
    fn star_reverses_products() {
        let st = t(&[1, 2], 3).star();
        assert_eq!(st, t(&[2, 1], 3));
        let a = t(&[1], 3).add(&t(&[2, 1], 3));
        let b = t(&[2], 3).add(&Elt::one(3).scale(&LaurentPoly::v_pow(2)));
        assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
    }

    #[test]
    fn t_inverse_is_inverse() {
        for w in Permutation::all(4) {
            let prod = Elt::t_inverse(&w).mul(&Elt::t_basis(&w));
            assert_eq!(prod, Elt::one(4));
        }
    }

    #[test]
    fn json_shape() {
        let e = t(&[1], 2);
        let js = e.to_json();
        assert_eq!(js["ring"], "integral");
        assert_eq!(js["n"], 2);
        assert_eq!(js["terms"][0]["perm"], serde_json::json!([2, 1]));
    }
}
