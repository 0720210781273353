use super::element::HeckeElement;
use super::scalar::Scalar;
use crate::coeff::RationalFn;
use crate::tableaux::{self, StandardTableau};

/// The Jucys-Murphy element `L_k = T_{k-1} ... T_2 T_1^2 T_2 ... T_{k-1}`
/// inside the rank-`n` algebra; `L_1 = T_e`.
pub fn jm_element<R: Scalar>(n: usize, k: usize) -> HeckeElement<R> {
    assert!(k >= 1 && k <= n, "jm_element needs 1 <= k <= n");
    let mut out = HeckeElement::one(n);
    for i in (1..k).rev() {
        out = out.mul_gen_right(i);
    }
    for i in 1..k {
        out = out.mul_gen_right(i);
    }
    out
}

/// The seminormal idempotent
/// `F_t = prod over k, and over contents c != c_t(k), of (L_k - c) / (c_t(k) - c)`,
/// with factors multiplied in increasing `k` and ascending content order.
pub fn f_projector(n: usize, t: &StandardTableau) -> HeckeElement<RationalFn> {
    assert_eq!(t.size(), n, "tableau size must match rank");
    let mut out = HeckeElement::one(n);
    for k in 1..=n {
        let lk: HeckeElement<RationalFn> = jm_element(n, k);
        let ct = RationalFn::v_pow(t.content_exponent(k));
        for c_exp in tableaux::content_set(n, k) {
            let c = RationalFn::v_pow(c_exp);
            if c == ct {
                continue;
            }
            let denom_inv = (&ct - &c).inv().expect("distinct contents");
            // out <- out * (L_k - c) / (c_t(k) - c)
            let mut num = out.mul(&lk);
            num.add_scaled(&out, &c.neg());
            out = num.scale(&denom_inv);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentPoly;
    use crate::symgroup::Permutation;
    use crate::tableaux::Partition;

    type IElt = HeckeElement<LaurentPoly>;
    type QElt = HeckeElement<RationalFn>;

    #[test]
    fn jm_small() {
        let l1: IElt = jm_element(3, 1);
        assert_eq!(l1, IElt::one(3));
        let l2: IElt = jm_element(2, 2);
        let mut expected = IElt::one(2);
        expected.add_term(
            Permutation::simple(2, 1),
            LaurentPoly::v_pow(1) - LaurentPoly::v_pow(-1),
        );
        assert_eq!(l2, expected);
    }

    #[test]
    fn jm_elements_commute() {
        for n in 2..=4 {
            let elts: Vec<IElt> = (1..=n).map(|k| jm_element(n, k)).collect();
            for a in &elts {
                for b in &elts {
                    assert_eq!(a.mul(b), b.mul(a));
                }
            }
        }
    }

    #[test]
    fn projector_rank_one() {
        let lam = Partition::new(vec![1]).unwrap();
        let t = StandardTableau::initial(&lam);
        assert_eq!(f_projector(1, &t), QElt::one(1));
    }

    #[test]
    fn projector_rank_two_formula() {
        let lam = Partition::new(vec![2]).unwrap();
        let t = StandardTableau::initial(&lam);
        let f = f_projector(2, &t);
        // (L_2 - v^-2)/(v^2 - v^-2)
        let l2: QElt = jm_element(2, 2);
        let mut num = l2;
        num.add_scaled(&QElt::one(2), &RationalFn::v_pow(-2).neg());
        let denom_inv = (RationalFn::v_pow(2) - RationalFn::v_pow(-2)).inv().unwrap();
        assert_eq!(f, num.scale(&denom_inv));
    }

    #[test]
    fn projectors_resolve_identity_and_are_orthogonal() {
        for n in 1..=3 {
            let mut all: Vec<QElt> = Vec::new();
            for lam in Partition::all(n) {
                for t in StandardTableau::all(&lam) {
                    all.push(f_projector(n, &t));
                }
            }
            let mut sum = QElt::zero(n);
            for f in &all {
                sum = sum.add(f);
            }
            assert_eq!(sum, QElt::one(n));
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    let prod = a.mul(b);
                    if i == j {
                        assert_eq!(prod, *a);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
        }
    }
}
