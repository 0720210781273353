use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use super::element::HeckeElement;
use crate::coeff::LaurentPoly;
use crate::symgroup::Permutation;

type Elt = HeckeElement<LaurentPoly>;

/// Memoized Kazhdan-Lusztig data for one rank.
///
/// `C'_w` is computed by induction on length: for a left descent `s` of
/// `w`, with `x = s w`,
/// `C'_w = C'_s C'_x - sum over z with s z < z < x of mu(z, x) C'_z`.
/// The cache behaves as a get-or-compute map: concurrent readers may race
/// on the computation but each key is inserted at most once.
pub struct KlContext {
    n: usize,
    cprime: Mutex<HashMap<Permutation, Arc<Elt>>>,
    t_inv: Mutex<HashMap<Permutation, Arc<Elt>>>,
}

impl KlContext {
    pub fn new(n: usize) -> Self {
        KlContext {
            n,
            cprime: Mutex::new(HashMap::new()),
            t_inv: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The Kazhdan-Lusztig basis element `C'_w`.
    pub fn cprime(&self, w: &Permutation) -> Arc<Elt> {
        assert_eq!(w.n(), self.n, "rank mismatch");
        if let Some(hit) = self.cprime.lock().unwrap().get(w) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute_cprime(w));
        self.cprime
            .lock()
            .unwrap()
            .entry(w.clone())
            .or_insert(computed)
            .clone()
    }

    fn compute_cprime(&self, w: &Permutation) -> Elt {
        let Some(&s) = w.left_descents().first() else {
            return Elt::one(self.n);
        };
        let x = w.mul_simple_left(s);
        let cx = self.cprime(&x);
        // C'_s C'_x = (T_s + v^-1) C'_x
        let mut out = cx.mul_gen_left(s);
        out.add_scaled(&cx, &LaurentPoly::v_pow(-1));
        // subtract the mu-correction over z < x with s z < z
        let corrections: Vec<(Permutation, BigInt)> = cx
            .terms()
            .filter(|(z, _)| *z != &x && !z.left_ascent(s))
            .filter_map(|(z, c)| {
                let mu = c.coeff(-1);
                if mu.is_zero() {
                    None
                } else {
                    Some((z.clone(), mu))
                }
            })
            .collect();
        for (z, mu) in corrections {
            let cz = self.cprime(&z);
            out.add_scaled(&cz, &LaurentPoly::monomial(0, -mu));
        }
        out
    }

    /// The twisted basis element `C_w = eps_w j(C'_w)`.
    pub fn c_twisted(&self, w: &Permutation) -> Elt {
        let c = self.cprime(w).j_involution();
        if w.length().is_multiple_of(2) {
            c
        } else {
            c.scale(&LaurentPoly::from_int(-1))
        }
    }

    /// The KL polynomial `P_{y,w}` as coefficients in `q = v^2`,
    /// ascending degree; empty when `y` is not below `w`.
    pub fn kl_polynomial(&self, y: &Permutation, w: &Permutation) -> Vec<BigInt> {
        let c = self.cprime(w).coeff(y);
        if c.is_zero() {
            return Vec::new();
        }
        // coefficient of T_y is v^{l(y)-l(w)} P_{y,w}(v^2)
        let shift = w.length() as i64 - y.length() as i64;
        c.shift(shift)
            .as_poly_in_q()
            .expect("KL coefficient must be a polynomial in q after shifting")
    }

    /// `mu(z, w)`: the coefficient of `q^{(l(w)-l(z)-1)/2}` in `P_{z,w}`,
    /// which is the `v^-1` coefficient of `C'_w` at `T_z`.
    pub fn mu(&self, z: &Permutation, w: &Permutation) -> BigInt {
        self.cprime(w).coeff(z).coeff(-1)
    }

    /// Fills the cache for all of `S_n`, shortest elements first.
    pub fn precompute_all(&self) {
        let mut all = Permutation::all(self.n);
        all.sort_by_key(|w| w.length());
        for w in &all {
            self.cprime(w);
        }
    }

    /// `bar(T_w) = T_{w^-1}^-1`, memoized.
    pub fn bar_t(&self, w: &Permutation) -> Arc<Elt> {
        if let Some(hit) = self.t_inv.lock().unwrap().get(w) {
            return hit.clone();
        }
        let computed = Arc::new(Elt::t_inverse(&w.inverse()));
        self.t_inv
            .lock()
            .unwrap()
            .entry(w.clone())
            .or_insert(computed)
            .clone()
    }

    /// Bar involution computed through the memoized `bar(T_w)` table.
    pub fn bar_element(&self, h: &Elt) -> Elt {
        let mut out = Elt::zero(self.n);
        for (w, c) in h.terms() {
            out.add_scaled(&self.bar_t(w), &c.bar());
        }
        out
    }

    /// Testing hook: replaces the cached `C'_w`, so the verification
    /// suites can be shown to catch corrupted tables.
    pub fn inject_cprime(&self, w: &Permutation, elt: Elt) {
        self.cprime.lock().unwrap().insert(w.clone(), Arc::new(elt));
    }
}
