use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::partition::{Partition, TableauError};
use super::tableau::StandardTableau;
use crate::symgroup::Permutation;

/// A pair of standard tableaux of the same shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableauPair {
    s: StandardTableau,
    t: StandardTableau,
}

impl<'de> Deserialize<'de> for TableauPair {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            s: StandardTableau,
            t: StandardTableau,
        }
        let raw = Raw::deserialize(deserializer)?;
        TableauPair::new(raw.s, raw.t).map_err(D::Error::custom)
    }
}

impl TableauPair {
    pub fn new(s: StandardTableau, t: StandardTableau) -> Result<Self, TableauError> {
        if s.shape() != t.shape() {
            return Err(TableauError::ShapeMismatch);
        }
        Ok(TableauPair { s, t })
    }

    pub fn first(&self) -> &StandardTableau {
        &self.s
    }

    pub fn second(&self) -> &StandardTableau {
        &self.t
    }

    pub fn shape(&self) -> &Partition {
        self.s.shape()
    }

    pub fn conjugate(&self) -> TableauPair {
        TableauPair { s: self.s.conjugate(), t: self.t.conjugate() }
    }
}

impl std::fmt::Display for TableauPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}; {})", self.s, self.t)
    }
}

impl std::fmt::Debug for TableauPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// How two same-size tableau pairs compare under the two pair orders.
///
/// The weak order holds when the first shape strictly dominates, or the
/// shapes agree and both components dominate. The strong order demands
/// componentwise tableau dominance outright (which forces shape
/// dominance, so strong implies weak).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOrder {
    pub equal: bool,
    /// `a >= b` in the weak pair order.
    pub weak_geq: bool,
    /// `a >= b` in the strong pair order.
    pub strong_geq: bool,
}

impl PairOrder {
    pub fn weak_gt(&self) -> bool {
        self.weak_geq && !self.equal
    }

    pub fn strong_gt(&self) -> bool {
        self.strong_geq && !self.equal
    }
}

pub fn pair_order(a: &TableauPair, b: &TableauPair) -> PairOrder {
    let equal = a == b;
    let strong_geq = a.s.dominates(&b.s) && a.t.dominates(&b.t);
    let weak_geq = if a.shape() == b.shape() {
        strong_geq
    } else {
        a.shape().dominates(b.shape())
    };
    PairOrder { equal, weak_geq, strong_geq }
}

/// Row-inserts `w(1), ..., w(n)` to build the insertion tableau `P(w)`;
/// the recording tableau is `Q(w) = P(w^-1)`.
pub fn rsk(w: &Permutation) -> TableauPair {
    let p = insert_all(w);
    let q = insert_all(&w.inverse());
    debug_assert_eq!(p.shape(), q.shape());
    TableauPair { s: p, t: q }
}

fn insert_all(w: &Permutation) -> StandardTableau {
    let mut t = StandardTableau::empty();
    for k in 1..=w.n() {
        t = t.row_insert(w.apply(k));
    }
    t
}

/// Inverse of [`rsk`]: reverse-bumps entries `n, ..., 1` out of the
/// insertion tableau, guided by the recording tableau.
pub fn rsk_inverse(pair: &TableauPair) -> Permutation {
    debug_assert!(pair.s.is_standard() && pair.t.is_standard());
    let n = pair.s.size();
    let mut rows: Vec<Vec<usize>> = pair.s.rows().to_vec();
    let mut images = vec![0; n];
    for k in (1..=n).rev() {
        let (ri, _) = pair.t.position_of(k).expect("standard recording tableau");
        let mut carry = rows[ri].pop().expect("corner box");
        if rows[ri].is_empty() {
            rows.remove(ri);
        }
        for r in (0..ri).rev() {
            // rightmost entry < carry
            let pos = rows[r].partition_point(|&x| x < carry) - 1;
            std::mem::swap(&mut rows[r][pos], &mut carry);
        }
        images[k - 1] = carry;
    }
    Permutation::from_one_line(images).expect("inverse insertion yields a permutation")
}

/// `(u_w, v_w) = (P(w)*, Q(w)*)`, the conjugated RSK pair.
pub fn uv_of(w: &Permutation) -> TableauPair {
    rsk(w).conjugate()
}

/// The content set `C(k)` as Laurent monomials `v^{2(j-i)}`, sorted by
/// exponent.
pub fn content_set_monomials(n: usize, k: usize) -> Vec<crate::coeff::LaurentPoly> {
    content_set(n, k)
        .into_iter()
        .map(crate::coeff::LaurentPoly::v_pow)
        .collect()
}

/// The set `C(k)` of content exponents of the entry `k` over all standard
/// tableaux with `n` boxes, sorted ascending. Memoized per `(n, k)`.
pub fn content_set(n: usize, k: usize) -> Vec<i64> {
    assert!(k >= 1 && k <= n, "content_set needs 1 <= k <= n");
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, k)) {
        return hit.clone();
    }
    let mut set = std::collections::BTreeSet::new();
    for lam in Partition::all(n) {
        for t in StandardTableau::all(&lam) {
            set.insert(t.content_exponent(k));
        }
    }
    let out: Vec<i64> = set.into_iter().collect();
    cache.lock().unwrap().insert((n, k), out.clone());
    out
}
