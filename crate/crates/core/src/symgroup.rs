//! The symmetric group `S_n`: composition, length, reduced words, Bruhat
//! order, descent sets, parabolic subgroups and distinguished coset
//! representatives.
//!
//! Conventions, fixed once for the whole crate:
//! * permutations act on `{1, ..., n}` and are stored in one-line notation;
//! * composition is `(xy)(k) = x(y(k))`, so a word `s_{i_1} ... s_{i_k}`
//!   multiplies out left to right;
//! * the right action on points is `(k)w = w^-1(k)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tableaux::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("one-line notation {0:?} is not a bijection of 1..={1}")]
    NotABijection(Vec<usize>, usize),
    #[error("generator index {index} out of range for S_{n} (need 1 <= i < n)")]
    BadGenerator { index: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(images).map_err(D::Error::custom)
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The adjacent transposition `s_i = (i, i+1)`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection s_{i} out of range for S_{n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn from_one_line(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(PermError::NotABijection(images, n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Product of the listed generators, applied left to right.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, PermError> {
        for &i in word {
            if i == 0 || i >= n {
                return Err(PermError::BadGenerator { index: i, n });
            }
        }
        let mut w = Self::identity(n);
        for &i in word {
            w = w.compose(&Self::simple(n, i));
        }
        Ok(w)
    }

    /// The longest element `w_0` of `S_n`.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `w(k)` for `1 <= k <= n`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    /// `(k)w = w^-1(k)`, the right action on points.
    pub fn apply_inverse(&self, k: usize) -> usize {
        self.images.iter().position(|&x| x == k).expect("point out of range") + 1
    }

    /// `(xy)(k) = x(y(k))`.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "composition across different ranks");
        Permutation { images: rhs.images.iter().map(|&k| self.images[k - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Embeds into `S_m` for `m >= n` by fixing the new points.
    pub fn extend(&self, m: usize) -> Permutation {
        assert!(m >= self.n());
        let mut images = self.images.clone();
        images.extend(self.n() + 1..=m);
        Permutation { images }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w * s_i` (swaps the values in positions `i`, `i+1`).
    pub fn mul_simple_right(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// `s_i * w` (swaps the values `i`, `i+1` wherever they occur).
    pub fn mul_simple_left(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        for x in images.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
        Permutation { images }
    }

    /// True iff `l(w s_i) > l(w)`.
    pub fn right_ascent(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    /// True iff `l(s_i w) > l(w)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.apply_inverse(i) < self.apply_inverse(i + 1)
    }

    /// `R(w) = { i : w(i) > w(i+1) }`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| !self.right_ascent(i)).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// The reduced word obtained by repeatedly stripping the smallest right
    /// descent. Deterministic; composing it left to right reproduces `w`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut collected = Vec::with_capacity(self.length());
        while let Some(&k) = w.right_descents().first() {
            w = w.mul_simple_right(k);
            collected.push(k);
        }
        collected.reverse();
        collected
    }

    /// Bruhat order via the sorted-prefix (Ehresmann) criterion.
    pub fn bruhat_leq(&self, w: &Permutation) -> bool {
        assert_eq!(self.n(), w.n(), "Bruhat comparison across different ranks");
        let n = self.n();
        let mut a: Vec<usize> = Vec::with_capacity(n);
        let mut b: Vec<usize> = Vec::with_capacity(n);
        for k in 0..n - 1 {
            let ia = a.binary_search(&self.images[k]).unwrap_err();
            a.insert(ia, self.images[k]);
            let ib = b.binary_search(&w.images[k]).unwrap_err();
            b.insert(ib, w.images[k]);
            if a.iter().zip(b.iter()).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// All of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for x in 1..=n {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x);
                    rec(n, prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut prefix, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Generator indices of the standard parabolic `S_lam` (those `s_r` with
/// `r` not a partial sum of `lam`).
pub fn parabolic_gens(lam: &Partition) -> Vec<usize> {
    let n = lam.size();
    let mut cuts = Vec::new();
    let mut acc = 0;
    for &p in lam.parts() {
        acc += p;
        cuts.push(acc);
    }
    (1..n).filter(|r| !cuts.contains(r)).collect()
}

/// Block decomposition of `{1..n}` into the consecutive rows of `t^lam`.
fn blocks(lam: &Partition) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 1;
    for &p in lam.parts() {
        out.push((start, start + p - 1));
        start += p;
    }
    out
}

/// All elements of the row stabilizer `S_lam`, in lexicographic one-line
/// order. Cardinality is the product of the factorials of the parts.
pub fn parabolic_elements(lam: &Partition) -> Vec<Permutation> {
    let n = lam.size();
    let mut out = vec![Permutation::identity(n)];
    for (lo, hi) in blocks(lam) {
        if lo == hi {
            continue;
        }
        let block: Vec<usize> = (lo..=hi).collect();
        let block_perms = perms_of(&block);
        let mut next = Vec::with_capacity(out.len() * block_perms.len());
        for w in &out {
            for bp in &block_perms {
                let mut images = w.one_line().to_vec();
                for (offset, &val) in bp.iter().enumerate() {
                    images[lo - 1 + offset] = val;
                }
                next.push(Permutation { images });
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn perms_of(vals: &[usize]) -> Vec<Vec<usize>> {
    if vals.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        let mut rest = vals.to_vec();
        rest.remove(i);
        for mut tail in perms_of(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

/// The longest element `w_{lam,0}` of `S_lam`: each row block reversed.
pub fn longest_parabolic(lam: &Partition) -> Permutation {
    let n = lam.size();
    let mut images = vec![0; n];
    for (lo, hi) in blocks(lam) {
        for k in lo..=hi {
            images[k - 1] = hi + lo - k;
        }
    }
    Permutation::from_one_line(images).unwrap()
}

pub fn parabolic_length(lam: &Partition) -> usize {
    lam.parts().iter().map(|&p| p * (p - 1) / 2).sum()
}

/// Membership in `S_lam` (each value stays in its row block).
pub fn in_parabolic(w: &Permutation, lam: &Partition) -> bool {
    blocks(lam)
        .into_iter()
        .all(|(lo, hi)| (lo..=hi).all(|k| (lo..=hi).contains(&w.apply(k))))
}

/// Membership in `D_lam`, the minimal-length right coset representatives:
/// `t^lam * d` is row standard, i.e. `d^-1` increases along each row block.
pub fn is_distinguished(d: &Permutation, lam: &Partition) -> bool {
    blocks(lam)
        .into_iter()
        .all(|(lo, hi)| (lo..hi).all(|k| d.apply_inverse(k) < d.apply_inverse(k + 1)))
}

/// Writes `w = z * d` with `z` in `S_lam`, `d` in `D_lam` and
/// `l(w) = l(z) + l(d)`.
pub fn coset_decompose_left_parabolic(w: &Permutation, lam: &Partition) -> (Permutation, Permutation) {
    let n = lam.size();
    assert_eq!(w.n(), n, "partition size must match rank");
    // Row-sort the entries of t^lam * w; the sorted tableau is t^lam * d.
    let winv = w.inverse();
    let mut d_inv_images = vec![0; n];
    for (lo, hi) in blocks(lam) {
        let mut row: Vec<usize> = (lo..=hi).map(|k| winv.apply(k)).collect();
        row.sort_unstable();
        for (offset, &val) in row.iter().enumerate() {
            d_inv_images[lo - 1 + offset] = val;
        }
    }
    // d_inv_images[k-1] = d^-1(k) read along the rows of t^lam
    let d = Permutation { images: d_inv_images }.inverse();
    let z = w.compose(&d.inverse());
    debug_assert!(in_parabolic(&z, lam));
    debug_assert!(is_distinguished(&d, lam));
    debug_assert_eq!(w.length(), z.length() + d.length());
    (z, d)
}

/// Writes `w = d * z` with `z` in `S_m` (fixing `m+1..n`) and `d` a
/// minimal-length left coset representative of `S_m` (increasing on
/// `1..=m`).
pub fn coset_decompose_tail(w: &Permutation, m: usize) -> (Permutation, Permutation) {
    let n = w.n();
    assert!(m >= 1 && m <= n, "tail decomposition needs 1 <= m <= n");
    let mut head: Vec<usize> = (1..=m).map(|k| w.apply(k)).collect();
    head.sort_unstable();
    let mut d_images = head;
    d_images.extend((m + 1..=n).map(|k| w.apply(k)));
    let d = Permutation { images: d_images };
    let z = d.inverse().compose(w);
    debug_assert!((m + 1..=n).all(|k| z.apply(k) == k));
    debug_assert_eq!(w.length(), d.length() + z.length());
    (d, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let n = 6;
        let s1 = Permutation::simple(n, 1);
        assert!(s1.compose(&s1).is_identity());
        let w = Permutation::from_word(n, &[1, 3, 4]).unwrap();
        assert_eq!(w, p(&[2, 1, 4, 5, 3, 6]));
        for x in Permutation::all(4) {
            assert!(x.compose(&x.inverse()).is_identity());
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p(&[2, 1, 4, 5, 3, 6]).length(), 3);
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(Permutation::simple(3, 2).reduced_word(), vec![2]);
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn reduced_word_round_trips() {
        for w in Permutation::all(5) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Permutation::from_word(5, &word).unwrap(), w);
        }
    }

    /// Brute-force subword test: y <= w iff some subword of a reduced word
    /// of w multiplies to y.
    fn bruhat_by_subwords(y: &Permutation, w: &Permutation) -> bool {
        let word = w.reduced_word();
        let n = w.n();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = word
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &g)| g)
                .collect();
            if &Permutation::from_word(n, &sub).unwrap() == y {
                return true;
            }
        }
        false
    }

    #[test]
    fn bruhat_examples() {
        let e = Permutation::identity(3);
        let w0 = Permutation::longest(3);
        for w in Permutation::all(3) {
            assert!(e.bruhat_leq(&w));
            assert!(w.bruhat_leq(&w0));
        }
        let s1 = Permutation::simple(3, 1);
        let s1s2s1 = Permutation::from_word(3, &[1, 2, 1]).unwrap();
        assert!(s1.bruhat_leq(&s1s2s1));
        let s1s2 = Permutation::from_word(3, &[1, 2]).unwrap();
        let s2s1 = Permutation::from_word(3, &[2, 1]).unwrap();
        assert!(!s1s2.bruhat_leq(&s2s1));
    }

    #[test]
    fn bruhat_matches_subword_definition_up_to_s4() {
        for n in 1..=4 {
            let all = Permutation::all(n);
            for y in &all {
                for w in &all {
                    assert_eq!(
                        y.bruhat_leq(w),
                        bruhat_by_subwords(y, w),
                        "mismatch for {y} <= {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_is_partial_order_small() {
        let all = Permutation::all(4);
        for x in &all {
            assert!(x.bruhat_leq(x));
            for y in &all {
                if x.bruhat_leq(y) && y.bruhat_leq(x) {
                    assert_eq!(x, y);
                }
                for z in &all {
                    if x.bruhat_leq(y) && y.bruhat_leq(z) {
                        assert!(x.bruhat_leq(z));
                    }
                }
            }
        }
    }

    #[test]
    fn descent_examples() {
        let w = Permutation::from_word(5, &[2, 3, 4, 3, 2]).unwrap();
        assert_eq!(w.right_descents(), vec![2, 4]);
        let u = Permutation::from_word(5, &[4, 1, 2, 1]).unwrap();
        assert_eq!(u.right_descents(), vec![1, 2, 4]);
        assert!(Permutation::identity(5).right_descents().is_empty());
    }

    #[test]
    fn parabolic_elements_examples() {
        let ones = Partition::new(vec![1, 1, 1]).unwrap();
        assert_eq!(parabolic_elements(&ones), vec![Permutation::identity(3)]);
        let full = Partition::new(vec![4]).unwrap();
        assert_eq!(parabolic_elements(&full), Permutation::all(4));
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(
            parabolic_elements(&lam),
            vec![Permutation::identity(3), Permutation::simple(3, 1)]
        );
        let l22 = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(parabolic_elements(&l22).len(), 4);
    }

    #[test]
    fn longest_parabolic_examples() {
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(longest_parabolic(&lam), Permutation::simple(3, 1));
        let ones = Partition::new(vec![1, 1, 1, 1]).unwrap();
        assert!(longest_parabolic(&ones).is_identity());
        let three = Partition::new(vec![3]).unwrap();
        let w = longest_parabolic(&three);
        assert_eq!(w, Permutation::from_word(3, &[1, 2, 1]).unwrap());
        assert_eq!(w.length(), 3);
        assert_eq!(w.length(), parabolic_length(&three));
    }

    #[test]
    fn left_parabolic_decomposition() {
        let lam = Partition::new(vec![2, 2]).unwrap();
        for w in Permutation::all(4) {
            let (z, d) = coset_decompose_left_parabolic(&w, &lam);
            assert_eq!(z.compose(&d), w);
            assert!(in_parabolic(&z, &lam));
            assert!(is_distinguished(&d, &lam));
            assert_eq!(w.length(), z.length() + d.length());
        }
        // elements of S_lam decompose as (w, e)
        for z in parabolic_elements(&lam) {
            let (z2, d) = coset_decompose_left_parabolic(&z, &lam);
            assert_eq!(z2, z);
            assert!(d.is_identity());
        }
        // over (1^n) everything is a representative
        let ones = Partition::new(vec![1, 1, 1, 1]).unwrap();
        for w in Permutation::all(4) {
            let (z, d) = coset_decompose_left_parabolic(&w, &ones);
            assert!(z.is_identity());
            assert_eq!(d, w);
        }
        // |D_lam| = n!/|S_lam| for lam = (2,2)
        let reps: Vec<_> = Permutation::all(4)
            .into_iter()
            .filter(|d| is_distinguished(d, &lam))
            .collect();
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn tail_decomposition() {
        let w = Permutation::from_word(6, &[1, 3, 4]).unwrap();
        let (d, z) = coset_decompose_tail(&w, 3);
        assert_eq!(d, Permutation::from_word(6, &[3, 4]).unwrap());
        assert_eq!(z, Permutation::simple(6, 1));
        assert_eq!(d.compose(&z), w);

        for w in Permutation::all(4) {
            let (d, z) = coset_decompose_tail(&w, 4);
            assert!(d.is_identity());
            assert_eq!(z, w);
            for m in 1..=4 {
                let (d, z) = coset_decompose_tail(&w, m);
                assert_eq!(d.compose(&z), w);
                assert_eq!(w.length(), d.length() + z.length());
            }
        }
        // w already in S_m
        let w = Permutation::simple(5, 2);
        let (d, z) = coset_decompose_tail(&w, 3);
        assert!(d.is_identity());
        assert_eq!(z, w);
    }
}
