use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use super::partition::{Partition, TableauError};
use crate::coeff::LaurentPoly;
use crate::symgroup::Permutation;

/// A tableau with strictly increasing rows and columns and pairwise
/// distinct positive entries.
///
/// Most of the crate works with *standard* tableaux, whose entries are
/// exactly `1..=m`; intermediate tableaux built during row insertion may
/// carry an arbitrary set of distinct entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StandardTableau {
    #[serde(serialize_with = "serialize_shape")]
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

fn serialize_shape<S: serde::Serializer>(p: &Partition, s: S) -> Result<S::Ok, S::Error> {
    p.parts().serialize(s)
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            shape: Option<Vec<usize>>,
            rows: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let t = StandardTableau::new(raw.rows).map_err(D::Error::custom)?;
        if let Some(shape) = raw.shape {
            if shape != t.shape.parts() {
                return Err(D::Error::custom("declared shape does not match rows"));
            }
        }
        Ok(t)
    }
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let parts: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        let shape = Partition::new(parts)
            .map_err(|_| TableauError::InvalidTableau("row lengths must weakly decrease".into()))?;
        let mut seen = std::collections::BTreeSet::new();
        for row in &rows {
            for &x in row {
                if x == 0 {
                    return Err(TableauError::InvalidTableau("entries must be positive".into()));
                }
                if !seen.insert(x) {
                    return Err(TableauError::InvalidTableau(format!("duplicate entry {x}")));
                }
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(TableauError::InvalidTableau("rows must strictly increase".into()));
            }
        }
        for i in 1..rows.len() {
            for j in 0..rows[i].len() {
                if rows[i - 1][j] >= rows[i][j] {
                    return Err(TableauError::InvalidTableau("columns must strictly increase".into()));
                }
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    pub fn empty() -> Self {
        StandardTableau { shape: Partition::empty(), rows: Vec::new() }
    }

    /// `t^lam`: the numbers `1..=n` filled along the rows.
    pub fn initial(lam: &Partition) -> Self {
        let mut rows = Vec::with_capacity(lam.rows());
        let mut next = 1;
        for &p in lam.parts() {
            rows.push((next..next + p).collect());
            next += p;
        }
        StandardTableau { shape: lam.clone(), rows }
    }

    /// `t_lam = (t^{lam*})*`: the numbers filled along the columns.
    pub fn column_filled(lam: &Partition) -> Self {
        StandardTableau::initial(&lam.conjugate()).conjugate()
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// True when the entries are exactly `1..=size`.
    pub fn is_standard(&self) -> bool {
        let mut entries: Vec<usize> = self.rows.iter().flatten().copied().collect();
        entries.sort_unstable();
        entries.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// 0-based `(row, col)` of an entry.
    pub fn position_of(&self, entry: usize) -> Option<(usize, usize)> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Ok(j) = row.binary_search(&entry) {
                return Some((i, j));
            }
        }
        None
    }

    pub fn conjugate(&self) -> StandardTableau {
        let shape = self.shape.conjugate();
        let rows: Vec<Vec<usize>> = (0..shape.rows())
            .map(|i| {
                (0..shape.part(i))
                    .map(|j| self.rows[j][i])
                    .collect()
            })
            .collect();
        StandardTableau { shape, rows }
    }

    /// The subtableau of entries `<= m`. Requires a standard tableau.
    pub fn restrict(&self, m: usize) -> Result<StandardTableau, TableauError> {
        if m < 1 || m > self.size() {
            return Err(TableauError::RestrictOutOfRange { index: m, size: self.size() });
        }
        debug_assert!(self.is_standard());
        let rows: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| r.iter().copied().filter(|&x| x <= m).collect::<Vec<_>>())
            .filter(|r: &Vec<usize>| !r.is_empty())
            .collect();
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect()).unwrap();
        Ok(StandardTableau { shape, rows })
    }

    /// Dominance on same-size standard tableaux: every restriction's shape
    /// dominates.
    pub fn dominates(&self, other: &StandardTableau) -> bool {
        assert_eq!(
            self.size(),
            other.size(),
            "tableau dominance compares equal sizes"
        );
        debug_assert!(self.is_standard() && other.is_standard());
        let n = self.size();
        // incremental prefix shapes
        let mut a = vec![0usize; n + 1];
        let mut b = vec![0usize; n + 1];
        let mut rows_a = 0usize;
        let mut rows_b = 0usize;
        for k in 1..=n {
            let (ra, _) = self.position_of(k).expect("standard tableau");
            let (rb, _) = other.position_of(k).expect("standard tableau");
            a[ra] += 1;
            b[rb] += 1;
            rows_a = rows_a.max(ra + 1);
            rows_b = rows_b.max(rb + 1);
            // compare prefix sums of the two current shapes
            let mut pa = 0;
            let mut pb = 0;
            for i in 0..rows_a.max(rows_b) {
                pa += a[i];
                pb += b[i];
                if pa < pb {
                    return false;
                }
            }
        }
        true
    }

    /// The permutation `d(t)` with `t^lam * d(t) = t` under the right
    /// action (entry `a` is replaced by `w^-1(a)`). Requires standard
    /// entries; `d(t)` sends each entry of `t` to its row-reading index.
    pub fn word_permutation(&self) -> Permutation {
        debug_assert!(self.is_standard());
        let n = self.size();
        let mut images = vec![0; n];
        let mut reading_index = 1;
        for row in &self.rows {
            for &entry in row {
                images[entry - 1] = reading_index;
                reading_index += 1;
            }
        }
        Permutation::from_one_line(images).unwrap()
    }

    /// Right action `t * w`: every entry `a` becomes `w^-1(a)`. The result
    /// need not have increasing rows, so raw rows are returned.
    pub fn act_right_rows(&self, w: &Permutation) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&a| w.apply_inverse(a)).collect())
            .collect()
    }

    /// Inserts `i` by row bumping. `i` must not already be an entry.
    pub fn row_insert(&self, i: usize) -> StandardTableau {
        assert!(
            self.position_of(i).is_none(),
            "row_insert of duplicate entry {i}"
        );
        let mut rows = self.rows.clone();
        let mut carry = i;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![carry]);
                break;
            }
            // leftmost entry > carry
            let pos = rows[r].partition_point(|&x| x < carry);
            if pos == rows[r].len() {
                rows[r].push(carry);
                break;
            }
            std::mem::swap(&mut rows[r][pos], &mut carry);
            r += 1;
        }
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect()).unwrap();
        let t = StandardTableau { shape, rows };
        debug_assert!(StandardTableau::new(t.rows.clone()).is_ok());
        t
    }

    /// The content exponent of entry `k`: `2(j - i)` for `k` in row `i`,
    /// column `j` (1-based).
    pub fn content_exponent(&self, k: usize) -> i64 {
        let (i, j) = self.position_of(k).expect("entry not present");
        2 * (j as i64 - i as i64)
    }

    /// The content `c_t(k) = v^{2(j-i)}` as a Laurent monomial.
    pub fn content(&self, k: usize) -> LaurentPoly {
        LaurentPoly::v_pow(self.content_exponent(k))
    }

    /// All standard tableaux of the given shape, sorted lexicographically
    /// by row-reading word.
    pub fn all(lam: &Partition) -> Vec<StandardTableau> {
        fn rec(shape: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<(usize, usize)>>, cur: &mut Vec<(usize, usize)>) {
            if m == 0 {
                out.push(cur.clone());
                return;
            }
            // remove m from each removable corner
            for i in 0..shape.len() {
                let p = shape[i];
                if p > 0 && (i + 1 == shape.len() || shape[i + 1] < p) && (i == 0 || shape[i - 1] >= p) {
                    shape[i] -= 1;
                    cur.push((i, p - 1));
                    rec(shape, m - 1, out, cur);
                    cur.pop();
                    shape[i] += 1;
                }
            }
        }
        let n = lam.size();
        let mut shape: Vec<usize> = lam.parts().to_vec();
        let mut placements = Vec::new();
        rec(&mut shape, n, &mut placements, &mut Vec::new());
        let mut out: Vec<StandardTableau> = placements
            .into_iter()
            .map(|places| {
                let mut rows: Vec<Vec<usize>> = lam.parts().iter().map(|&p| vec![0; p]).collect();
                // places lists the box of n, n-1, ..., 1
                for (step, (i, j)) in places.into_iter().enumerate() {
                    rows[i][j] = n - step;
                }
                StandardTableau { shape: lam.clone(), rows }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
