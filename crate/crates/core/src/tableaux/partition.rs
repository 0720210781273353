use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("parts must be weakly decreasing and positive: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("tableaux have different shapes")]
    ShapeMismatch,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("restriction index {index} out of range 1..={size}")]
    RestrictOutOfRange { index: usize, size: usize },
}

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Part at `row` (0-based), 0 past the end.
    pub fn part(&self, row: usize) -> usize {
        self.parts.get(row).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// Dominance order: `self >= other` iff every prefix sum of `self`
    /// weakly exceeds the corresponding prefix sum of `other`. Requires
    /// equal sizes.
    pub fn dominates(&self, other: &Partition) -> bool {
        assert_eq!(
            self.size(),
            other.size(),
            "dominance compares partitions of the same integer"
        );
        let rows = self.rows().max(other.rows());
        let mut a = 0usize;
        let mut b = 0usize;
        for i in 0..rows {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `n` in reverse-lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[5]).conjugate(), part(&[1, 1, 1, 1, 1]));
        for lam in Partition::all(6) {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(part(&[2, 1]).dominates(&part(&[1, 1, 1])));
        assert!(part(&[3, 1]).dominates(&part(&[2, 2])));
        assert!(!part(&[2, 2]).dominates(&part(&[3, 1])));
        for lam in Partition::all(5) {
            assert!(lam.dominates(&lam));
        }
    }

    #[test]
    fn conjugation_reverses_dominance() {
        for n in 1..=8 {
            let all = Partition::all(n);
            for a in &all {
                for b in &all {
                    assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
                }
            }
        }
    }

    #[test]
    fn enumeration_order() {
        let got: Vec<Vec<usize>> = Partition::all(4).into_iter().map(|p| p.parts.clone()).collect();
        assert_eq!(
            got,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
