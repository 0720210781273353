//! Kazhdan-Lusztig left, right and two-sided cell preorders and cells,
//! generated from products `C'_{s_k} C'_w` and closed transitively.

use serde::Serialize;

use crate::caps::{check_rank, CapKind, RankCapExceeded};
use crate::hecke::KlContext;
use crate::symgroup::Permutation;
use crate::tableaux::{rsk, StandardTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "two-sided" | "twosided" | "lr" => Ok(Side::TwoSided),
            other => Err(format!("unknown side {other:?} (expected left|right|two-sided)")),
        }
    }
}

/// A reflexive transitive relation on `S_n`, stored as a dense bit matrix
/// over the lexicographic enumeration of the group.
pub struct Preorder {
    n: usize,
    side: Side,
    order: Vec<Permutation>,
    index_of: std::collections::HashMap<Permutation, usize>,
    words: usize,
    reach: Vec<u64>,
}

impl Preorder {
    fn empty(n: usize, side: Side) -> Self {
        let order = Permutation::all(n);
        let index_of = order.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let count = order.len();
        let words = count.div_ceil(64);
        let mut p = Preorder { n, side, order, index_of, words, reach: vec![0u64; count * words] };
        for i in 0..count {
            p.set(i, i);
        }
        p
    }

    fn set(&mut self, from: usize, to: usize) {
        self.reach[from * self.words + to / 64] |= 1u64 << (to % 64);
    }

    fn get(&self, from: usize, to: usize) -> bool {
        self.reach[from * self.words + to / 64] & (1u64 << (to % 64)) != 0
    }

    fn close_transitively(&mut self) {
        let count = self.order.len();
        let words = self.words;
        for k in 0..count {
            let row_k = self.reach[k * words..(k + 1) * words].to_vec();
            for i in 0..count {
                if self.get(i, k) {
                    let row_i = &mut self.reach[i * words..(i + 1) * words];
                    for (a, b) in row_i.iter_mut().zip(row_k.iter()) {
                        *a |= *b;
                    }
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.order
    }

    /// `x <= y` in this preorder.
    pub fn leq(&self, x: &Permutation, y: &Permutation) -> bool {
        let ix = self.index_of[x];
        let iy = self.index_of[y];
        self.get(iy, ix)
    }

    /// The equivalence classes `x ~ y` iff `x <= y <= x`, keyed by their
    /// lexicographically least member.
    pub fn cells(&self) -> Vec<Vec<Permutation>> {
        let count = self.order.len();
        let mut assigned = vec![false; count];
        let mut cells: Vec<Vec<Permutation>> = Vec::new();
        for i in 0..count {
            if assigned[i] {
                continue;
            }
            let mut members = Vec::new();
            for j in i..count {
                if !assigned[j] && self.get(i, j) && self.get(j, i) {
                    assigned[j] = true;
                    members.push(self.order[j].clone());
                }
            }
            cells.push(members);
        }
        cells
    }
}

/// Builds the left preorder from the Kazhdan-Lusztig multiplication rule:
/// from `y`, one step reaches `s_k y` whenever it is longer, and every `z`
/// with `mu(z, y) != 0` that has a left descent `y` lacks.
pub fn left_preorder(ctx: &KlContext) -> Result<Preorder, RankCapExceeded> {
    let n = ctx.n();
    check_rank(n, CapKind::Preorder)?;
    let mut p = Preorder::empty(n, Side::Left);
    let elements = p.order.clone();
    for (iy, y) in elements.iter().enumerate() {
        let cy = ctx.cprime(y);
        let y_left_ascents: Vec<usize> = (1..n).filter(|&k| y.left_ascent(k)).collect();
        for &k in &y_left_ascents {
            let target = y.mul_simple_left(k);
            p.set(iy, p.index_of[&target]);
        }
        for (z, coeff) in cy.terms() {
            if z == y || coeff.coeff(-1) == num_bigint::BigInt::from(0) {
                continue;
            }
            // need some k with s_k y > y and s_k z < z
            if y_left_ascents.iter().any(|&k| !z.left_ascent(k)) {
                p.set(iy, p.index_of[z]);
            }
        }
    }
    p.close_transitively();
    Ok(p)
}

/// `x <=_R y` iff `x^-1 <=_L y^-1`.
pub fn right_preorder(ctx: &KlContext) -> Result<Preorder, RankCapExceeded> {
    let left = left_preorder(ctx)?;
    let mut p = Preorder::empty(ctx.n(), Side::Right);
    let elements = p.order.clone();
    for (iy, y) in elements.iter().enumerate() {
        for (ix, x) in elements.iter().enumerate() {
            if left.leq(&x.inverse(), &y.inverse()) {
                p.set(iy, ix);
            }
        }
    }
    Ok(p)
}

/// Transitive closure of the union of the left and right preorders.
pub fn two_sided_preorder(ctx: &KlContext) -> Result<Preorder, RankCapExceeded> {
    let left = left_preorder(ctx)?;
    let right = right_preorder(ctx)?;
    let mut p = Preorder::empty(ctx.n(), Side::TwoSided);
    for i in 0..p.reach.len() {
        p.reach[i] = left.reach[i] | right.reach[i];
    }
    p.close_transitively();
    Ok(p)
}

pub fn preorder(ctx: &KlContext, side: Side) -> Result<Preorder, RankCapExceeded> {
    match side {
        Side::Left => left_preorder(ctx),
        Side::Right => right_preorder(ctx),
        Side::TwoSided => two_sided_preorder(ctx),
    }
}

/// One cell with its RSK annotation: left cells share `Q`, right cells
/// share `P`, two-sided cells share the shape.
#[derive(Debug, Clone, Serialize)]
pub struct AnnotatedCell {
    pub shape: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<StandardTableau>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<StandardTableau>,
    pub members: Vec<Permutation>,
}

/// Cells of the preorder, each annotated with the invariant the RSK
/// correspondence attaches to it. Panics if members of one cell disagree
/// on the invariant, which would contradict the cell/RSK dictionary.
pub fn annotated_cells(pre: &Preorder) -> Vec<AnnotatedCell> {
    let mut out = Vec::new();
    for members in pre.cells() {
        let pairs: Vec<_> = members.iter().map(rsk).collect();
        let shape = pairs[0].shape().clone();
        assert!(
            pairs.iter().all(|pr| pr.shape() == &shape),
            "cell members must share an RSK shape"
        );
        let (mut q, mut p) = (None, None);
        match pre.side {
            Side::Left => {
                let q0 = pairs[0].second().clone();
                assert!(pairs.iter().all(|pr| pr.second() == &q0), "left cell must share Q");
                q = Some(q0);
            }
            Side::Right => {
                let p0 = pairs[0].first().clone();
                assert!(pairs.iter().all(|pr| pr.first() == &p0), "right cell must share P");
                p = Some(p0);
            }
            Side::TwoSided => {}
        }
        out.push(AnnotatedCell { shape: shape.parts().to_vec(), q, p, members });
    }
    out.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{expand_perm_basis, HeckeContext, PermBasis};

    #[test]
    fn rank_two_left_preorder() {
        let ctx = KlContext::new(2);
        let p = left_preorder(&ctx).unwrap();
        let e = Permutation::identity(2);
        let s = Permutation::simple(2, 1);
        assert!(p.leq(&s, &e), "s1 <=_L e via C'_s C'_e = C'_s");
        assert!(!p.leq(&e, &s));
        assert_eq!(p.cells().len(), 2);
    }

    #[test]
    fn rank_three_left_cells() {
        let ctx = KlContext::new(3);
        let p = left_preorder(&ctx).unwrap();
        let cells = p.cells();
        assert_eq!(cells.len(), 4);
        let find = |word: &[usize]| Permutation::from_word(3, word).unwrap();
        // {e}, {s1, s2 s1}, {s2, s1 s2}, {w0}
        let mut sets: Vec<Vec<Permutation>> = vec![
            vec![find(&[])],
            vec![find(&[1]), find(&[2, 1])],
            vec![find(&[2]), find(&[1, 2])],
            vec![find(&[1, 2, 1])],
        ];
        for s in sets.iter_mut() {
            s.sort();
        }
        let mut got = cells;
        for c in got.iter_mut() {
            c.sort();
        }
        got.sort();
        sets.sort();
        assert_eq!(got, sets);

        // s1 is not below s2
        assert!(!p.leq(&find(&[1]), &find(&[2])));
    }

    #[test]
    fn right_is_inverse_of_left() {
        let ctx = KlContext::new(4);
        let left = left_preorder(&ctx).unwrap();
        let right = right_preorder(&ctx).unwrap();
        for x in Permutation::all(4) {
            for y in Permutation::all(4) {
                assert_eq!(right.leq(&x, &y), left.leq(&x.inverse(), &y.inverse()));
            }
        }
    }

    #[test]
    fn everything_below_identity() {
        let ctx = KlContext::new(3);
        let left = left_preorder(&ctx).unwrap();
        let right = right_preorder(&ctx).unwrap();
        let e = Permutation::identity(3);
        for x in Permutation::all(3) {
            assert!(left.leq(&x, &e));
            assert!(right.leq(&x, &e));
        }
        // identity's two-sided cell is just itself
        let two = two_sided_preorder(&ctx).unwrap();
        let cell_of_e: Vec<_> = Permutation::all(3)
            .into_iter()
            .filter(|x| two.leq(x, &e) && two.leq(&e, x))
            .collect();
        assert_eq!(cell_of_e, vec![e]);
    }

    #[test]
    fn simple_generators_suffice() {
        // closing under all products C'_u C'_y adds no relations beyond
        // the simple-reflection generated closure, n <= 3
        for n in 2..=3 {
            let ctx = HeckeContext::new(n).unwrap();
            let p = left_preorder(ctx.kl()).unwrap();
            for u in Permutation::all(n) {
                let cu = ctx.cprime_rational(&u);
                for y in Permutation::all(n) {
                    let cy = ctx.cprime_rational(&y);
                    let coords = expand_perm_basis(&ctx, &cu.mul(&cy), PermBasis::Cprime).unwrap();
                    for (x, c) in coords {
                        if !c.is_zero() {
                            assert!(p.leq(&x, &y), "product C'_{u} C'_{y} reaches {x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cell_counts_match_tableau_counts_at_rank_six() {
        // left cells biject with standard tableaux of size 6
        let ctx = KlContext::new(6);
        let left = left_preorder(&ctx).unwrap();
        let expected: usize = crate::tableaux::Partition::all(6)
            .iter()
            .map(|lam| crate::tableaux::StandardTableau::all(lam).len())
            .sum();
        assert_eq!(expected, 76);
        assert_eq!(left.cells().len(), 76);
        let two = two_sided_preorder(&ctx).unwrap();
        assert_eq!(two.cells().len(), crate::tableaux::Partition::all(6).len());
    }

    #[test]
    fn annotated_cells_share_invariants() {
        let ctx = KlContext::new(4);
        let cells = annotated_cells(&left_preorder(&ctx).unwrap());
        assert_eq!(cells.len(), 10);
        let rcells = annotated_cells(&right_preorder(&ctx).unwrap());
        assert_eq!(rcells.len(), 10);
        let two = annotated_cells(&two_sided_preorder(&ctx).unwrap());
        assert_eq!(two.len(), 5);
    }
}
