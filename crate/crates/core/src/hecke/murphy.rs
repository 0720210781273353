use std::collections::HashMap;

use super::element::HeckeElement;
use super::scalar::Scalar;
use crate::symgroup::{self, Permutation};
use crate::tableaux::{Partition, StandardTableau};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A linear key that refines strong dominance on same-size tableau pairs:
/// `(s,t)` strictly strongly dominating `(u,v)` forces
/// `dominance_key(s,t) < dominance_key(u,v)`.
pub fn dominance_key(s: &StandardTableau, t: &StandardTableau) -> usize {
    fn height(t: &StandardTableau) -> usize {
        let mut row_of = vec![0usize; t.size() + 1];
        for (i, row) in t.rows().iter().enumerate() {
            for &x in row {
                row_of[x] = i;
            }
        }
        let mut acc = 0;
        let mut running = 0;
        for k in 1..=t.size() {
            running += row_of[k];
            acc += running;
        }
        acc
    }
    height(s) + height(t)
}

/// `x_lam = sum over w in S_lam of v^{l(w)} T_w`.
pub fn parabolic_sum<R: Scalar>(lam: &Partition) -> HeckeElement<R> {
    let n = lam.size();
    HeckeElement::from_terms(
        n,
        symgroup::parabolic_elements(lam)
            .into_iter()
            .map(|w| {
                let c = R::v_pow(w.length() as i64);
                (w, c)
            }),
    )
}

/// `n_lam = sum over w in S_lam of (-v)^{-l(w)} T_w`.
pub fn parabolic_alt_sum<R: Scalar>(lam: &Partition) -> HeckeElement<R> {
    let n = lam.size();
    HeckeElement::from_terms(
        n,
        symgroup::parabolic_elements(lam)
            .into_iter()
            .map(|w| {
                let l = w.length() as i64;
                let c = R::v_pow(-l);
                let c = if l % 2 == 0 { c } else { c.neg() };
                (w, c)
            }),
    )
}

fn sandwich<R: Scalar>(s: &StandardTableau, mid: HeckeElement<R>, t: &StandardTableau) -> HeckeElement<R> {
    assert_eq!(s.shape(), t.shape(), "Murphy labels must share a shape");
    let ds = s.word_permutation();
    let dt = t.word_permutation();
    let left = HeckeElement::<R>::t_basis(&ds.inverse());
    left.mul(&mid).mul(&HeckeElement::t_basis(&dt))
}

/// The Murphy basis element `m_{st} = T_{d(s)}^* x_lam T_{d(t)}`.
pub fn murphy_m<R: Scalar>(s: &StandardTableau, t: &StandardTableau) -> HeckeElement<R> {
    sandwich(s, parabolic_sum(s.shape()), t)
}

/// The dual Murphy basis element `n_{st} = T_{d(s)}^* n_lam T_{d(t)}`.
pub fn dual_murphy_n<R: Scalar>(s: &StandardTableau, t: &StandardTableau) -> HeckeElement<R> {
    sandwich(s, parabolic_alt_sum(s.shape()), t)
}

/// A basis label `(lambda, s, t)` resolved to indices of a [`MurphyTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelIdx {
    pub lam: usize,
    pub s: usize,
    pub t: usize,
}

/// Per-rank index of the Murphy/dual-Murphy cellular labels.
///
/// `diag_perm` records `d(s)^-1 w_{lam,0} d(t)`, where `m_{st}` carries
/// the coefficient `v^{l(w_{lam,0})}`. That term is Bruhat-maximal
/// exactly when the three lengths add (not always: the map is not even
/// injective across shapes), so expansions do not eliminate against it;
/// they peel along the trace duality with the dual basis instead.
pub struct MurphyTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    /// Standard tableaux per partition, in reading-word order.
    pub tableaux: Vec<Vec<StandardTableau>>,
    /// `l(w_{lam,0})` per partition.
    pub parabolic_len: Vec<usize>,
    /// Flattened labels in (partition, s, t) order.
    pub labels: Vec<LabelIdx>,
    /// `d(s)^-1 w_{lam,0} d(t)` per flattened label.
    pub diag_perm: Vec<Permutation>,
    /// Label indices ordered from the bottom of the strong dominance
    /// order up (most dominated first).
    pub peel_order: Vec<usize>,
    /// For label `(s, t)`, the label of the dual pair `(t*, s*)`.
    pub dual_label: Vec<usize>,
    tableau_idx: Vec<HashMap<StandardTableau, usize>>,
    label_pos: HashMap<LabelIdx, usize>,
}

impl MurphyTable {
    pub fn new(n: usize) -> Self {
        let partitions = Partition::all(n);
        let tableaux: Vec<Vec<StandardTableau>> =
            partitions.iter().map(StandardTableau::all).collect();
        let parabolic_len: Vec<usize> =
            partitions.iter().map(symgroup::parabolic_length).collect();
        let mut labels = Vec::new();
        let mut diag_perm = Vec::new();
        for (li, lam) in partitions.iter().enumerate() {
            let w0 = symgroup::longest_parabolic(lam);
            for (si, s) in tableaux[li].iter().enumerate() {
                let ds_inv = s.word_permutation().inverse();
                for (ti, t) in tableaux[li].iter().enumerate() {
                    let x = ds_inv.compose(&w0).compose(&t.word_permutation());
                    labels.push(LabelIdx { lam: li, s: si, t: ti });
                    diag_perm.push(x);
                }
            }
        }
        assert_eq!(labels.len(), factorial(n), "labels must exhaust S_n");
        let tableau_idx = tableaux
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        let label_pos: HashMap<LabelIdx, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut table = MurphyTable {
            n,
            partitions,
            tableaux,
            parabolic_len,
            labels,
            diag_perm,
            peel_order: Vec::new(),
            dual_label: Vec::new(),
            tableau_idx,
            label_pos,
        };
        let mut order: Vec<usize> = (0..table.labels.len()).collect();
        order.sort_by_key(|&i| {
            let (s, t) = table.tableau_pair(i);
            std::cmp::Reverse(dominance_key(s, t))
        });
        table.peel_order = order;
        table.dual_label = (0..table.labels.len())
            .map(|i| {
                let (s, t) = table.tableau_pair(i);
                table
                    .index_of_pair(&t.conjugate(), &s.conjugate())
                    .expect("conjugate pair is a label")
            })
            .collect();
        table
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    /// Index of a tableau within `self.tableaux[lam]`.
    pub fn tableau_index(&self, lam: usize) -> &HashMap<StandardTableau, usize> {
        &self.tableau_idx[lam]
    }

    pub fn position(&self, label: LabelIdx) -> Option<usize> {
        self.label_pos.get(&label).copied()
    }

    pub fn tableau_pair(&self, idx: usize) -> (&StandardTableau, &StandardTableau) {
        let l = self.labels[idx];
        (&self.tableaux[l.lam][l.s], &self.tableaux[l.lam][l.t])
    }

    /// Resolves a same-shape tableau pair to its flattened label index.
    pub fn index_of_pair(&self, s: &StandardTableau, t: &StandardTableau) -> Option<usize> {
        let lam = self.partitions.iter().position(|p| p == s.shape())?;
        let si = *self.tableau_idx[lam].get(s)?;
        let ti = *self.tableau_idx[lam].get(t)?;
        self.position(LabelIdx { lam, s: si, t: ti })
    }

    pub fn murphy<R: Scalar>(&self, idx: usize) -> HeckeElement<R> {
        let (s, t) = self.tableau_pair(idx);
        murphy_m(s, t)
    }

    pub fn dual_murphy<R: Scalar>(&self, idx: usize) -> HeckeElement<R> {
        let (s, t) = self.tableau_pair(idx);
        dual_murphy_n(s, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentPoly;

    type Elt = HeckeElement<LaurentPoly>;

    #[test]
    fn full_row_murphy_is_parabolic_sum() {
        let lam = Partition::new(vec![3]).unwrap();
        let t = StandardTableau::initial(&lam);
        let m: Elt = murphy_m(&t, &t);
        assert_eq!(m.support_size(), 6);
        for (w, c) in m.terms() {
            assert_eq!(c, &LaurentPoly::v_pow(w.length() as i64));
        }
    }

    #[test]
    fn column_shape_murphy_is_identity() {
        let lam = Partition::new(vec![1, 1, 1]).unwrap();
        let t = StandardTableau::initial(&lam);
        let m: Elt = murphy_m(&t, &t);
        assert_eq!(m, Elt::one(3));
        let n: Elt = dual_murphy_n(&t, &t);
        assert_eq!(n, Elt::one(3));
    }

    #[test]
    fn dual_sum_examples() {
        let lam = Partition::new(vec![2]).unwrap();
        let n: Elt = parabolic_alt_sum(&lam);
        let mut expected = Elt::one(2);
        expected.add_term(Permutation::simple(2, 1), -LaurentPoly::v_pow(-1));
        assert_eq!(n, expected);
    }

    #[test]
    fn dual_murphy_is_sign_twist_of_murphy() {
        // n_{st} = eps_{d(s)} eps_{d(t)} j(m_{st})
        for n in 2..=4 {
            let table = MurphyTable::new(n);
            for idx in 0..table.label_count() {
                let (s, t) = table.tableau_pair(idx);
                let m: Elt = murphy_m(s, t);
                let nd: Elt = dual_murphy_n(s, t);
                let sign = (s.word_permutation().length() + t.word_permutation().length()) % 2;
                let j = m.j_involution();
                let j = if sign == 0 { j } else { j.scale(&LaurentPoly::from_int(-1)) };
                assert_eq!(nd, j);
            }
        }
    }

    #[test]
    fn marked_terms() {
        // m_{st} carries the coefficient v^{l(w_{lam,0})} at the marked
        // permutation d(s)^-1 w_{lam,0} d(t); when the three lengths add
        // that term is also Bruhat-maximal in the support.
        for n in 2..=4 {
            let table = MurphyTable::new(n);
            for idx in 0..table.label_count() {
                let l = table.labels[idx];
                let (s, t) = table.tableau_pair(idx);
                let pl = table.parabolic_len[l.lam] as i64;
                let m: Elt = table.murphy(idx);
                let marked = &table.diag_perm[idx];
                assert_eq!(m.coeff(marked), LaurentPoly::v_pow(pl));

                let nd: Elt = table.dual_murphy(idx);
                let expected = if pl % 2 == 0 {
                    LaurentPoly::v_pow(-pl)
                } else {
                    -LaurentPoly::v_pow(-pl)
                };
                assert_eq!(nd.coeff(marked), expected);

                let additive = s.word_permutation().length()
                    + table.parabolic_len[l.lam]
                    + t.word_permutation().length();
                if marked.length() == additive {
                    let (wmax, cmax) = m.max_term().unwrap();
                    assert_eq!(wmax, marked);
                    assert_eq!(cmax, &LaurentPoly::v_pow(pl));
                    for (w, _) in m.terms() {
                        assert!(w.bruhat_leq(wmax));
                    }
                }
            }
        }
    }
}
