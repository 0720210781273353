use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use super::element::HeckeElement;
use super::scalar::Scalar as _;
use super::jucys::f_projector;
use super::murphy::{murphy_m, LabelIdx, MurphyTable};
use crate::coeff::RationalFn;
use crate::tableaux::StandardTableau;

type QElt = HeckeElement<RationalFn>;

/// Swaps the entries `i`, `i+1` of a standard tableau, returning the
/// result only when it is again standard.
pub fn swap_entries(t: &StandardTableau, i: usize) -> Option<StandardTableau> {
    let rows: Vec<Vec<usize>> = t
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| {
                    if x == i {
                        i + 1
                    } else if x == i + 1 {
                        i
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    StandardTableau::new(rows).ok()
}

/// The coefficient of `f_{us}` in `f_{us} T_i`:
/// `(v - v^-1) c_s(i+1) / (c_s(i+1) - c_s(i))`.
fn action_diagonal(s: &StandardTableau, i: usize) -> RationalFn {
    let ci = RationalFn::v_pow(s.content_exponent(i));
    let ci1 = RationalFn::v_pow(s.content_exponent(i + 1));
    let num = (RationalFn::v_pow(1) - RationalFn::v_pow(-1)) * &ci1;
    num.div(&(ci1 - ci)).expect("distinct adjacent contents")
}

/// The seminormal basis element `f_{st} = F_s m_{st} F_t`, computed from
/// the definition. Quadratic in the support sizes; used to seed the chain
/// construction and as a cross-check.
pub fn seminormal_f_definition(n: usize, s: &StandardTableau, t: &StandardTableau) -> QElt {
    assert_eq!(s.shape(), t.shape(), "seminormal labels must share a shape");
    let m: QElt = murphy_m(s, t);
    f_projector(n, s).mul(&m).mul(&f_projector(n, t))
}

/// The dual seminormal element `g_{st} = F_{s*} n_{st} F_{t*}`, from the
/// definition.
pub fn dual_seminormal_g_definition(n: usize, s: &StandardTableau, t: &StandardTableau) -> QElt {
    assert_eq!(s.shape(), t.shape(), "seminormal labels must share a shape");
    let nd: QElt = super::murphy::dual_murphy_n(s, t);
    f_projector(n, &s.conjugate()).mul(&nd).mul(&f_projector(n, &t.conjugate()))
}

/// All seminormal and dual seminormal basis elements of one rank.
///
/// Only the highest element `f_{t^lam, t^lam}` of each shape is computed
/// through the projector sandwich; the rest of the shape's matrix follows
/// by single-generator multiplications, using the seminormal action
/// formulas to peel off the diagonal part. `g_{st}` is the `j`-image of
/// `f_{st}` up to the sign `eps_{d(s)} eps_{d(t)}`, which the tests check
/// against the defining sandwich.
pub struct SeminormalTable {
    pub f: Vec<QElt>,
    pub g: Vec<QElt>,
    /// Diagonal label index per (lam, t), for the gamma caches.
    diag_idx: Vec<Vec<usize>>,
    /// `gamma_t` in `f_{tt}^2 = gamma_t f_{tt}`, computed on first use.
    gamma: Mutex<HashMap<(usize, usize), RationalFn>>,
    /// Same for the dual basis.
    gamma_dual: Mutex<HashMap<(usize, usize), RationalFn>>,
}

impl SeminormalTable {
    pub fn new(table: &MurphyTable) -> Self {
        let mut f: Vec<Option<QElt>> = vec![None; table.label_count()];

        let blocks: Vec<(usize, Vec<(usize, QElt)>)> = table
            .partitions
            .par_iter()
            .enumerate()
            .map(|(li, lam)| (li, Self::build_shape(table, li, lam)))
            .collect();
        for (_, block) in blocks {
            for (idx, elt) in block {
                f[idx] = Some(elt);
            }
        }

        let f: Vec<QElt> = f.into_iter().map(|e| e.expect("all labels built")).collect();

        // g_{st} = eps_{d(s)} eps_{d(t)} j(f_{st})
        let g: Vec<QElt> = f
            .par_iter()
            .enumerate()
            .map(|(idx, fe)| {
                let (s, t) = table.tableau_pair(idx);
                let parity =
                    (s.word_permutation().length() + t.word_permutation().length()) % 2;
                let je = fe.j_involution();
                if parity == 0 {
                    je
                } else {
                    je.scale(&RationalFn::from_int(-1))
                }
            })
            .collect();

        let diag_idx = table
            .partitions
            .iter()
            .enumerate()
            .map(|(li, _)| {
                (0..table.tableaux[li].len())
                    .map(|ti| table.position(LabelIdx { lam: li, s: ti, t: ti }).unwrap())
                    .collect()
            })
            .collect();
        SeminormalTable {
            f,
            g,
            diag_idx,
            gamma: Mutex::new(HashMap::new()),
            gamma_dual: Mutex::new(HashMap::new()),
        }
    }

    /// Builds one shape's matrix of seminormal elements: the projector
    /// sandwich for the top pair, then single-generator chains.
    fn build_shape(table: &MurphyTable, li: usize, lam: &crate::tableaux::Partition) -> Vec<(usize, QElt)> {
        let n = table.n;
        let stds = &table.tableaux[li];
        let count: usize = table.tableaux.iter().map(|t| t.len() * t.len()).sum();
        let mut f: Vec<Option<QElt>> = vec![None; count];
        {
            // chain order: increasing l(d(t)) from t^lam
            let mut order: Vec<usize> = (0..stds.len()).collect();
            order.sort_by_key(|&i| stds[i].word_permutation().length());
            let top = order[0];
            debug_assert_eq!(stds[top], StandardTableau::initial(lam));

            let seed = seminormal_f_definition(n, &stds[top], &stds[top]);
            let pos = |s: usize, t: usize| table.position(LabelIdx { lam: li, s, t }).unwrap();
            f[pos(top, top)] = Some(seed);

            // first row: vary the second index by right multiplications
            for &ti in &order[1..] {
                let t = &stds[ti];
                let d_len = t.word_permutation().length();
                let mut found = false;
                for i in 1..n {
                    let Some(prev) = swap_entries(t, i) else { continue };
                    if prev.word_permutation().length() + 1 != d_len {
                        continue;
                    }
                    let pi = *table
                        .tableau_index(li)
                        .get(&prev)
                        .expect("predecessor tableau in table");
                    if let Some(base) = &f[pos(top, pi)] {
                        let alpha = action_diagonal(&prev, i);
                        let mut next = base.mul_gen_right(i);
                        next.add_scaled(base, &alpha.neg());
                        f[pos(top, ti)] = Some(next);
                        found = true;
                        break;
                    }
                }
                assert!(found, "chain construction must reach every tableau");
            }

            // remaining rows: vary the first index by left multiplications
            for &si in &order[1..] {
                let s = &stds[si];
                let d_len = s.word_permutation().length();
                let mut step = None;
                for i in 1..n {
                    let Some(prev) = swap_entries(s, i) else { continue };
                    if prev.word_permutation().length() + 1 != d_len {
                        continue;
                    }
                    let pi = *table.tableau_index(li).get(&prev).expect("predecessor");
                    if f[pos(pi, top)].is_some() || pi == top {
                        step = Some((pi, i));
                        break;
                    }
                }
                let (pi, i) = step.expect("chain construction must reach every tableau");
                let alpha = action_diagonal(&stds[pi], i);
                for ti in 0..stds.len() {
                    let base = f[pos(pi, ti)].clone().expect("previous row complete");
                    let mut next = base.mul_gen_left(i);
                    next.add_scaled(&base, &alpha.neg());
                    f[pos(si, ti)] = Some(next);
                }
            }
        }
        f.into_iter()
            .enumerate()
            .filter_map(|(idx, e)| e.map(|e| (idx, e)))
            .collect()
    }

    fn gamma_of(basis: &[QElt], idx: usize) -> RationalFn {
        let ftt = &basis[idx];
        let (wmax, cmax) = ftt.max_term().expect("diagonal element nonzero");
        let sq = ftt.mul(ftt);
        let gamma = sq.coeff(wmax).div(cmax).expect("nonzero leading term");
        assert!(!gamma.is_zero(), "gamma must be invertible");
        debug_assert_eq!(sq, ftt.scale(&gamma));
        gamma
    }

    pub fn gamma(&self, lam: usize, t: usize) -> RationalFn {
        if let Some(hit) = self.gamma.lock().unwrap().get(&(lam, t)) {
            return hit.clone();
        }
        let computed = Self::gamma_of(&self.f, self.diag_idx[lam][t]);
        self.gamma
            .lock()
            .unwrap()
            .entry((lam, t))
            .or_insert(computed)
            .clone()
    }

    pub fn gamma_dual(&self, lam: usize, t: usize) -> RationalFn {
        if let Some(hit) = self.gamma_dual.lock().unwrap().get(&(lam, t)) {
            return hit.clone();
        }
        let computed = Self::gamma_of(&self.g, self.diag_idx[lam][t]);
        self.gamma_dual
            .lock()
            .unwrap()
            .entry((lam, t))
            .or_insert(computed)
            .clone()
    }
}

/// The coefficients in `f_{us} T_i = a f_{us} + b f_{ut}` predicted by the
/// seminormal action formulas, with `t = s(i, i+1)`; `b` is absent when
/// `t` is not standard.
pub fn predicted_action(s: &StandardTableau, i: usize) -> (RationalFn, Option<RationalFn>) {
    match swap_entries(s, i) {
        Some(t) => {
            let a = action_diagonal(s, i);
            let ci = RationalFn::v_pow(s.content_exponent(i));
            let ci1 = RationalFn::v_pow(s.content_exponent(i + 1));
            let b = if t.dominates(s) {
                // moving up in dominance picks up the non-unit coefficient
                let v = RationalFn::v_pow(1);
                let vinv = RationalFn::v_pow(-1);
                let num = (&v * &ci - &vinv * &ci1) * (&vinv * &ci - &v * &ci1);
                let den = (&ci1 - &ci) * (&ci1 - &ci);
                num.div(&den).expect("distinct adjacent contents")
            } else {
                RationalFn::one()
            };
            (a, Some(b))
        }
        None => {
            let (ri, _) = s.position_of(i).unwrap();
            let (ri1, _) = s.position_of(i + 1).unwrap();
            let a = if ri == ri1 {
                // same row
                RationalFn::v_pow(1)
            } else {
                // same column
                RationalFn::v_pow(-1).neg()
            };
            (a, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::Permutation;
    use crate::tableaux::Partition;

    #[test]
    fn rank_two_seminormal_row() {
        let lam = Partition::new(vec![2]).unwrap();
        let t = StandardTableau::initial(&lam);
        let f = seminormal_f_definition(2, &t, &t);
        let mut expected = QElt::one(2);
        expected.add_term(Permutation::simple(2, 1), RationalFn::v_pow(1));
        assert_eq!(f, expected);
    }

    #[test]
    fn chain_matches_definition_small() {
        for n in 1..=3 {
            let table = MurphyTable::new(n);
            let semi = SeminormalTable::new(&table);
            for idx in 0..table.label_count() {
                let (s, t) = table.tableau_pair(idx);
                assert_eq!(
                    semi.f[idx],
                    seminormal_f_definition(n, s, t),
                    "chain f differs from definition at ({s}; {t})"
                );
                assert_eq!(
                    semi.g[idx],
                    dual_seminormal_g_definition(n, s, t),
                    "j-twist g differs from definition at ({s}; {t})"
                );
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let table = MurphyTable::new(2);
        let semi = SeminormalTable::new(&table);
        // lam = (2): gamma = 1 + v^2
        let expected = RationalFn::one() + RationalFn::v_pow(2);
        assert_eq!(semi.gamma(0, 0), expected);

        let table1 = MurphyTable::new(1);
        let semi1 = SeminormalTable::new(&table1);
        assert!(semi1.gamma(0, 0).is_one());
    }

    #[test]
    fn gamma_nonzero_n4() {
        let table = MurphyTable::new(4);
        let semi = SeminormalTable::new(&table);
        for (li, ts) in table.tableaux.iter().enumerate() {
            for ti in 0..ts.len() {
                assert!(!semi.gamma(li, ti).is_zero());
            }
        }
    }

    #[test]
    fn structure_constants_small() {
        // f_{st} f_{uv} = delta_{tu} gamma_t f_{sv}
        let n = 3;
        let table = MurphyTable::new(n);
        let semi = SeminormalTable::new(&table);
        for a in 0..table.label_count() {
            let la = table.labels[a];
            for b in 0..table.label_count() {
                let lb = table.labels[b];
                let prod = semi.f[a].mul(&semi.f[b]);
                if la.lam == lb.lam && la.t == lb.s {
                    let target = table
                        .position(LabelIdx { lam: la.lam, s: la.s, t: lb.t })
                        .unwrap();
                    let gamma = semi.gamma(la.lam, la.t);
                    assert_eq!(prod, semi.f[target].scale(&gamma));
                } else {
                    assert!(prod.is_zero(), "expected orthogonality");
                }
            }
        }
    }

    #[test]
    fn g_proportional_to_conjugate_f() {
        let n = 3;
        let table = MurphyTable::new(n);
        let semi = SeminormalTable::new(&table);
        for idx in 0..table.label_count() {
            let (s, t) = table.tableau_pair(idx);
            let conj = table.index_of_pair(&s.conjugate(), &t.conjugate()).unwrap();
            let g = &semi.g[idx];
            let fc = &semi.f[conj];
            let (wmax, cmax) = fc.max_term().unwrap();
            let ratio = g.coeff(wmax).div(cmax).unwrap();
            assert!(!ratio.is_zero());
            assert_eq!(*g, fc.scale(&ratio));
        }
    }

    #[test]
    fn action_formulas_small() {
        let n = 3;
        let table = MurphyTable::new(n);
        let semi = SeminormalTable::new(&table);
        for idx in 0..table.label_count() {
            let l = table.labels[idx];
            let (_, s) = table.tableau_pair(idx);
            for i in 1..n {
                let got = semi.f[idx].mul_gen_right(i);
                let (a, b) = predicted_action(s, i);
                let mut expected = semi.f[idx].scale(&a);
                if let Some(b) = b {
                    let t = swap_entries(s, i).unwrap();
                    let ti = table.tableau_index(l.lam)[&t];
                    let tgt = table.position(LabelIdx { lam: l.lam, s: l.s, t: ti }).unwrap();
                    expected.add_scaled(&semi.f[tgt], &b);
                }
                assert_eq!(got, expected, "action mismatch at label {idx}, i = {i}");
            }
        }
    }
}
