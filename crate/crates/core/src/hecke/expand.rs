use std::collections::BTreeMap;

use rayon::prelude::*;

use super::context::HeckeContext;
use super::murphy::dominance_key;
use super::scalar::Scalar as _;
use super::element::HeckeElement;
use super::HeckeError;
use crate::coeff::RationalFn;
use crate::symgroup::{coset_decompose_tail, Permutation};

type QElt = HeckeElement<RationalFn>;

/// Bases indexed by permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermBasis {
    T,
    Cprime,
    CTwisted,
}

/// Cellular bases indexed by same-shape tableau pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairBasis {
    Murphy,
    DualMurphy,
    Seminormal,
    DualSeminormal,
}

/// Greedy elimination against a basis that is unitriangular over the
/// `T`-basis in (length, lex) order: repeatedly match the maximal
/// remaining term to its unique basis element and subtract.
fn greedy<K: Ord + Clone + std::fmt::Debug>(
    h: &QElt,
    resolve: impl Fn(&Permutation) -> Result<(K, QElt, RationalFn), HeckeError>,
) -> Result<BTreeMap<K, RationalFn>, HeckeError> {
    let mut rem = h.clone();
    let mut out = BTreeMap::new();
    let mut guard = 0usize;
    let max_steps = h.support_size().max(1) * 4096;
    while let Some((w, c)) = rem.max_term() {
        let (w, c) = (w.clone(), c.clone());
        guard += 1;
        if guard > max_steps {
            return Err(HeckeError::Internal("expansion failed to terminate".into()));
        }
        let (key, elt, diag) = resolve(&w)?;
        let coeff = c.div(&diag).map_err(|_| {
            HeckeError::Internal(format!("zero diagonal coefficient at {w}"))
        })?;
        if out.insert(key.clone(), coeff.clone()).is_some() {
            return Err(HeckeError::Internal(format!(
                "label {key:?} eliminated twice; basis not triangular"
            )));
        }
        rem.add_scaled(&elt, &coeff.neg());
        if !rem.coeff(&w).is_zero() {
            return Err(HeckeError::Internal(format!(
                "leading term at {w} did not cancel"
            )));
        }
    }
    Ok(out)
}

/// Expands `h` over a permutation-indexed basis. Coefficients are exact
/// rational functions; for the `T` basis this is just a re-keying.
pub fn expand_perm_basis(
    ctx: &HeckeContext,
    h: &QElt,
    basis: PermBasis,
) -> Result<BTreeMap<Permutation, RationalFn>, HeckeError> {
    assert_eq!(h.n(), ctx.n(), "rank mismatch");
    match basis {
        PermBasis::T => Ok(h.terms().map(|(w, c)| (w.clone(), c.clone())).collect()),
        PermBasis::Cprime => greedy(h, |w| {
            Ok((w.clone(), (*ctx.cprime_rational(w)).clone(), RationalFn::one()))
        }),
        PermBasis::CTwisted => greedy(h, |w| {
            Ok((w.clone(), (*ctx.c_twisted_rational(w)).clone(), RationalFn::one()))
        }),
    }
}

/// Expands `h` over a cellular basis, keyed by the label indices of the
/// context's [`MurphyTable`](super::MurphyTable).
pub fn expand_pair_basis(
    ctx: &HeckeContext,
    h: &QElt,
    basis: PairBasis,
) -> Result<BTreeMap<usize, RationalFn>, HeckeError> {
    assert_eq!(h.n(), ctx.n(), "rank mismatch");
    match basis {
        PairBasis::Murphy => peel_cellular(ctx, h, false),
        PairBasis::DualMurphy => peel_cellular(ctx, h, true),
        PairBasis::Seminormal => {
            let m_coords = peel_cellular(ctx, h, false)?;
            substitute(ctx.seminormal_over_murphy()?, m_coords)
        }
        PairBasis::DualSeminormal => {
            let n_coords = peel_cellular(ctx, h, true)?;
            substitute(ctx.dual_seminormal_over_dual_murphy()?, n_coords)
        }
    }
}

/// The symmetrizing trace `tau` of a product, computed without
/// multiplying: `tau(T_x T_y) = [x = y^-1]`, so
/// `tau(a b) = sum over x of a_x b_{x^-1}`.
pub fn tau_product(a: &QElt, b: &QElt) -> RationalFn {
    let mut acc = RationalFn::zero();
    for (x, c) in a.terms() {
        let other = b.coeff(&x.inverse());
        if !other.is_zero() {
            acc = acc + c * &other;
        }
    }
    acc
}

/// Expands over the Murphy (`dual = false`) or dual Murphy (`dual = true`)
/// basis by trace-duality peeling.
///
/// The two cellular bases are dual under `tau` up to strong-dominance
/// unitriangularity: `tau(m_{st} n_{uv})` vanishes unless
/// `(u, v)` is componentwise dominated by `(t*, s*)`, with a unit value at
/// equality. Walking the labels from the bottom of the dominance order up
/// therefore isolates one coefficient per step. The expansion ends with an
/// exactness check: a nonzero final remainder would mean the assumed
/// pairing structure failed.
fn peel_cellular(
    ctx: &HeckeContext,
    h: &QElt,
    dual: bool,
) -> Result<BTreeMap<usize, RationalFn>, HeckeError> {
    let table = ctx.murphy_table();
    let mut rem = h.clone();
    let mut out = BTreeMap::new();
    for &idx in &table.peel_order {
        if rem.is_zero() {
            break;
        }
        let dual_idx = table.dual_label[idx];
        let pairing = if dual {
            ctx.murphy_rational(dual_idx)
        } else {
            ctx.dual_murphy_rational(dual_idx)
        };
        let val = tau_product(&rem, &pairing);
        if val.is_zero() {
            continue;
        }
        let basis_elt = if dual {
            ctx.dual_murphy_rational(idx)
        } else {
            ctx.murphy_rational(idx)
        };
        let diag = tau_product(&basis_elt, &pairing);
        let c = val.div(&diag).map_err(|_| {
            HeckeError::Internal(format!("cellular pairing diagonal vanished at label {idx}"))
        })?;
        rem.add_scaled(&basis_elt, &c.neg());
        out.insert(idx, c);
    }
    if !rem.is_zero() {
        return Err(HeckeError::Internal(
            "cellular peeling left a remainder; duality triangularity violated".into(),
        ));
    }
    Ok(out)
}

/// Transition data from a cellular basis `b` to a seminormal-type basis
/// `f`: for each label, the `b`-coordinates of the corresponding `f`
/// element, together with an elimination order compatible with strong
/// dominance (most-dominated labels first).
pub struct Transition {
    /// `coords[idx]` = b-coordinates of f-element `idx`, diagonal included.
    pub coords: Vec<BTreeMap<usize, RationalFn>>,
    /// For each target label, the (source, coefficient) pairs with
    /// source != target contributing to that coordinate.
    pub contrib: Vec<Vec<(usize, RationalFn)>>,
    /// Label indices, most-dominated first.
    pub order: Vec<usize>,
}

impl Transition {
    pub fn new(
        ctx: &HeckeContext,
        elements: &[QElt],
        dual: bool,
    ) -> Result<Transition, HeckeError> {
        let table = ctx.murphy_table();
        let coords: Vec<BTreeMap<usize, RationalFn>> = elements
            .par_iter()
            .enumerate()
            .map(|(idx, f)| {
                let c = peel_cellular(ctx, f, dual)?;
                match c.get(&idx) {
                    Some(diag) if diag.is_one() => Ok(c),
                    other => Err(HeckeError::Internal(format!(
                        "transition diagonal at label {idx} is {other:?}, expected 1"
                    ))),
                }
            })
            .collect::<Result<_, _>>()?;
        let key = |idx: usize| {
            let (s, t) = table.tableau_pair(idx);
            dominance_key(s, t)
        };
        let mut contrib: Vec<Vec<(usize, RationalFn)>> = vec![Vec::new(); elements.len()];
        for (src, c) in coords.iter().enumerate() {
            for (&tgt, r) in c {
                if tgt == src {
                    continue;
                }
                if key(tgt) >= key(src) {
                    return Err(HeckeError::Internal(format!(
                        "transition support at label {tgt} not above source {src}"
                    )));
                }
                contrib[tgt].push((src, r.clone()));
            }
        }
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(key(i)));
        Ok(Transition { coords, contrib, order })
    }
}

/// Solves `sum over st of c_st * f_st = h` given the `b`-coordinates of
/// `h`, walking labels from the bottom of the dominance order up.
fn substitute(
    trans: &Transition,
    b_coords: BTreeMap<usize, RationalFn>,
) -> Result<BTreeMap<usize, RationalFn>, HeckeError> {
    let mut out: BTreeMap<usize, RationalFn> = BTreeMap::new();
    for &idx in &trans.order {
        let mut c = b_coords.get(&idx).cloned().unwrap_or_else(RationalFn::zero);
        for (src, r) in &trans.contrib[idx] {
            if let Some(cs) = out.get(src) {
                c = c - r * cs;
            }
        }
        if !c.is_zero() {
            out.insert(idx, c);
        }
    }
    Ok(out)
}

/// Expands `C'_w` over the basis `{T_u C'_y}` with `u` a minimal-length
/// left coset representative of `S_m` and `y` in `S_m`. The computation is
/// exact over `Z[v, v^-1]`: the basis is unitriangular over the `T`-basis
/// with unit diagonal.
pub fn expand_parabolic(
    ctx: &HeckeContext,
    w: &Permutation,
    m: usize,
) -> Result<BTreeMap<(Permutation, Permutation), crate::coeff::LaurentPoly>, HeckeError> {
    let n = ctx.n();
    assert!(m >= 1 && m <= n, "expand_parabolic needs 1 <= m <= n");
    let mut rem = (*ctx.kl().cprime(w)).clone();
    let mut out = BTreeMap::new();
    let mut guard = 0usize;
    while let Some((x, c)) = rem.max_term() {
        guard += 1;
        if guard > Permutation::all(n).len() + 1 {
            return Err(HeckeError::Internal("parabolic expansion failed to terminate".into()));
        }
        let (d, z) = coset_decompose_tail(x, m);
        let elt = HeckeElement::t_basis(&d).mul(&ctx.kl().cprime(&z));
        let c = c.clone();
        rem.add_scaled(&elt, &(-&c));
        if out.insert((d, z), c).is_some() {
            return Err(HeckeError::Internal("parabolic label eliminated twice".into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentPoly;
    use crate::tableaux::{Partition, StandardTableau};

    #[test]
    fn tau_is_the_symmetrizing_trace() {
        // tau(T_x T_y) = [x = y^-1], checked against honest products
        for n in 1..=4 {
            for x in Permutation::all(n) {
                let tx = QElt::t_basis(&x);
                for y in Permutation::all(n) {
                    let ty = QElt::t_basis(&y);
                    let honest = tx.mul(&ty).coeff(&Permutation::identity(n));
                    let expected = if y == x.inverse() { RationalFn::one() } else { RationalFn::zero() };
                    assert_eq!(honest, expected, "tau(T_{x} T_{y})");
                    assert_eq!(tau_product(&tx, &ty), expected);
                }
            }
        }
    }

    #[test]
    fn cprime_over_murphy_rank_two() {
        let ctx = HeckeContext::new(2).unwrap();
        let s1 = Permutation::simple(2, 1);
        let h = ctx.cprime_rational(&s1);
        let coords = expand_pair_basis(&ctx, &h, PairBasis::Murphy).unwrap();
        // single coordinate v^-1 at (t^(2), t^(2))
        assert_eq!(coords.len(), 1);
        let (&idx, c) = coords.iter().next().unwrap();
        let table = ctx.murphy_table();
        let (s, t) = table.tableau_pair(idx);
        let row = StandardTableau::initial(&Partition::new(vec![2]).unwrap());
        assert_eq!(s, &row);
        assert_eq!(t, &row);
        assert_eq!(c, &RationalFn::v_pow(-1));
    }

    #[test]
    fn cprime_longest_over_murphy() {
        for n in 2..=4 {
            let ctx = HeckeContext::new(n).unwrap();
            let w0 = Permutation::longest(n);
            let h = ctx.cprime_rational(&w0);
            let coords = expand_pair_basis(&ctx, &h, PairBasis::Murphy).unwrap();
            assert_eq!(coords.len(), 1);
            let (&idx, c) = coords.iter().next().unwrap();
            let table = ctx.murphy_table();
            let (s, t) = table.tableau_pair(idx);
            let row = StandardTableau::initial(&Partition::new(vec![n]).unwrap());
            assert_eq!(s, &row);
            assert_eq!(t, &row);
            let l = (n * (n - 1) / 2) as i64;
            assert_eq!(c, &RationalFn::v_pow(-l));
        }
    }

    #[test]
    fn expansions_reconstruct() {
        let n = 3;
        let ctx = HeckeContext::new(n).unwrap();
        let table = ctx.murphy_table();
        // a dense-ish test element
        let mut h = QElt::one(n);
        for (k, w) in Permutation::all(n).into_iter().enumerate() {
            h.add_term(w, RationalFn::v_pow(k as i64 - 2));
        }
        for basis in [PairBasis::Murphy, PairBasis::DualMurphy, PairBasis::Seminormal, PairBasis::DualSeminormal] {
            let coords = expand_pair_basis(&ctx, &h, basis).unwrap();
            let mut back = QElt::zero(n);
            for (idx, c) in &coords {
                let elt = match basis {
                    PairBasis::Murphy => (*ctx.murphy_rational(*idx)).clone(),
                    PairBasis::DualMurphy => (*ctx.dual_murphy_rational(*idx)).clone(),
                    PairBasis::Seminormal => ctx.seminormal().unwrap().f[*idx].clone(),
                    PairBasis::DualSeminormal => ctx.seminormal().unwrap().g[*idx].clone(),
                };
                back.add_scaled(&elt, c);
            }
            assert_eq!(back, h, "reconstruction failed for {basis:?}");
        }
        for basis in [PermBasis::T, PermBasis::Cprime, PermBasis::CTwisted] {
            let coords = expand_perm_basis(&ctx, &h, basis).unwrap();
            let mut back = QElt::zero(n);
            for (w, c) in &coords {
                let elt = match basis {
                    PermBasis::T => QElt::t_basis(w),
                    PermBasis::Cprime => (*ctx.cprime_rational(w)).clone(),
                    PermBasis::CTwisted => (*ctx.c_twisted_rational(w)).clone(),
                };
                back.add_scaled(&elt, c);
            }
            assert_eq!(back, h, "reconstruction failed for {basis:?}");
        }
        let _ = table;
    }

    #[test]
    fn murphy_over_seminormal_matches_triangularity() {
        // m_{st} over the seminormal basis: unit diagonal, support above
        let n = 3;
        let ctx = HeckeContext::new(n).unwrap();
        let table = ctx.murphy_table();
        for idx in 0..table.label_count() {
            let m = (*ctx.murphy_rational(idx)).clone();
            let coords = expand_pair_basis(&ctx, &m, PairBasis::Seminormal).unwrap();
            assert!(coords.get(&idx).unwrap().is_one());
            let (s, t) = table.tableau_pair(idx);
            for (&other, _) in coords.iter().filter(|(&i, _)| i != idx) {
                let (u, v) = table.tableau_pair(other);
                assert!(u.dominates(s) && v.dominates(t) && (u, v) != (s, t));
            }
        }
    }

    #[test]
    fn parabolic_expansion_examples() {
        let ctx = HeckeContext::new(4).unwrap();
        for w in Permutation::all(4) {
            // m = n: single coordinate 1 at (e, w)
            let coords = expand_parabolic(&ctx, &w, 4).unwrap();
            assert_eq!(coords.len(), 1);
            let c = coords.get(&(Permutation::identity(4), w.clone())).unwrap();
            assert!(c.is_one());
        }
        // w in S_m: single coordinate at (e, w)
        let w = Permutation::simple(4, 1);
        let coords = expand_parabolic(&ctx, &w, 2).unwrap();
        assert_eq!(coords.len(), 1);
        assert!(coords.get(&(Permutation::identity(4), w)).unwrap().is_one());

        // worked example: w = s1 s3 s4 in S_6, m = 3
        let ctx6 = HeckeContext::new(6).unwrap();
        let w = Permutation::from_word(6, &[1, 3, 4]).unwrap();
        let coords = expand_parabolic(&ctx6, &w, 3).unwrap();
        let d = Permutation::from_word(6, &[3, 4]).unwrap();
        let z = Permutation::simple(6, 1);
        assert!(coords.get(&(d, z)).unwrap().is_one());
    }

    #[test]
    fn parabolic_reconstructs() {
        let ctx = HeckeContext::new(4).unwrap();
        for w in Permutation::all(4) {
            for m in 1..=4 {
                let coords = expand_parabolic(&ctx, &w, m).unwrap();
                let mut back = HeckeElement::<LaurentPoly>::zero(4);
                for ((d, z), c) in &coords {
                    let elt = HeckeElement::t_basis(d).mul(&ctx.kl().cprime(z));
                    back.add_scaled(&elt, c);
                }
                assert_eq!(back, *ctx.kl().cprime(&w));
            }
        }
    }
}
