//! An independent construction of the Kazhdan-Lusztig basis element
//! `C'_w`, used only to cross-check the recursion: impose bar invariance
//! and the degree bounds directly and solve the resulting integer linear
//! system. Nothing here touches `mu` or the multiplication recursion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::LaurentPoly;
use crate::hecke::{HeckeElement, KlContext};
use crate::symgroup::Permutation;

type Elt = HeckeElement<LaurentPoly>;

/// Solves for `C'_w` from scratch: unknown integer coefficients `p_{y,j}`
/// for `y < w`, `0 <= j <= (l(w)-l(y)-1)/2`, subject to
/// `bar(h) = h` for `h = T_w + sum p_{y,j} v^{l(y)-l(w)+2j} T_y`.
/// Returns an error if the system is not uniquely solvable in integers.
pub fn cprime_by_bar_solve(ctx: &KlContext, w: &Permutation) -> Result<Elt, String> {
    let n = ctx.n();
    let lw = w.length() as i64;
    // variables
    let mut vars: Vec<(Permutation, i64)> = Vec::new();
    for y in Permutation::all(n) {
        if &y == w || !y.bruhat_leq(w) {
            continue;
        }
        let ly = y.length() as i64;
        let top = (lw - ly - 1) / 2;
        for j in 0..=top {
            vars.push((y.clone(), j));
        }
    }

    // residual(h) = bar(h) - h, expanded as columns over (perm, exponent)
    let mut row_index: BTreeMap<(Permutation, i64), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, BigInt>> = Vec::new();
    let mut rhs_rows: BTreeMap<usize, BigInt> = BTreeMap::new();

    let index_of = |key: (Permutation, i64), row_index: &mut BTreeMap<(Permutation, i64), usize>| {
        let next = row_index.len();
        *row_index.entry(key).or_insert(next)
    };

    let add_element = |elt: &Elt,
                           scale_exp: i64,
                           sign: i64,
                           rows: &mut BTreeMap<usize, BigInt>,
                           row_index: &mut BTreeMap<(Permutation, i64), usize>| {
        for (x, c) in elt.terms() {
            for (e, a) in c.terms() {
                let r = index_of((x.clone(), e + scale_exp), row_index);
                let entry = rows.entry(r).or_insert_with(BigInt::zero);
                *entry += a * BigInt::from(sign);
            }
        }
    };

    for (y, j) in &vars {
        let ly = y.length() as i64;
        let mut rows = BTreeMap::new();
        // bar contribution: + v^{l(w)-l(y)-2j} * bar(T_y)
        let bar_ty = ctx.bar_t(y);
        add_element(&bar_ty, lw - ly - 2 * j, 1, &mut rows, &mut row_index);
        // direct contribution: - v^{l(y)-l(w)+2j} * T_y
        add_element(&Elt::t_basis(y), ly - lw + 2 * j, -1, &mut rows, &mut row_index);
        columns.push(rows);
    }
    // constant part: bar(T_w) - T_w must be cancelled
    let bar_tw = ctx.bar_t(w);
    add_element(&bar_tw, 0, -1, &mut rhs_rows, &mut row_index);
    add_element(&Elt::t_basis(w), 0, 1, &mut rhs_rows, &mut row_index);

    let nrows = row_index.len();
    let ncols = vars.len();
    let mut a = vec![vec![BigRational::zero(); ncols + 1]; nrows];
    for (ci, col) in columns.iter().enumerate() {
        for (&r, val) in col {
            a[r][ci] = BigRational::from_integer(val.clone());
        }
    }
    for (&r, val) in &rhs_rows {
        a[r][ncols] = BigRational::from_integer(val.clone());
    }

    // Gaussian elimination
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = BigRational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for cix in 0..=ncols {
                    let t = &a[row][cix] * &f;
                    a[r][cix] -= t;
                }
            }
        }
        pivot_of_col[col] = row;
        row += 1;
    }
    // consistency: no row of the form 0 = nonzero
    for r in row..nrows {
        if !a[r][ncols].is_zero() {
            return Err(format!("bar-invariance system inconsistent for {w}"));
        }
    }
    // uniqueness: every column has a pivot
    if pivot_of_col.contains(&usize::MAX) {
        return Err(format!("bar-invariance system underdetermined for {w}"));
    }

    let mut solution: Vec<BigInt> = Vec::with_capacity(ncols);
    for col in 0..ncols {
        let val = a[pivot_of_col[col]][ncols].clone();
        if !val.denom().is_one() {
            return Err(format!("non-integer Kazhdan-Lusztig coefficient for {w}"));
        }
        solution.push(val.numer().clone());
    }

    let mut out = Elt::t_basis(w);
    for ((y, j), val) in vars.into_iter().zip(solution) {
        if val.is_zero() {
            continue;
        }
        let ly = y.length() as i64;
        out.add_term(y, LaurentPoly::monomial(ly - lw + 2 * j, val));
    }
    // the resulting element must be bar-invariant by construction
    debug_assert_eq!(ctx.bar_element(&out), out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_matches_recursion_small() {
        for n in 1..=3 {
            let ctx = KlContext::new(n);
            for w in Permutation::all(n) {
                let solved = cprime_by_bar_solve(&ctx, &w).unwrap();
                assert_eq!(solved, *ctx.cprime(&w), "oracle disagrees at {w}");
            }
        }
    }
}
