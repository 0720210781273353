//! Mutation sensitivity: corrupt one Kazhdan-Lusztig coefficient in a
//! fresh context and demonstrate that the verification suites notice.
//! This is what makes a clean pass of the other suites meaningful.

use super::report::{Recorder, Report};
use super::suites::{kl_welldefined_with, murphy_transition_with, oneline};
use crate::coeff::LaurentPoly;
use crate::hecke::HeckeContext;
use crate::symgroup::Permutation;

/// Every single-coefficient corruption of the rank-`n` Kazhdan-Lusztig
/// table: for each `y <= w` and each exponent slot the degree bound
/// allows, bump that coefficient of `P_{y,w}` by one.
fn mutations(n: usize) -> Vec<(Permutation, Permutation, i64)> {
    let mut out = Vec::new();
    for w in Permutation::all(n) {
        for y in Permutation::all(n) {
            if !y.bruhat_leq(&w) {
                continue;
            }
            let diff = w.length() as i64 - y.length() as i64;
            let top = if y == w { 0 } else { (diff - 1) / 2 };
            for j in 0..=top {
                out.push((w.clone(), y.clone(), -diff + 2 * j));
            }
        }
    }
    out
}

pub fn mutation_with(n: usize, rec: &mut Recorder) {
    for (w, y, exp) in mutations(n) {
        let ctx = HeckeContext::new(n).expect("mutation rank under cap");
        ctx.kl().precompute_all();
        let mut corrupted = (*ctx.kl().cprime(&w)).clone();
        corrupted.add_term(y.clone(), LaurentPoly::v_pow(exp));
        ctx.kl().inject_cprime(&w, corrupted);

        let mut probe = Recorder::new("probe", n);
        kl_welldefined_with(&ctx, &mut probe);
        murphy_transition_with(&ctx, &mut probe);
        let caught = !probe.finish().passed();
        rec.check(
            caught,
            &format!("bump coefficient of C'_{} at T_{} by v^{exp}", oneline(&w), oneline(&y)),
            "at least one suite failure",
            if caught { "caught" } else { "undetected" },
            &format!("hecke verify --suite mutation --n-max {n}"),
        );
    }
}

/// Runs the rank-3 mutation sweep and reports which corruptions were
/// caught.
pub fn mutation_report() -> Report {
    let mut rec = Recorder::new("mutation", 3);
    mutation_with(3, &mut rec);
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rank3_mutation_is_caught() {
        let report = mutation_report();
        assert!(report.checked >= 19, "expected a full mutation sweep");
        assert!(report.passed(), "undetected mutations: {:?}", report.failures);
    }
}
