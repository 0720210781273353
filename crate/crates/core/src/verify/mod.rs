//! Theorem-by-theorem verification suites over exhaustive small-rank
//! sweeps, producing machine-readable pass/fail reports. A failure record
//! carries the inputs, the expected and observed values, and a CLI
//! invocation that replays the check.

mod mutation;
mod oracle;
mod report;
mod suites;

pub use mutation::mutation_report;
pub use oracle::cprime_by_bar_solve;
pub use report::{Failure, Recorder, Report};
pub use suites::transition_sweep;

use thiserror::Error;

use crate::caps::RankCapExceeded;
use crate::hecke::{HeckeContext, HeckeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    RankCap(#[from] RankCapExceeded),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Left/right preorder relations refine recording/insertion tableau
    /// dominance.
    Dominance,
    /// KL basis against the Murphy basis, both directions, with
    /// integrality, marked leading coefficients and strong-dominance
    /// support.
    MurphyTransition,
    /// KL basis against the seminormal basis over `Q(v)`.
    SeminormalTransition,
    /// Twisted KL basis against the dual seminormal and dual Murphy bases.
    TwistedTransition,
    /// Recording-tableau restriction along tail coset decompositions, and
    /// the insertion tableaux of the extreme coset elements.
    Restriction,
    /// Seminormal structure constants, generator action, triangular
    /// change of basis and the dual/conjugate proportionality.
    SeminormalStructure,
    /// The three fixed counterexamples to the converse of the dominance
    /// theorem (ranks 3, 4, 5).
    Counterexamples,
    /// Bar invariance, unitriangularity and degree bounds of every
    /// `C'_w`, cross-checked against the independent bar-solve oracle.
    KlWelldefined,
    /// Cells against the RSK dictionary: Q/P fibers, shape dominance for
    /// the two-sided preorder, cell counts.
    CellsRsk,
    /// Parabolic expansion of `C'_w` over `{T_u C'_y}`.
    Parabolic,
    /// Corrupt single KL coefficients and demand that the suites notice.
    Mutation,
}

pub const ALL_SUITES: [Suite; 11] = [
    Suite::Dominance,
    Suite::MurphyTransition,
    Suite::SeminormalTransition,
    Suite::TwistedTransition,
    Suite::Restriction,
    Suite::SeminormalStructure,
    Suite::Counterexamples,
    Suite::KlWelldefined,
    Suite::CellsRsk,
    Suite::Parabolic,
    Suite::Mutation,
];

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Dominance => "dominance",
            Suite::MurphyTransition => "murphy-transition",
            Suite::SeminormalTransition => "seminormal-transition",
            Suite::TwistedTransition => "twisted-transition",
            Suite::Restriction => "restriction",
            Suite::SeminormalStructure => "seminormal-structure",
            Suite::Counterexamples => "counterexamples",
            Suite::KlWelldefined => "kl-welldefined",
            Suite::CellsRsk => "cells-rsk",
            Suite::Parabolic => "parabolic",
            Suite::Mutation => "mutation",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, VerifyError> {
        ALL_SUITES
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }

    /// Default highest rank the suite sweeps; chosen so a full run stays
    /// within desk-scale minutes with exact arithmetic.
    pub fn default_cap(&self) -> usize {
        match self {
            Suite::Dominance => 5,
            Suite::MurphyTransition => 5,
            Suite::SeminormalTransition => 5,
            Suite::TwistedTransition => 5,
            Suite::Restriction => 6,
            Suite::SeminormalStructure => 4,
            Suite::Counterexamples => 5,
            Suite::KlWelldefined => 5,
            Suite::CellsRsk => 5,
            Suite::Parabolic => 4,
            Suite::Mutation => 3,
        }
    }

    /// Fixed suites run one fixed sweep rather than a per-rank one.
    pub fn is_fixed(&self) -> bool {
        matches!(self, Suite::Counterexamples | Suite::Mutation)
    }

    /// Runs the suite at exactly rank `n` (ignored by fixed suites).
    pub fn run_at(&self, n: usize) -> Result<Report, VerifyError> {
        let cap = env_cap().unwrap_or_else(|| self.default_cap());
        if !self.is_fixed() && n > cap {
            return Err(RankCapExceeded { requested: n, cap }.into());
        }
        let mut rec = Recorder::new(self.name(), if self.is_fixed() { self.default_cap() } else { n });
        match self {
            Suite::Counterexamples => suites::counterexamples_with(&mut rec),
            Suite::Mutation => mutation::mutation_with(3, &mut rec),
            Suite::Restriction => suites::restriction_with(n, &mut rec),
            _ => {
                let ctx = HeckeContext::shared(n)?;
                match self {
                    Suite::Dominance => suites::dominance_with(&ctx, &mut rec),
                    Suite::MurphyTransition => suites::murphy_transition_with(&ctx, &mut rec),
                    Suite::SeminormalTransition => suites::seminormal_transition_with(&ctx, &mut rec),
                    Suite::TwistedTransition => suites::twisted_transition_with(&ctx, &mut rec),
                    Suite::SeminormalStructure => suites::seminormal_structure_with(&ctx, &mut rec),
                    Suite::KlWelldefined => suites::kl_welldefined_with(&ctx, &mut rec),
                    Suite::CellsRsk => suites::cells_rsk_with(&ctx, &mut rec),
                    Suite::Parabolic => suites::parabolic_with(&ctx, &mut rec),
                    _ => unreachable!(),
                }
            }
        }
        Ok(rec.finish())
    }

    /// Runs the suite over every rank up to `n_max` (default: the suite
    /// cap). Errors if `n_max` exceeds the configured cap.
    pub fn run(&self, n_max: Option<usize>) -> Result<Vec<Report>, VerifyError> {
        if self.is_fixed() {
            return Ok(vec![self.run_at(0)?]);
        }
        let cap = env_cap().unwrap_or_else(|| self.default_cap());
        let top = n_max.unwrap_or(cap);
        if top > cap {
            return Err(RankCapExceeded { requested: top, cap }.into());
        }
        (1..=top).map(|n| self.run_at(n)).collect()
    }
}

fn env_cap() -> Option<usize> {
    std::env::var("HECKE_N_MAX").ok().and_then(|s| s.trim().parse().ok())
}

/// Runs a selection of suites (all of them for `None`), each over its own
/// rank range.
pub fn run_suites(selection: Option<Suite>, n_max: Option<usize>) -> Result<Vec<Report>, VerifyError> {
    let list: Vec<Suite> = match selection {
        Some(s) => vec![s],
        None => ALL_SUITES.to_vec(),
    };
    let mut out = Vec::new();
    for suite in list {
        out.extend(suite.run(n_max)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_rank_two() {
        for suite in ALL_SUITES {
            if suite.is_fixed() {
                continue;
            }
            let report = suite.run_at(2).unwrap();
            assert!(report.passed(), "{}: {:?}", suite.name(), report.failures);
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn rank_cap_is_enforced() {
        let err = Suite::SeminormalStructure.run(Some(9)).unwrap_err();
        assert!(matches!(err, VerifyError::RankCap(_)));
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in ALL_SUITES {
            assert_eq!(Suite::parse(suite.name()).unwrap(), suite);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = Suite::Restriction.run_at(3).unwrap();
        let b = Suite::Restriction.run_at(3).unwrap();
        assert_eq!(a.checked, b.checked);
        assert_eq!(a.failures, b.failures);
        let ja = serde_json::to_value(&a).unwrap();
        let jb = serde_json::to_value(&b).unwrap();
        let strip = |mut v: serde_json::Value| {
            v.as_object_mut().unwrap().remove("elapsed_ms");
            v
        };
        assert_eq!(strip(ja), strip(jb));
    }
}
