//! Rank caps for the expensive sweeps. Exact arithmetic over `S_n` grows
//! factorially, so every entry point that enumerates a whole rank checks a
//! cap first. The `HECKE_N_MAX` environment variable overrides all of them.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    /// Cell preorder construction (dense n! x n! closure).
    Preorder,
    /// Kazhdan-Lusztig table construction and T/Cp/C/M/N expansions.
    Transition,
    /// Seminormal and dual-seminormal table construction (F/G expansions).
    Seminormal,
    /// RSK and restriction sweeps.
    Rsk,
}

impl CapKind {
    pub fn default_cap(self) -> usize {
        match self {
            CapKind::Preorder => 6,
            CapKind::Transition => 6,
            CapKind::Seminormal => 5,
            CapKind::Rsk => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rank {requested} exceeds the configured cap {cap} (set HECKE_N_MAX to override)")]
pub struct RankCapExceeded {
    pub requested: usize,
    pub cap: usize,
}

pub fn max_rank(kind: CapKind) -> usize {
    match std::env::var("HECKE_N_MAX") {
        Ok(s) => s.trim().parse().unwrap_or_else(|_| kind.default_cap()),
        Err(_) => kind.default_cap(),
    }
}

pub fn check_rank(n: usize, kind: CapKind) -> Result<(), RankCapExceeded> {
    let cap = max_rank(kind);
    if n > cap {
        Err(RankCapExceeded { requested: n, cap })
    } else {
        Ok(())
    }
}
