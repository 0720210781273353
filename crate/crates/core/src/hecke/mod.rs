//! The Hecke algebra engine: `T`-basis arithmetic, the bar, `j` and `*`
//! involutions, Kazhdan-Lusztig and twisted Kazhdan-Lusztig bases, Murphy
//! and dual Murphy bases, Jucys-Murphy elements, seminormal idempotents
//! and bases, and change-of-basis.

mod context;
mod element;
mod expand;
mod jucys;
mod kl;
mod murphy;
mod scalar;
mod seminormal;

pub use context::HeckeContext;
pub use element::{AnyElement, HeckeElement};
pub use expand::{
    expand_pair_basis, expand_parabolic, expand_perm_basis, tau_product, PairBasis, PermBasis,
    Transition,
};
pub use jucys::{f_projector, jm_element};
pub use kl::KlContext;
pub use murphy::{dominance_key, dual_murphy_n, murphy_m, parabolic_alt_sum, parabolic_sum, LabelIdx, MurphyTable};
pub use scalar::Scalar;
pub use seminormal::{
    dual_seminormal_g_definition, predicted_action, seminormal_f_definition, swap_entries,
    SeminormalTable,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error(transparent)]
    RankCap(#[from] crate::caps::RankCapExceeded),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("coefficient at {0} is not in Z[v,v^-1]: {1}")]
    NotIntegral(String, String),
}
