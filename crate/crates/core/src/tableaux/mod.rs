//! Partitions, standard tableaux, dominance orders, contents, and the
//! Robinson-Schensted-Knuth correspondence.

mod partition;
mod rsk;
mod tableau;

pub use partition::{Partition, TableauError};
pub use rsk::{content_set, content_set_monomials, pair_order, rsk, rsk_inverse, uv_of, PairOrder, TableauPair};
pub use tableau::StandardTableau;
