//! Exact-arithmetic kernel for the Iwahori-Hecke algebra of the symmetric
//! group, together with the combinatorics that index its bases: partitions,
//! standard tableaux, dominance orders and the Robinson-Schensted-Knuth
//! correspondence.
//!
//! Everything is computed exactly over `Z[v,v^-1]` or `Q(v)`; there is no
//! floating point anywhere. The [`verify`] module packages exhaustive
//! small-rank checks of the classical structural identities (Kazhdan-Lusztig
//! positivity-free facts only: bar invariance, triangular transition
//! matrices, cell/RSK compatibility) into machine-readable reports.

pub mod caps;
pub mod cells;
pub mod coeff;
pub mod hecke;
pub mod symgroup;
pub mod tableaux;
pub mod verify;

pub use coeff::{CoeffError, LaurentPoly, RationalFn};
pub use symgroup::Permutation;
pub use tableaux::{Partition, StandardTableau, TableauPair};
