//! Partitions, multipartitions, tableaux, permutations and the index sets
//! underlying every basis in the crate.

pub mod delta;
pub mod partition;
pub mod perm;
pub mod restricted;
pub mod tableau;

pub use delta::{cell_labels, enumerate_delta, stratum_ge, DeltaIndex};
pub use partition::{Multipartition, Partition, Profile};
pub use perm::Perm;
pub use restricted::u_restricted;
pub use tableau::{block_factors, w_bracket, Tableau};
