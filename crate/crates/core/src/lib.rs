//! Exact computation of the chromatic symmetric function (CSF) of trees and
//! forests in the star basis, via the deletion-near-contraction recursion,
//! together with coefficient analysis and reconstruction of trees of small
//! diameter from their CSF.
//!
//! The main entry points are:
//! - [`Forest`]: labeled simple forests with the structural vocabulary used
//!   throughout (internal edges, deep vertices, leaf components).
//! - [`dnc::star_expand`]: the star-basis expansion of `X_F`.
//! - [`oracle::power_csf`]: an independent power-basis computation used to
//!   validate the expansion engine.
//! - [`analysis`]: extraction of leading partitions, adjacency multisets and
//!   the `N(p)` statistics from a star-basis CSF.
//! - [`reconstruct::reconstruct`]: rebuild a tree of diameter at most 5 from
//!   its CSF, certified by re-expansion.

pub mod analysis;
pub mod dnc;
pub mod forest;
pub mod oracle;
pub mod partition;
pub mod reconstruct;
pub mod suite;
pub mod symfunc;

pub use forest::Forest;
pub use partition::Partition;
pub use symfunc::{Basis, SymFunc};
