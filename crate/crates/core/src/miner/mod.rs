//! Exhaustive enumeration, mining of minimal forbidden induced subgraphs,
//! and verification harnesses built on them.

pub mod checkpoint;
pub mod enumerate;
pub mod mine;
pub mod predicate;
pub mod verify;

pub use enumerate::{enumerate_graphs, ENUMERATION_MAX};
pub use mine::{count_hc_forbidden, is_minimal_forbidden, mine_forbidden, MineOptions, MineResult};
pub use predicate::ClassPredicate;
