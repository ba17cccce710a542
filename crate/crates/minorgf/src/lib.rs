//! Exact counting series, brute-force class oracles and high-precision growth
//! constants for graph classes defined by excluded (disjoint) minors and
//! redundant blockers.

pub mod graph;
pub mod numerics;
pub mod oracle;
pub mod series;

mod error;

pub use error::{Error, Result};
