//! Exact sumset arithmetic for finite integer sets, with builders for sets whose
//! signed sumset cardinalities are prescribed, stabilization analysis, and density experiments.

pub mod analysis;
pub mod construct;
pub mod density;
pub mod error;
pub mod setcore;
pub mod sumexpr;

pub use error::{Error, Result};
pub use setcore::{IntSet, SignVector, SignedPair};
