//! Exact encodings of Bayesian network structures and their polyhedral
//! descriptions.
//!
//! Three encodings of acyclic directed graphs over a small variable set are
//! supported: η-vectors indexed by `(node | parent set)` pairs, standard
//! imsets and characteristic imsets. The crate generates every linear
//! constraint family used to describe the corresponding polytopes, the
//! integer matrices relating the encodings, and drivers that verify
//! lattice-point and LP-relaxation statements by exhaustive exact computation.

pub mod constraint;
pub mod digraph;
pub mod encode;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod rational;
pub mod setfam;
pub mod verify;

pub use error::{Error, Result};
pub use setfam::{GroundSet, Subset};
