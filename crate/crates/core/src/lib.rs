//! Permutation-group algorithms for studying chief series, maximal subgroups
//! avoiding a normal subgroup, and the probability that a few random elements
//! generate a group.

pub mod alpha;
pub mod chain;
pub mod checks;
pub mod constructions;
pub mod corpus;
pub mod cohomology;
pub mod error;
pub mod genprob;
pub mod group;
pub mod hom;
pub mod interval;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod maximal;
pub mod oracle;
pub mod perm;
pub mod simple;
pub mod structure;

pub use error::{Error, Result};
pub use group::{Group, Limits};
pub use perm::Permutation;
