//! Exact topological descriptors of lower-star filtrations.
//!
//! Complexes live in R^d with rational coordinates; every height, diagram
//! point and region boundary is computed exactly. On top of the six
//! persistence- and Euler-based descriptor types the crate provides the
//! reductions between them, simplex envelopes, clothespin regions of
//! observability and a brute-force search for faithful direction sets
//! relative to finite adversary universes.

pub mod complex;
pub mod descriptors;
pub mod error;
pub mod faithfulness;
pub mod filtration;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod observability;
pub mod persistence;
pub mod rational;
pub mod reductions;

pub use complex::{Point, Simplex, SimplicialComplex, Violation};
pub use descriptors::{DescriptorType, DescriptorValue, Parameter};
pub use error::Error;
pub use filtration::{Direction, FilterAssignment, IndexFilter, TieRule};
pub use rational::Rational;
