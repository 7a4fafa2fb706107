//! Teaching complexity and VC dimension of finite concept classes.
//!
//! * [`concept`]: the single-word concept representation, projections,
//!   restrictions and products.
//! * [`measures`]: exact VC dimension, teaching dimensions and recursive teaching plans.
//! * [`bounds`]: the quadratic bound on the recursive teaching dimension in
//!   terms of the VC dimension, and the restriction descent that realizes it.
//! * [`explore`]: random-class experiments, extremal search and corpus verification.

pub mod bounds;
pub mod canonical;
pub mod concept;
pub mod error;
pub mod explore;
pub mod format;
pub mod measures;

pub use concept::{difference_set, Concept, ConceptClass, InstanceSet, Pattern, MAX_INSTANCES};
pub use error::{Error, Result};
