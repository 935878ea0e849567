//! Bar codes, Jordan cells and monodromy of tame real- and angle-valued maps.
//!
//! The crate decomposes representations of the zigzag line quiver and of the
//! cyclic quiver G_2m over an exact coefficient field into interval summands
//! (bar codes) and a regular part (monodromy), evaluates the homological
//! quantities these determine (fiber and total-space homology, twisted
//! homology, Novikov numbers, level-interval homology on the infinite cyclic
//! cover), and cross-validates the monodromy through an independent
//! linear-relation calculus.

pub mod canonical;
pub mod cli;
pub mod configuration;


pub mod diagram;
pub mod error;
pub mod examples;
pub mod field;
pub mod homology;
pub mod json;

pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod relation;
pub mod subspace;

pub use canonical::{canonical_form, EndoCanonicalForm};
pub use error::Error;
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use subspace::Subspace;
