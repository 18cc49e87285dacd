//! Exact toolkit for deciding when a Kcsc orbifold with isolated quotient
//! singularities can be desingularized by gluing ALE models.
//!
//! The modules follow the pipeline: exact linear algebra, toric singularity
//! classification, lattice polytopes and moment vertices, balancing
//! conditions with the closed-form gluing constants, sphere spectral data,
//! and the mode-wise biharmonic Dirichlet-to-Neumann map. [`format`],
//! [`report`] and [`corpus`] handle the input files, structured reports and
//! the bundled worked examples.

pub mod balancing;
pub mod biharmonic;
pub mod corpus;
pub mod error;
pub mod format;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod spectral;
pub mod toric;

pub use error::{Error, ParseError, Result};
pub use linalg::{Rational, RationalMatrix};
