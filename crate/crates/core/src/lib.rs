//! Independence polynomials and basic cohomology of 2-step nilpotent Lie algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`exterior`]: exact exterior algebra on bitmask monomials.
//! - [`linalg`]: fraction-free sparse echelon forms and small dense rational matrices.
//! - [`lie`]: structure constants, validation, adapted bases, Dani–Mainkar and Heisenberg algebras.
//! - [`cohomology`]: Chevalley–Eilenberg differential, Betti and basic Betti numbers,
//!   independence polynomials, independent sets and abelian subalgebras.
//! - [`bounds`]: closed-form bounds on the independence number.
//! - [`spectral`]: metric pairs, the basic Laplacian and basic partition functions.
//! - [`graph_tools`]: brute-force graph oracles and the Trinks polynomial.
//! - [`verify`]: the cross-check suite shared by the CLI and the acceptance tests.

pub mod bounds;
pub mod cohomology;
pub mod config;
pub mod corpus;
pub mod error;
pub mod exterior;
pub mod graph_tools;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod spectral;
pub mod verify;

pub use bounds::{BoundCase, BoundReport};
pub use cohomology::{AbelianSubalgebra, GradedPolynomial, IndependentSet};
pub use config::{Limits, Tolerances};
pub use error::{Error, Result};
pub use exterior::{ExteriorPoly, Monomial, Rational};
pub use graph_tools::MultiPoly;
pub use lie::{Graph, RawAlgebra, TwoStepAlgebra};
pub use spectral::{MetricPair, PartitionFunction, PartitionTerm};
