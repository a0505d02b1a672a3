//! Exact and numerical tools for Lefschetz distributions of Lie foliations.
//!
//! The crate is organised in layers: exact rational linear algebra
//! ([`linalg`]), Chevalley–Eilenberg cohomology of nilpotent Lie algebras
//! ([`lie`]), Lefschetz numbers and fixed points of toral automorphisms
//! ([`lefschetz`]), a distribution type for the output ([`distribution`]),
//! the closed-form foliation families ([`models`]) and a discrete
//! Gauss–Bonnet integrator ([`curvature`]). [`verify`] cross-checks all of
//! them against independent routes.

pub mod curvature;
pub mod distribution;
pub mod error;
pub mod lefschetz;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod verify;

pub use distribution::{Atom, Distribution, GroupKind, GroupPoint, MergeTolerance, OrbitTerm, Value};
pub use error::{Error, Result};
pub use lefschetz::{GradedMap, IndexConvention, ToralAutomorphism};
pub use lie::{GradedDims, LieAlgebra};
pub use linalg::{IntMatrix, Matrix, RationalMatrix};
