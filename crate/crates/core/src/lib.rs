//! Exact-arithmetic workbench for torsion pairs and wide subcategories in
//! categories of finite-dimensional quiver representations over prime fields.
//!
//! Everything is computed over F_p with deterministic exact linear algebra;
//! no floats, no hash-order dependence, no wall-clock dependence. Randomized
//! searches (direct-sum splitting, isomorphism testing) derive their seeds
//! from the input data, so every run of every routine is byte-reproducible.

pub mod error;
pub mod kronecker;
pub mod linalg;
pub mod quiverrep;
pub mod rng;
pub mod torsops;
pub mod tubes;
pub mod universe;
pub mod widetors;

pub use error::{Error, Result};
