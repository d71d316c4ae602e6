//! Classification of non-Hermitian topological phases.
//!
//! The crate has two halves that check each other. The numerical half takes
//! concrete Bloch Hamiltonians sampled on a momentum grid, verifies their
//! symmetries and gaps, flattens them and computes winding and Chern numbers.
//! The symbolic half computes point-gap and line-gap K-groups for all 54
//! internal symmetry classes, the symmetry-forgetting maps between them, and
//! the intrinsic quotients.

pub mod error;
pub mod gaps;
pub mod group;
pub mod hamiltonian;
pub mod invariants;
pub mod ktable;
pub mod linalg;
pub mod models;
pub mod symmetry;

pub use error::{Error, Result};
pub use group::{AbelianGroup, CyclicFactor, GroupHom};
pub use hamiltonian::{c64, ComplexMatrix, HamiltonianFamily, C64};
