//! Exact verification and construction of pre-Lie algebra structures.
//!
//! Everything here works over exact fields (the rationals or a prime field
//! `F_p`) on explicit finite-dimensional data: structure constants, action
//! matrices, cochain value tables. Checkers take raw data and return a
//! [`Report`]; constructors take verified wrappers and re-verify what they
//! build.

#![no_std]

extern crate alloc;

pub mod brackets;
pub mod cochain;
pub mod deformation;
pub mod error;
#[cfg(test)]
mod fixtures;
pub mod kcohomology;
pub mod linalg;
pub mod ns;
pub mod prelie;
pub mod report;
pub mod reynolds;
pub mod scalar;
pub mod samples;
pub mod search;

pub use cochain::{Cochain, CohomologyReport};
pub use error::Error;
pub use linalg::{KernelBasis, Matrix};
pub use prelie::{Actions, PreLieAlgebra, Representation, StructureTensor};
pub use report::{Report, Violation};
pub use reynolds::{RcwSetting, ReynoldsData};
pub use scalar::{Field, Scalar};
