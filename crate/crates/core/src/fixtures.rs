//! Shared data for unit tests.

use crate::cochain::Cochain;
use crate::linalg::Matrix;
use crate::prelie::{regular_representation, PreLieAlgebra, StructureTensor};
use crate::reynolds::{reynolds_from_invertible_cochain, ReynoldsData};
use crate::scalar::Field;

pub const Q: Field = Field::Rational;

pub use crate::search::g3_setting;

pub fn g3_data(field: Field, k: &[&[i64]]) -> ReynoldsData {
    ReynoldsData::new(g3_setting(field), Matrix::from_i64(field, k)).unwrap()
}

/// Noncommutative associative algebra `e1·e_i = e_i`, regular
/// representation, `K = h⁻¹` for an invertible `h`.
pub fn noncommutative_data() -> ReynoldsData {
    let g = PreLieAlgebra::new(StructureTensor::from_entries(Q, 3, &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1)])).unwrap();
    let rep = regular_representation(&g);
    let h = Matrix::from_i64(Q, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
    reynolds_from_invertible_cochain(g, rep, &Cochain::from_matrix(&h)).unwrap()
}
