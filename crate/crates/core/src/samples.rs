//! Small verified instances built from a caller-supplied integer source,
//! for property tests and demonstrations. Nothing here draws randomness
//! itself: `draw(lo, hi)` must return an integer in `lo..=hi`.

use alloc::vec::Vec;

use crate::cochain::{coboundary, Cochain};
use crate::linalg::Matrix;
use crate::prelie::{regular_representation, PreLieAlgebra, Representation, StructureTensor};
use crate::reynolds::{reynolds_from_invertible_cochain, shift_operator, RcwSetting, ReynoldsData};
use crate::scalar::Field;
use crate::search::g3_setting;

/// Integer source: `draw(lo, hi)` yields a value in `lo..=hi`.
pub type Draw<'a> = &'a mut dyn FnMut(i64, i64) -> i64;

/// Pre-Lie algebras of dimension at most 3 with integer structure
/// constants.
pub fn algebra_catalogue(field: Field) -> Vec<PreLieAlgebra> {
    let tables: [(usize, &[(usize, usize, usize, i64)]); 9] = [
        (1, &[]),
        (1, &[(0, 0, 0, 1)]),
        (2, &[]),
        (2, &[(1, 0, 0, -1), (1, 1, 1, 1)]),
        (2, &[(0, 0, 1, 1)]),
        (3, &[]),
        (3, &[(2, 2, 1, 1)]),
        (3, &[(2, 1, 1, 1), (2, 2, 2, -1)]),
        (3, &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1)]),
    ];
    tables
        .iter()
        .map(|(d, t)| PreLieAlgebra::new(StructureTensor::from_entries(field, *d, t)).expect("catalogue entries are pre-Lie"))
        .collect()
}

fn pick<T: Clone>(items: &[T], draw: Draw) -> T {
    items[draw(0, items.len() as i64 - 1) as usize].clone()
}

/// A `rows × cols` matrix with entries in `-2..=2`.
pub fn small_matrix(field: Field, rows: usize, cols: usize, draw: Draw) -> Matrix {
    let data = (0..rows * cols).map(|_| field.from_i64(draw(-2, 2))).collect();
    Matrix::from_flat(field, rows, cols, data).expect("sizes agree")
}

/// A cochain of the given degree with entries in `-2..=2`.
pub fn small_cochain(field: Field, degree: usize, dim_source: usize, dim_target: usize, draw: Draw) -> Cochain {
    let len = Cochain::space_dim(degree, dim_source, dim_target);
    let values = (0..len).map(|_| field.from_i64(draw(-2, 2))).collect();
    Cochain::from_flat(field, degree, dim_source, dim_target, values).expect("sizes agree")
}

fn representation(g: &PreLieAlgebra, draw: Draw) -> Representation {
    if draw(0, 1) == 0 {
        regular_representation(g)
    } else {
        Representation::zero(g, g.dim())
    }
}

/// A verified RCW Reynolds operator with `dim g, dim V ≤ 3`, built by one of
/// several constructions chosen by `draw`:
///
/// * `K = h⁻¹`, `H = −∂h` for an invertible `h`;
/// * `K = 0` with a coboundary `H = ∂h`;
/// * the family with third row zero on `e3·e3 = e2`;
///
/// each optionally followed by a shift `H ↦ H + ∂h`.
pub fn random_reynolds(field: Field, draw: Draw) -> ReynoldsData {
    let algebras = algebra_catalogue(field);
    let base = match draw(0, 2) {
        0 => loop {
            let g = pick(&algebras, draw);
            let rep = representation(&g, draw);
            let h = small_matrix(field, g.dim(), g.dim(), draw);
            if let Ok(d) = reynolds_from_invertible_cochain(g, rep, &Cochain::from_matrix(&h)) {
                break d;
            }
        },
        1 => {
            let g = pick(&algebras, draw);
            let rep = representation(&g, draw);
            let h = small_cochain(field, 1, g.dim(), rep.actions().dim_v, draw);
            let dh = coboundary(&g, &rep, &h).expect("shapes agree");
            let m = rep.actions().dim_v;
            let zero = Matrix::zeros(field, g.dim(), m);
            ReynoldsData::new(RcwSetting::new(g, rep, dh).expect("coboundaries are cocycles"), zero).expect("0 is an RCW Reynolds operator")
        }
        _ => {
            let mut k = small_matrix(field, 3, 3, draw);
            for j in 0..3 {
                k.set(2, j, field.zero());
            }
            ReynoldsData::new(g3_setting(field), k).expect("third row zero gives an RCW Reynolds operator")
        }
    };
    if draw(0, 1) == 0 {
        return base;
    }
    for _ in 0..8 {
        let h = small_cochain(field, 1, base.dim_g(), base.dim_v(), draw);
        if let Ok(d) = shift_operator(&base, &h) {
            return d;
        }
    }
    base
}
