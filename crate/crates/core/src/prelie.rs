//! Pre-Lie algebras given by structure constants, their representations,
//! derivations and morphisms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::Error;
use crate::linalg::{axpy, is_zero_vec, sub_vec, zero_vec, Matrix};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

/// Raw structure constants: `e_i · e_j = Σ_k c[i][j][k] e_k` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    dim: usize,
    field: Field,
    c: Vec<Scalar>,
}

impl StructureTensor {
    pub fn zero(field: Field, dim: usize) -> Self {
        StructureTensor {
            dim,
            field,
            c: zero_vec(field, dim * dim * dim),
        }
    }

    /// Builds a tensor from nested `c[i][j][k]` tables, rejecting non-cubical
    /// input.
    pub fn from_nested(field: Field, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self, Error> {
        let n = c.len();
        let mut t = StructureTensor::zero(field, n);
        for (i, plane) in c.into_iter().enumerate() {
            if plane.len() != n {
                return Err(Error::Shape(format!("tensor slice {} is not {}x{}", i + 1, n, n)));
            }
            for (j, row) in plane.into_iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Shape(format!(
                        "tensor row ({},{}) has length {}, expected {}",
                        i + 1,
                        j + 1,
                        row.len(),
                        n
                    )));
                }
                for (k, s) in row.into_iter().enumerate() {
                    t.set(i, j, k, field.convert(&s)?);
                }
            }
        }
        Ok(t)
    }

    /// Sparse constructor from 0-based `(i, j, k, value)` entries.
    pub fn from_entries(field: Field, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let mut t = StructureTensor::zero(field, dim);
        for &(i, j, k, v) in entries {
            let s = t.get(i, j, k) + &field.from_i64(v);
            t.set(i, j, k, s);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, s: Scalar) {
        assert_eq!(s.field(), self.field, "tensor entry from a different field");
        let d = self.dim;
        self.c[(i * d + j) * d + k] = s;
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.dim;
        &self.c[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Product of two coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.basis_product(i, j));
            }
        }
        out
    }

    /// Left multiplication `L_{e_i}` as a matrix.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Right multiplication `R_{e_i}` (`u ↦ u · e_i`) as a matrix.
    pub fn right_matrix(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.basis_product(j, i).to_vec()).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.c)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.c
    }

    /// Entrywise sum of two tensors of the same shape.
    pub fn add(&self, other: &StructureTensor) -> Result<StructureTensor, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "tensor dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(StructureTensor {
            dim: self.dim,
            field: self.field,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        })
    }

    /// Builds a tensor by evaluating a bilinear map on basis pairs.
    pub fn from_fn(field: Field, dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut t = StructureTensor::zero(field, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "bilinear map returned a vector of the wrong length");
                for (k, s) in v.into_iter().enumerate() {
                    t.set(i, j, k, s);
                }
            }
        }
        t
    }

    /// The same product written in the basis `e_{perm[0]}, e_{perm[1]}, ...`.
    pub fn permuted(&self, perm: &[usize]) -> StructureTensor {
        let d = self.dim;
        assert_eq!(perm.len(), d, "permutation length mismatch");
        let mut t = StructureTensor::zero(self.field, d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    t.set(a, b, c, self.get(perm[a], perm[b], perm[c]).clone());
                }
            }
        }
        t
    }

    /// Re-expresses all entries in `field`.
    pub fn convert(&self, field: Field) -> Result<StructureTensor, Error> {
        Ok(StructureTensor {
            dim: self.dim,
            field,
            c: self.c.iter().map(|s| field.convert(s)).collect::<Result<_, _>>()?,
        })
    }
}

fn associator(t: &StructureTensor, i: usize, j: usize, k: usize) -> Vec<Scalar> {
    let lhs = t.product(t.basis_product(i, j), &unit(t, k));
    let rhs = t.product(&unit(t, i), t.basis_product(j, k));
    sub_vec(&lhs, &rhs)
}

fn unit(t: &StructureTensor, i: usize) -> Vec<Scalar> {
    crate::linalg::unit_vec(t.field, t.dim, i)
}

fn prelie_report(t: &StructureTensor, stop_first: bool) -> Report {
    let mut r = Report::with_conditions("prelie", &["left-symmetric associator"]);
    let d = t.dim;
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                let res = sub_vec(&associator(t, i, j, k), &associator(t, j, i, k));
                if r.record("left-symmetric associator", &[i, j, k], res) && stop_first {
                    return r;
                }
            }
        }
    }
    r
}

/// Checks `(x·y)·z − x·(y·z) = (y·x)·z − y·(x·z)` on all basis triples.
/// Triples with `i = j` hold trivially and are skipped.
pub fn check_prelie(t: &StructureTensor) -> Report {
    prelie_report(t, false)
}

/// Early-exit form of [`check_prelie`].
pub fn is_prelie(t: &StructureTensor) -> bool {
    prelie_report(t, true).passed()
}

/// A structure tensor known to satisfy the pre-Lie identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieAlgebra {
    tensor: StructureTensor,
    unit: Option<Vec<Scalar>>,
    labels: Option<Vec<String>>,
}

impl PreLieAlgebra {
    pub fn new(tensor: StructureTensor) -> Result<Self, Error> {
        let r = check_prelie(&tensor);
        if !r.passed() {
            return Err(Error::NotPreLie(r));
        }
        Ok(PreLieAlgebra {
            tensor,
            unit: None,
            labels: None,
        })
    }

    /// The zero product on `field^dim`.
    pub fn abelian(field: Field, dim: usize) -> Self {
        PreLieAlgebra {
            tensor: StructureTensor::zero(field, dim),
            unit: None,
            labels: None,
        }
    }

    /// Attaches a unit after checking `1·x = x·1 = x` on the basis.
    pub fn with_unit(mut self, unit: Vec<Scalar>) -> Result<Self, Error> {
        if unit.len() != self.dim() {
            return Err(Error::Shape(format!(
                "unit has {} coordinates, algebra has dimension {}",
                unit.len(),
                self.dim()
            )));
        }
        let mut r = Report::with_conditions("unit", &["1·x = x", "x·1 = x"]);
        for i in 0..self.dim() {
            let e = unit_vec_of(&self.tensor, i);
            r.record("1·x = x", &[i], sub_vec(&self.tensor.product(&unit, &e), &e));
            r.record("x·1 = x", &[i], sub_vec(&self.tensor.product(&e, &unit), &e));
        }
        if !r.passed() {
            return Err(Error::NotUnit(r));
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, Error> {
        if labels.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim
    }

    pub fn field(&self) -> Field {
        self.tensor.field
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.tensor.product(x, y)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        self.tensor.basis_product(i, j)
    }

    /// `[x, y] = x·y − y·x`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        sub_vec(&self.mul(x, y), &self.mul(y, x))
    }
}

fn unit_vec_of(t: &StructureTensor, i: usize) -> Vec<Scalar> {
    unit(t, i)
}

/// Structure constants of the sub-adjacent Lie bracket `[x,y] = x·y − y·x`.
pub fn subadjacent_lie(a: &PreLieAlgebra) -> StructureTensor {
    let t = &a.tensor;
    StructureTensor::from_fn(t.field, t.dim, |i, j| {
        sub_vec(t.basis_product(i, j), t.basis_product(j, i))
    })
}

/// Checks antisymmetry and the Jacobi identity of a bracket tensor.
pub fn check_lie(t: &StructureTensor) -> Report {
    let mut r = Report::with_conditions("lie", &["antisymmetry", "jacobi"]);
    let d = t.dim;
    for i in 0..d {
        for j in i..d {
            let s = crate::linalg::add_vec(t.basis_product(i, j), t.basis_product(j, i));
            r.record("antisymmetry", &[i, j], s);
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let (ei, ej, ek) = (unit(t, i), unit(t, j), unit(t, k));
                let mut s = t.product(&ei, t.basis_product(j, k));
                s = crate::linalg::add_vec(&s, &t.product(&ej, t.basis_product(k, i)));
                s = crate::linalg::add_vec(&s, &t.product(&ek, t.basis_product(i, j)));
                r.record("jacobi", &[i, j, k], s);
            }
        }
    }
    r
}

/// Raw left and right action matrices of `g` on a module `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actions {
    pub dim_g: usize,
    pub dim_v: usize,
    pub field: Field,
    /// `left[i]` is `L_{e_i}`, a `dim_v x dim_v` matrix.
    pub left: Vec<Matrix>,
    /// `right[i]` is `R_{e_i}`.
    pub right: Vec<Matrix>,
}

impl Actions {
    pub fn new(field: Field, dim_g: usize, dim_v: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self, Error> {
        if left.len() != dim_g || right.len() != dim_g {
            return Err(Error::Shape(format!(
                "need {} left and right matrices, got {} and {}",
                dim_g,
                left.len(),
                right.len()
            )));
        }
        for m in left.iter().chain(&right) {
            if m.rows() != dim_v || m.cols() != dim_v {
                return Err(Error::Shape(format!(
                    "action matrix is {}x{}, module has dimension {}",
                    m.rows(),
                    m.cols(),
                    dim_v
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(
                    alloc::string::ToString::to_string(&m.field()),
                    alloc::string::ToString::to_string(&field),
                ));
            }
        }
        Ok(Actions {
            dim_g,
            dim_v,
            field,
            left,
            right,
        })
    }

    pub fn zero(field: Field, dim_g: usize, dim_v: usize) -> Self {
        Actions {
            dim_g,
            dim_v,
            field,
            left: (0..dim_g).map(|_| Matrix::zeros(field, dim_v, dim_v)).collect(),
            right: (0..dim_g).map(|_| Matrix::zeros(field, dim_v, dim_v)).collect(),
        }
    }

    /// `L_x u` for coordinate vectors `x ∈ g`, `u ∈ V`.
    pub fn act_left(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        combine(&self.left, self.field, self.dim_v, x, u)
    }

    /// `R_x u`.
    pub fn act_right(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        combine(&self.right, self.field, self.dim_v, x, u)
    }

    /// `L_x` as a matrix.
    pub fn left_of(&self, x: &[Scalar]) -> Matrix {
        lin_comb(&self.left, self.field, self.dim_v, x)
    }

    /// `R_x` as a matrix.
    pub fn right_of(&self, x: &[Scalar]) -> Matrix {
        lin_comb(&self.right, self.field, self.dim_v, x)
    }
}

fn combine(ms: &[Matrix], field: Field, dim: usize, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
    let mut out = zero_vec(field, dim);
    for (m, xi) in ms.iter().zip(x) {
        if !xi.is_zero() {
            axpy(&mut out, xi, &m.mul_vec(u));
        }
    }
    out
}

fn lin_comb(ms: &[Matrix], field: Field, dim: usize, x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, xi) in ms.iter().zip(x) {
        if !xi.is_zero() {
            out = out.add(&m.scale(xi)).expect("action matrices share a shape");
        }
    }
    out
}

fn representation_report(a: &PreLieAlgebra, act: &Actions, stop_first: bool) -> Result<Report, Error> {
    if act.dim_g != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "actions are indexed by {} elements, algebra has dimension {}",
            act.dim_g,
            a.dim()
        )));
    }
    let mut r = Report::with_conditions("representation", &["L_xL_y - L_{x·y} symmetric", "L_xR_y - R_yL_x = R_{x·y} - R_yR_x"]);
    let d = a.dim();
    let mm = |x: &Matrix, y: &Matrix| x.mul(y).expect("square action matrices");
    for i in 0..d {
        for j in 0..d {
            let xy = a.basis_product(i, j);
            let yx = a.basis_product(j, i);
            let (li, lj, ri, rj) = (&act.left[i], &act.left[j], &act.right[i], &act.right[j]);
            let first = mm(li, lj)
                .sub(&act.left_of(xy))
                .and_then(|m| m.sub(&mm(lj, li)))
                .and_then(|m| m.add(&act.left_of(yx)))?;
            let second = mm(li, rj)
                .sub(&mm(rj, li))
                .and_then(|m| m.sub(&act.right_of(xy)))
                .and_then(|m| m.add(&mm(rj, ri)))?;
            for u in 0..act.dim_v {
                if i < j
                    && r.record("L_xL_y - L_{x·y} symmetric", &[i, j, u], first.column(u))
                    && stop_first
                {
                    return Ok(r);
                }
                if r.record("L_xR_y - R_yL_x = R_{x·y} - R_yR_x", &[i, j, u], second.column(u))
                    && stop_first
                {
                    return Ok(r);
                }
            }
        }
    }
    Ok(r)
}

/// Checks both representation identities on all basis pairs and module
/// basis vectors.
pub fn check_representation(a: &PreLieAlgebra, act: &Actions) -> Result<Report, Error> {
    representation_report(a, act, false)
}

pub fn is_representation(a: &PreLieAlgebra, act: &Actions) -> bool {
    representation_report(a, act, true).map_or(false, |r| r.passed())
}

/// Actions known to form a representation of the algebra they were checked
/// against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    actions: Actions,
}

impl Representation {
    pub fn new(a: &PreLieAlgebra, actions: Actions) -> Result<Self, Error> {
        let r = check_representation(a, &actions)?;
        if !r.passed() {
            return Err(Error::NotRepresentation(r));
        }
        Ok(Representation { actions })
    }

    pub fn zero(a: &PreLieAlgebra, dim_v: usize) -> Self {
        Representation {
            actions: Actions::zero(a.field(), a.dim(), dim_v),
        }
    }

    pub fn actions(&self) -> &Actions {
        &self.actions
    }
}

impl Deref for Representation {
    type Target = Actions;
    fn deref(&self) -> &Actions {
        &self.actions
    }
}

/// `V = g` with `L_x u = x·u` and `R_x u = u·x`.
pub fn regular_representation(a: &PreLieAlgebra) -> Representation {
    let t = a.tensor();
    let d = a.dim();
    Representation {
        actions: Actions {
            dim_g: d,
            dim_v: d,
            field: a.field(),
            left: (0..d).map(|i| t.left_matrix(i)).collect(),
            right: (0..d).map(|i| t.right_matrix(i)).collect(),
        },
    }
}

fn check_square(m: &Matrix, n: usize, what: &str) -> Result<(), Error> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!(
            "{} is {}x{}, expected {}x{}",
            what,
            m.rows(),
            m.cols(),
            n,
            n
        )));
    }
    Ok(())
}

/// Checks `d(x·y) = d(x)·y + x·d(y)` on basis pairs.
pub fn check_derivation(a: &PreLieAlgebra, d: &Matrix) -> Result<Report, Error> {
    check_square(d, a.dim(), "derivation")?;
    let mut r = Report::with_conditions("derivation", &["d(x·y) = d(x)·y + x·d(y)"]);
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (unit(a.tensor(), i), unit(a.tensor(), j));
            let lhs = d.mul_vec(a.basis_product(i, j));
            let rhs = crate::linalg::add_vec(
                &a.mul(&d.column(i), &ej),
                &a.mul(&ei, &d.column(j)),
            );
            r.record("d(x·y) = d(x)·y + x·d(y)", &[i, j], sub_vec(&lhs, &rhs));
        }
    }
    Ok(r)
}

/// Checks `f(x·y) = f(x)·f(y)` for a linear map `f: a → b`.
pub fn check_morphism(a: &PreLieAlgebra, b: &PreLieAlgebra, f: &Matrix) -> Result<Report, Error> {
    if f.cols() != a.dim() || f.rows() != b.dim() {
        return Err(Error::Shape(format!(
            "morphism is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            b.dim(),
            a.dim()
        )));
    }
    let mut r = Report::with_conditions("morphism", &["f(x·y) = f(x)·f(y)"]);
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.mul_vec(a.basis_product(i, j));
            let rhs = b.mul(&f.column(i), &f.column(j));
            r.record("f(x·y) = f(x)·f(y)", &[i, j], sub_vec(&lhs, &rhs));
        }
    }
    Ok(r)
}
