//! Cochains `C^n(X, Y) = Hom(∧^{n-1} X ⊗ X, Y)`, unshuffles, the pre-Lie
//! coboundary and cohomology dimensions.
//!
//! A cochain of degree `n` stores one target vector for every strictly
//! increasing `(n-1)`-tuple of source indices together with a free last
//! index. Tuples are ordered lexicographically, and the flat coordinate of
//! `(tuple, last, coord)` is `((rank(tuple) * d) + last) * m + coord`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::{axpy, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix};
use crate::prelie::{Actions, PreLieAlgebra};
use crate::report::Report;
use crate::scalar::{sign, Field, Scalar};

/// A permutation compatible with a block pattern, with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unshuffle {
    /// `perm[k]` is `σ(k+1) - 1`.
    pub perm: Vec<usize>,
    pub sign: i8,
}

/// All unshuffles of the given block sizes, in lexicographic order of the
/// permutation words.
pub fn enumerate_unshuffles(pattern: &[usize]) -> Vec<Unshuffle> {
    let n: usize = pattern.iter().sum();
    let mut out = Vec::new();
    let remaining: Vec<usize> = (0..n).collect();
    let mut word = Vec::with_capacity(n);
    unshuffle_rec(pattern, &remaining, &mut word, &mut out);
    out
}

fn unshuffle_rec(pattern: &[usize], remaining: &[usize], word: &mut Vec<usize>, out: &mut Vec<Unshuffle>) {
    let Some((&k, rest)) = pattern.split_first() else {
        out.push(Unshuffle {
            sign: permutation_sign(word),
            perm: word.clone(),
        });
        return;
    };
    for chosen in combinations(remaining.len(), k) {
        let picked: Vec<usize> = chosen.iter().map(|&c| remaining[c]).collect();
        let left: Vec<usize> = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(_, &v)| v)
            .collect();
        let len = word.len();
        word.extend_from_slice(&picked);
        unshuffle_rec(rest, &left, word, out);
        word.truncate(len);
    }
}

/// Parity of a permutation word as `±1`.
pub fn permutation_sign(word: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `k`-subsets of `0..n` as increasing lists, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lexicographic rank of an increasing tuple among the `k`-subsets of `0..n`.
fn combination_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut start = 0;
    for (i, &t) in tuple.iter().enumerate() {
        for j in start..t {
            rank += binomial(n - 1 - j, k - 1 - i);
        }
        start = t + 1;
    }
    rank
}

/// A multilinear map `∧^{n-1} X ⊗ X → Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    dim_source: usize,
    dim_target: usize,
    field: Field,
    values: Vec<Scalar>,
}

impl Cochain {
    /// Number of scalars needed to store a cochain of this shape.
    pub fn space_dim(degree: usize, dim_source: usize, dim_target: usize) -> usize {
        if degree == 0 {
            return dim_target;
        }
        binomial(dim_source, degree - 1) * dim_source * dim_target
    }

    pub fn zero(field: Field, degree: usize, dim_source: usize, dim_target: usize) -> Self {
        assert!(degree >= 1, "cochains start in degree 1");
        Cochain {
            degree,
            dim_source,
            dim_target,
            field,
            values: zero_vec(field, Cochain::space_dim(degree, dim_source, dim_target)),
        }
    }

    pub fn from_flat(field: Field, degree: usize, dim_source: usize, dim_target: usize, values: Vec<Scalar>) -> Result<Self, Error> {
        if degree == 0 {
            return Err(Error::Shape("cochains start in degree 1".into()));
        }
        let need = Cochain::space_dim(degree, dim_source, dim_target);
        if values.len() != need {
            return Err(Error::Shape(format!(
                "{} values for a cochain space of dimension {}",
                values.len(),
                need
            )));
        }
        Ok(Cochain {
            degree,
            dim_source,
            dim_target,
            field,
            values,
        })
    }

    /// The cochain whose flat coordinate `index` is one and all others zero.
    pub fn basis_element(field: Field, degree: usize, dim_source: usize, dim_target: usize, index: usize) -> Self {
        let mut c = Cochain::zero(field, degree, dim_source, dim_target);
        c.values[index] = field.one();
        c
    }

    /// Fills a cochain by evaluating `f` on each canonical argument tuple
    /// (increasing first block, then the last index).
    pub fn from_fn(
        field: Field,
        degree: usize,
        dim_source: usize,
        dim_target: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> Self {
        let mut c = Cochain::zero(field, degree, dim_source, dim_target);
        let mut args = vec![0; degree];
        for (rank, tuple) in combinations(dim_source, degree - 1).into_iter().enumerate() {
            args[..degree - 1].copy_from_slice(&tuple);
            for last in 0..dim_source {
                args[degree - 1] = last;
                let v = f(&args);
                assert_eq!(v.len(), dim_target, "cochain value has the wrong length");
                let base = (rank * dim_source + last) * dim_target;
                c.values[base..base + dim_target].clone_from_slice(&v);
            }
        }
        c
    }

    /// A degree-1 cochain from a `dim_target x dim_source` matrix.
    pub fn from_matrix(m: &Matrix) -> Self {
        Cochain::from_fn(m.field(), 1, m.cols(), m.rows(), |a| m.column(a[0]))
    }

    /// A degree-2 cochain from a bilinear map on basis pairs.
    pub fn from_bilinear(field: Field, dim_source: usize, dim_target: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        Cochain::from_fn(field, 2, dim_source, dim_target, |a| f(a[0], a[1]))
    }

    /// Degree-1 cochain as its matrix.
    pub fn to_matrix(&self) -> Result<Matrix, Error> {
        if self.degree != 1 {
            return Err(Error::Shape(format!("degree-{} cochain is not a linear map", self.degree)));
        }
        let cols: Vec<Vec<Scalar>> = (0..self.dim_source).map(|j| self.eval_basis(&[j])).collect();
        Ok(Matrix::from_columns(self.field, self.dim_target, &cols))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_source(&self) -> usize {
        self.dim_source
    }

    pub fn dim_target(&self) -> usize {
        self.dim_target
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    fn same_shape(&self, other: &Cochain) -> Result<(), Error> {
        if self.degree != other.degree || self.dim_source != other.dim_source || self.dim_target != other.dim_target {
            return Err(Error::DimensionMismatch(format!(
                "cochain shapes (n={}, {}→{}) and (n={}, {}→{})",
                self.degree, self.dim_source, self.dim_target, other.degree, other.dim_source, other.dim_target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, Error> {
        self.same_shape(other)?;
        Ok(Cochain {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, Error> {
        self.same_shape(other)?;
        Ok(Cochain {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            values: self.values.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    /// Re-expresses all values in `field`.
    pub fn convert(&self, field: Field) -> Result<Cochain, Error> {
        Ok(Cochain {
            values: self.values.iter().map(|s| field.convert(s)).collect::<Result<_, _>>()?,
            field,
            ..self.clone()
        })
    }

    /// Integer lift of a prime-field cochain into `Q` (identity on `Q`).
    pub fn lift(&self) -> Cochain {
        Cochain {
            values: self.values.iter().map(Scalar::lift).collect(),
            field: Field::Rational,
            ..self.clone()
        }
    }

    /// Stored vector for a canonical tuple (increasing first block).
    pub fn stored(&self, tuple: &[usize], last: usize) -> &[Scalar] {
        let base = (combination_rank(self.dim_source, tuple) * self.dim_source + last) * self.dim_target;
        &self.values[base..base + self.dim_target]
    }

    /// Sets the value at a canonical tuple.
    pub fn set(&mut self, tuple: &[usize], last: usize, v: Vec<Scalar>) {
        assert!(tuple.windows(2).all(|w| w[0] < w[1]), "first block must be strictly increasing");
        assert_eq!(tuple.len() + 1, self.degree, "tuple length does not match degree");
        assert_eq!(v.len(), self.dim_target, "value has the wrong length");
        let base = (combination_rank(self.dim_source, tuple) * self.dim_source + last) * self.dim_target;
        self.values[base..base + self.dim_target].clone_from_slice(&v);
    }

    /// Iterates over canonical tuples with nonzero values.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, usize, Vec<Scalar>)> {
        let mut out = Vec::new();
        for (rank, tuple) in combinations(self.dim_source, self.degree - 1).into_iter().enumerate() {
            for last in 0..self.dim_source {
                let base = (rank * self.dim_source + last) * self.dim_target;
                let v = &self.values[base..base + self.dim_target];
                if !is_zero_vec(v) {
                    out.push((tuple.clone(), last, v.to_vec()));
                }
            }
        }
        out
    }

    /// Value at basis arguments in any order, applying the antisymmetry of
    /// the first block.
    pub fn eval_basis(&self, args: &[usize]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.degree, "wrong number of cochain arguments");
        let (first, last) = args.split_at(self.degree - 1);
        let mut sorted = first.to_vec();
        let sgn = sort_with_sign(&mut sorted);
        if sgn == 0 {
            return zero_vec(self.field, self.dim_target);
        }
        let v = self.stored(&sorted, last[0]);
        if sgn > 0 {
            v.to_vec()
        } else {
            v.iter().map(|s| -s).collect()
        }
    }

    /// Multilinear evaluation at coordinate vectors.
    pub fn eval(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>, Error> {
        if args.len() != self.degree {
            return Err(Error::Shape(format!(
                "degree-{} cochain evaluated at {} arguments",
                self.degree,
                args.len()
            )));
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim_source) {
            return Err(Error::Shape(format!(
                "argument of length {}, source dimension is {}",
                a.len(),
                self.dim_source
            )));
        }
        let mut out = zero_vec(self.field, self.dim_target);
        let mut idx = vec![0; self.degree];
        self.eval_rec(args, 0, &self.field.one(), &mut idx, &mut out);
        Ok(out)
    }

    fn eval_rec(&self, args: &[Vec<Scalar>], pos: usize, coeff: &Scalar, idx: &mut Vec<usize>, out: &mut [Scalar]) {
        if pos == args.len() {
            axpy(out, coeff, &self.eval_basis(idx));
            return;
        }
        for (i, a) in args[pos].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            idx[pos] = i;
            self.eval_rec(args, pos + 1, &(coeff * a), idx, out);
        }
    }
}

/// Sorts in place, returning the permutation sign, or 0 on a repeat.
fn sort_with_sign(v: &mut [usize]) -> i8 {
    let mut sgn = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sgn = -sgn;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sgn
    }
}

/// Evaluates `f(b_1, ..., b_k)` where each argument is a coordinate vector
/// but most are basis vectors; `vector_slot` holds the one general vector.
pub(crate) fn eval_with_vector(f: &Cochain, basis_args: &[usize], vector_slot: usize, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = zero_vec(f.field, f.dim_target);
    let mut args: Vec<usize> = Vec::with_capacity(basis_args.len() + 1);
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        args.clear();
        args.extend_from_slice(&basis_args[..vector_slot]);
        args.push(k);
        args.extend_from_slice(&basis_args[vector_slot..]);
        axpy(&mut out, c, &f.eval_basis(&args));
    }
    out
}

fn check_coboundary_shapes(a: &PreLieAlgebra, rep: &Actions, f: &Cochain) -> Result<(), Error> {
    if rep.dim_g != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "representation of a {}-dimensional algebra used with dimension {}",
            rep.dim_g,
            a.dim()
        )));
    }
    if f.dim_source != a.dim() || f.dim_target != rep.dim_v {
        return Err(Error::Shape(format!(
            "cochain maps {}→{}, expected {}→{}",
            f.dim_source,
            f.dim_target,
            a.dim(),
            rep.dim_v
        )));
    }
    Ok(())
}

/// All canonical argument tuples of a cochain space, the first block
/// increasing and the last index free, in storage order.
pub fn stored_tuples(c: &Cochain) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(c.values.len() / c.dim_target.max(1));
    for tuple in combinations(c.dim_source, c.degree - 1) {
        for last in 0..c.dim_source {
            let mut t = tuple.clone();
            t.push(last);
            out.push(t);
        }
    }
    out
}

/// `(∂f)(x_1, ..., x_{n+1})` at basis arguments given in any order.
///
/// The four sums: `L_{x_i} f(.., x̂_i, ..)`, `R_{x_{n+1}} f(.., x̂_i, .., x_n, x_i)`,
/// `−f(.., x̂_i, .., x_n, x_i·x_{n+1})` and `f([x_i,x_j], .., x̂_i, .., x̂_j, ..)`.
pub fn coboundary_at(a: &PreLieAlgebra, rep: &Actions, f: &Cochain, x: &[usize]) -> Vec<Scalar> {
    let n = f.degree;
    assert_eq!(x.len(), n + 1, "coboundary evaluated at the wrong number of arguments");
    let field = f.field;
    let mut out = zero_vec(field, f.dim_target);
    let last = x[n];
    let mut rest: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let s = sign(field, i);
        rest.clear();
        rest.extend(x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
        let fv = f.eval_basis(&rest);
        axpy(&mut out, &s, &rep.left[x[i]].mul_vec(&fv));

        rest.clear();
        rest.extend(x[..n].iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
        rest.push(x[i]);
        let fv = f.eval_basis(&rest);
        axpy(&mut out, &s, &rep.right[last].mul_vec(&fv));

        rest.pop();
        let fv = eval_with_vector(f, &rest, n - 1, a.basis_product(x[i], last));
        axpy(&mut out, &-&s, &fv);
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = sign(field, i + j);
            let br = sub_vec(a.basis_product(x[i], x[j]), a.basis_product(x[j], x[i]));
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v));
            let fv = eval_with_vector(f, &rest, 0, &br);
            axpy(&mut out, &s, &fv);
        }
    }
    out
}

/// The coboundary `∂f ∈ C^{n+1}(g, V)`.
pub fn coboundary(a: &PreLieAlgebra, rep: &Actions, f: &Cochain) -> Result<Cochain, Error> {
    check_coboundary_shapes(a, rep, f)?;
    Ok(Cochain::from_fn(f.field, f.degree + 1, f.dim_source, f.dim_target, |x| {
        coboundary_at(a, rep, f, x)
    }))
}

/// Matrix of `∂: C^n → C^{n+1}` on the canonical bases; column `k` is the
/// image of the `k`-th basis cochain.
pub fn coboundary_matrix(a: &PreLieAlgebra, rep: &Actions, degree: usize) -> Result<Matrix, Error> {
    differential_matrix(a.field(), degree, a.dim(), rep.dim_v, |f| coboundary(a, rep, f))
}

/// Matrix of any linear map between cochain spaces, column by column.
pub fn differential_matrix(
    field: Field,
    degree: usize,
    dim_source: usize,
    dim_target: usize,
    mut d: impl FnMut(&Cochain) -> Result<Cochain, Error>,
) -> Result<Matrix, Error> {
    let cols_n = Cochain::space_dim(degree, dim_source, dim_target);
    let rows_n = Cochain::space_dim(degree + 1, dim_source, dim_target);
    let mut columns = Vec::with_capacity(cols_n);
    for k in 0..cols_n {
        let image = d(&Cochain::basis_element(field, degree, dim_source, dim_target, k))?;
        columns.push(image.values);
    }
    Ok(Matrix::from_columns(field, rows_n, &columns))
}

/// Dimensions of cocycles, coboundaries and cohomology in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    /// Whether `∂ ∘ ∂` vanished on the matrices used.
    pub squares_to_zero: bool,
}

/// Cohomology dimensions from the differential leaving degree `n` and the
/// one entering it (`None` in degree 1, where `B^1 = 0`).
pub fn cohomology_from_matrices(degree: usize, d_n: &Matrix, d_prev: Option<&Matrix>) -> CohomologyReport {
    let dim_z = d_n.cols() - d_n.rank();
    let (dim_b, squares_to_zero) = match d_prev {
        Some(p) => (p.rank(), d_n.mul(p).map_or(false, |m| m.is_zero())),
        None => (0, true),
    };
    CohomologyReport {
        degree,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b.min(dim_z),
        squares_to_zero,
    }
}

/// `dim Z^n`, `dim B^n`, `dim H^n` of `g` with coefficients in `V`.
pub fn cohomology(a: &PreLieAlgebra, rep: &Actions, degree: usize) -> Result<CohomologyReport, Error> {
    if degree == 0 {
        return Err(Error::Shape("cohomology starts in degree 1".into()));
    }
    let d_n = coboundary_matrix(a, rep, degree)?;
    let d_prev = if degree >= 2 {
        Some(coboundary_matrix(a, rep, degree - 1)?)
    } else {
        None
    };
    Ok(cohomology_from_matrices(degree, &d_n, d_prev.as_ref()))
}

/// Checks the explicit 2-cocycle condition
/// `L_x H(y,z) − L_y H(x,z) + R_z H(y,x) − R_z H(x,y) − H(y,x·z) + H(x,y·z) − H([x,y],z) = 0`
/// on all basis triples, and independently that `∂H = 0`.
pub fn check_two_cocycle(a: &PreLieAlgebra, rep: &Actions, h: &Cochain) -> Result<Report, Error> {
    if h.degree != 2 {
        return Err(Error::Shape(format!("a 2-cocycle must have degree 2, got {}", h.degree)));
    }
    check_coboundary_shapes(a, rep, h)?;
    let mut r = Report::with_conditions("two-cocycle", &["cocycle identity", "coboundary route agrees"]);
    let d = a.dim();
    let field = a.field();
    let dh = coboundary(a, rep, h)?;
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let e = |i| unit_vec(field, d, i);
                let hv = |p: &[Scalar], q: &[Scalar]| h.eval(&[p.to_vec(), q.to_vec()]).expect("shapes checked");
                let mut s = rep.left[x].mul_vec(&h.eval_basis(&[y, z]));
                s = sub_vec(&s, &rep.left[y].mul_vec(&h.eval_basis(&[x, z])));
                axpy(&mut s, &field.one(), &rep.right[z].mul_vec(&h.eval_basis(&[y, x])));
                s = sub_vec(&s, &rep.right[z].mul_vec(&h.eval_basis(&[x, y])));
                s = sub_vec(&s, &hv(&e(y), a.basis_product(x, z)));
                axpy(&mut s, &field.one(), &hv(&e(x), a.basis_product(y, z)));
                let br = sub_vec(a.basis_product(x, y), a.basis_product(y, x));
                s = sub_vec(&s, &hv(&br, &e(z)));
                let generic = dh.eval_basis(&[x, y, z]);
                if !is_zero_vec(&sub_vec(&s, &generic)) {
                    r.fail("coboundary route agrees");
                }
                r.record("cocycle identity", &[x, y, z], s);
            }
        }
    }
    Ok(r)
}
