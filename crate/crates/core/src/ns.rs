//! NS-pre-Lie algebras `(A, ▷, ◁, ∘)`, Nijenhuis operators, and the
//! constructions linking them to RCW Reynolds operators.

use alloc::format;
use alloc::vec::Vec;

use crate::cochain::Cochain;
use crate::error::Error;
use crate::linalg::{add_vec, sub_vec, Matrix};
use crate::prelie::{check_prelie, Actions, PreLieAlgebra, Representation, StructureTensor};
use crate::report::Report;
use crate::reynolds::{check_operator_shape, RcwSetting, ReynoldsData};
use crate::scalar::{Field, Scalar};

pub const A1: &str = "(A1) (x∗y)▷z − x▷(y▷z) = (y∗x)▷z − y▷(x▷z)";
pub const A2: &str = "(A2) x▷(y◁z) − (x▷y)◁z = y◁(x∗z) − (y◁x)◁z";
pub const A3: &str = "(A3) (x∗y)∘z − x∘(y∗z) + (x∘y)◁z − x▷(y∘z) = (y∗x)∘z − y∘(x∗z) + (y∘x)◁z − y▷(x∘z)";

/// Three products on one space, not yet checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsTensors {
    /// `▷`
    pub tri: StructureTensor,
    /// `◁`
    pub trl: StructureTensor,
    /// `∘`
    pub circ: StructureTensor,
}

impl NsTensors {
    pub fn dim(&self) -> usize {
        self.tri.dim()
    }

    pub fn field(&self) -> Field {
        self.tri.field()
    }

    /// `x ∗ y = x▷y + x◁y + x∘y`.
    pub fn star(&self) -> Result<StructureTensor, Error> {
        self.tri.add(&self.trl)?.add(&self.circ)
    }

    fn shape(&self) -> Result<(), Error> {
        for t in [&self.trl, &self.circ] {
            if t.dim() != self.tri.dim() {
                return Err(Error::Shape(format!("products of dimensions {} and {}", self.tri.dim(), t.dim())));
            }
            if t.field() != self.tri.field() {
                return Err(Error::FieldMismatch(format!("{}", self.tri.field()), format!("{}", t.field())));
            }
        }
        Ok(())
    }
}

/// Checks the three NS-pre-Lie axioms on all basis triples.
pub fn check_ns_prelie(ns: &NsTensors) -> Result<Report, Error> {
    ns.shape()?;
    let star = ns.star()?;
    let (tri, trl, circ) = (&ns.tri, &ns.trl, &ns.circ);
    let n = ns.dim();
    let e = |i: usize| crate::linalg::unit_vec(ns.field(), n, i);
    let mut r = Report::with_conditions("ns-prelie", &[A1, A2, A3]);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (ex, ey, ez) = (e(x), e(y), e(z));
                let xy = star.basis_product(x, y);
                let yx = star.basis_product(y, x);

                let lhs = sub_vec(&tri.product(xy, &ez), &tri.product(&ex, tri.basis_product(y, z)));
                let rhs = sub_vec(&tri.product(yx, &ez), &tri.product(&ey, tri.basis_product(x, z)));
                r.record(A1, &[x, y, z], sub_vec(&lhs, &rhs));

                let lhs = sub_vec(&tri.product(&ex, trl.basis_product(y, z)), &trl.product(tri.basis_product(x, y), &ez));
                let rhs = sub_vec(&trl.product(&ey, star.basis_product(x, z)), &trl.product(trl.basis_product(y, x), &ez));
                r.record(A2, &[x, y, z], sub_vec(&lhs, &rhs));

                // (a∗b)∘z − a∘(b∗z) + (a∘b)◁z − a▷(b∘z)
                let side = |a: usize, b: usize| {
                    let mut v = sub_vec(&circ.product(star.basis_product(a, b), &ez), &circ.product(&e(a), star.basis_product(b, z)));
                    v = add_vec(&v, &trl.product(circ.basis_product(a, b), &ez));
                    sub_vec(&v, &tri.product(&e(a), circ.basis_product(b, z)))
                };
                let (lhs, rhs) = (side(x, y), side(y, x));
                r.record(A3, &[x, y, z], sub_vec(&lhs, &rhs));
            }
        }
    }
    Ok(r)
}

/// A verified NS-pre-Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsPreLie {
    tensors: NsTensors,
}

impl NsPreLie {
    pub fn new(tensors: NsTensors) -> Result<Self, Error> {
        let r = check_ns_prelie(&tensors)?;
        if !r.passed() {
            return Err(Error::UnverifiedNs(r));
        }
        Ok(NsPreLie { tensors })
    }

    pub fn tensors(&self) -> &NsTensors {
        &self.tensors
    }

    pub fn dim(&self) -> usize {
        self.tensors.dim()
    }

    pub fn field(&self) -> Field {
        self.tensors.field()
    }
}

/// The subadjacent pre-Lie algebra `(A, ∗)`.
pub fn subadjacent(ns: &NsPreLie) -> Result<PreLieAlgebra, Error> {
    PreLieAlgebra::new(ns.tensors.star()?)
}

const NIJENHUIS: &str = "Nx·Ny = N(Nx·y + x·Ny − N(x·y))";

/// Checks the Nijenhuis identity on all basis pairs.
pub fn check_nijenhuis(g: &PreLieAlgebra, n: &Matrix) -> Result<Report, Error> {
    check_operator_shape(n, g.dim(), g.dim(), "N")?;
    let mut r = Report::with_conditions("nijenhuis", &[NIJENHUIS]);
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            let (nx, ny) = (n.column(x), n.column(y));
            let lhs = g.mul(&nx, &ny);
            r.record(NIJENHUIS, &[x, y], sub_vec(&lhs, &n.mul_vec(&deformed_at(g, n, x, y))));
        }
    }
    Ok(r)
}

/// `e_x ·_N e_y = Ne_x·e_y + e_x·Ne_y − N(e_x·e_y)`.
fn deformed_at(g: &PreLieAlgebra, n: &Matrix, x: usize, y: usize) -> Vec<Scalar> {
    let (ex, ey) = (crate::linalg::unit_vec(g.field(), g.dim(), x), crate::linalg::unit_vec(g.field(), g.dim(), y));
    let mut v = add_vec(&g.mul(&n.column(x), &ey), &g.mul(&ex, &n.column(y)));
    v = sub_vec(&v, &n.mul_vec(g.basis_product(x, y)));
    v
}

/// A verified Nijenhuis operator on a pre-Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisOperator {
    algebra: PreLieAlgebra,
    n: Matrix,
}

impl NijenhuisOperator {
    pub fn new(algebra: PreLieAlgebra, n: Matrix) -> Result<Self, Error> {
        let r = check_nijenhuis(&algebra, &n)?;
        if !r.passed() {
            return Err(Error::UnverifiedOperator(r));
        }
        Ok(NijenhuisOperator { algebra, n })
    }

    pub fn algebra(&self) -> &PreLieAlgebra {
        &self.algebra
    }

    pub fn operator(&self) -> &Matrix {
        &self.n
    }
}

fn deformed_tensor(op: &NijenhuisOperator) -> StructureTensor {
    let g = &op.algebra;
    StructureTensor::from_fn(g.field(), g.dim(), |x, y| deformed_at(g, &op.n, x, y))
}

/// `(g, ·_N)`. Both `·_N` and `· + ·_N` are checked to be pre-Lie.
pub fn deformed_product(op: &NijenhuisOperator) -> Result<PreLieAlgebra, Error> {
    let t = deformed_tensor(op);
    let sum = op.algebra.tensor().add(&t)?;
    let r = check_prelie(&sum);
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    PreLieAlgebra::new(t)
}

/// `x▷y = Nx·y`, `x◁y = x·Ny`, `x∘y = −N(x·y)`.
pub fn ns_from_nijenhuis(op: &NijenhuisOperator) -> Result<NsPreLie, Error> {
    let g = &op.algebra;
    let n = &op.n;
    let (f, d) = (g.field(), g.dim());
    let e = |i: usize| crate::linalg::unit_vec(f, d, i);
    let tensors = NsTensors {
        tri: StructureTensor::from_fn(f, d, |x, y| g.mul(&n.column(x), &e(y))),
        trl: StructureTensor::from_fn(f, d, |x, y| g.mul(&e(x), &n.column(y))),
        circ: StructureTensor::from_fn(f, d, |x, y| n.mul_vec(g.basis_product(x, y)).iter().map(|s| -s).collect()),
    };
    NsPreLie::new(tensors)
}

/// On `V`: `u▷v = L_{Ku}v`, `u◁v = R_{Kv}u`, `u∘v = H(Ku, Kv)`.
pub fn ns_from_reynolds(data: &ReynoldsData) -> Result<NsPreLie, Error> {
    let s = data.setting();
    let k = data.operator();
    let (f, m) = (s.field(), s.dim_v());
    let tensors = NsTensors {
        tri: StructureTensor::from_fn(f, m, |u, v| s.left(&k.column(u), &s.v_unit(v))),
        trl: StructureTensor::from_fn(f, m, |u, v| s.right(&k.column(v), &s.v_unit(u))),
        circ: StructureTensor::from_fn(f, m, |u, v| s.h(&k.column(u), &k.column(v))),
    };
    NsPreLie::new(tensors)
}

/// `K = id` on `(A, ∗)` with `L_x y = x▷y`, `R_y x = x◁y`, `H(x,y) = x∘y`.
/// Every piece is re-verified on the way in.
pub fn reynolds_from_ns(ns: &NsPreLie) -> Result<ReynoldsData, Error> {
    let t = &ns.tensors;
    let (f, d) = (ns.field(), ns.dim());
    let algebra = subadjacent(ns)?;
    let left: Vec<Matrix> = (0..d).map(|x| t.tri.left_matrix(x)).collect();
    let right: Vec<Matrix> = (0..d).map(|y| t.trl.right_matrix(y)).collect();
    let rep = Representation::new(&algebra, Actions::new(f, d, d, left, right)?)?;
    let h = Cochain::from_bilinear(f, d, d, |x, y| t.circ.basis_product(x, y).to_vec());
    let setting = RcwSetting::new(algebra, rep, h)?;
    ReynoldsData::new(setting, Matrix::identity(f, d))
}

/// On `g`, for invertible `K`: `x◁y = K(R_y K⁻¹x)`, `x▷y = K(L_x K⁻¹y)`,
/// `x∘y = KH(x,y)`. The sum of the three is checked to be the product of
/// `g`.
pub fn compatible_ns_from_invertible(data: &ReynoldsData) -> Result<NsPreLie, Error> {
    let s = data.setting();
    if s.dim_g() != s.dim_v() {
        return Err(Error::Shape(format!("K maps dimension {} to {}, needs a square operator", s.dim_v(), s.dim_g())));
    }
    let k = data.operator();
    let kinv = k.inverse()?;
    let (f, d) = (s.field(), s.dim_g());
    let tensors = NsTensors {
        tri: StructureTensor::from_fn(f, d, |x, y| k.mul_vec(&s.left(&s.g_unit(x), &kinv.column(y)))),
        trl: StructureTensor::from_fn(f, d, |x, y| k.mul_vec(&s.right(&s.g_unit(y), &kinv.column(x)))),
        circ: StructureTensor::from_fn(f, d, |x, y| k.mul_vec(&s.h(&s.g_unit(x), &s.g_unit(y)))),
    };
    let star = tensors.star()?;
    if &star != s.algebra().tensor() {
        let mut r = Report::with_conditions("compatible-ns", &["x▷y + x◁y + x∘y = x·y"]);
        for x in 0..d {
            for y in 0..d {
                r.record("x▷y + x◁y + x∘y = x·y", &[x, y], sub_vec(star.basis_product(x, y), s.algebra().basis_product(x, y)));
            }
        }
        return Err(Error::UnverifiedOperator(r));
    }
    NsPreLie::new(tensors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g3_data, noncommutative_data, Q};
    use crate::prelie::is_prelie;
    use crate::reynolds::induced_product;
    use crate::reynolds::{reynolds_from_invertible_cochain, RcwSetting};
    use crate::prelie::regular_representation;

    fn two_dim() -> PreLieAlgebra {
        PreLieAlgebra::new(StructureTensor::from_entries(Q, 2, &[(1, 0, 0, -1), (1, 1, 1, 1)])).unwrap()
    }

    fn three_dim() -> PreLieAlgebra {
        PreLieAlgebra::new(StructureTensor::from_entries(Q, 3, &[(2, 1, 1, 1), (2, 2, 2, -1)])).unwrap()
    }

    fn table(d: usize, entries: &[(usize, usize, usize, i64)]) -> StructureTensor {
        StructureTensor::from_entries(Q, d, entries)
    }

    #[test]
    fn two_dimensional_table() {
        for (c, d) in [(1, 0), (1, 1), (2, 3)] {
            let n = NijenhuisOperator::new(two_dim(), Matrix::from_i64(Q, &[&[c, d], &[0, c]])).unwrap();
            let ns = ns_from_nijenhuis(&n).unwrap();
            let t = ns.tensors();
            assert_eq!(t.tri, table(2, &[(1, 0, 0, -c), (1, 1, 1, c)]));
            assert_eq!(t.trl, table(2, &[(1, 0, 0, -c), (1, 1, 0, -d), (1, 1, 1, c)]));
            assert_eq!(t.circ, table(2, &[(1, 0, 0, c), (1, 1, 0, -d), (1, 1, 1, -c)]));
            let sub = subadjacent(&ns).unwrap();
            assert_eq!(sub.tensor(), deformed_product(&n).unwrap().tensor());
        }
    }

    #[test]
    fn three_dimensional_table() {
        for (d, e, f) in [(1, 1, 0), (1, 1, 1)] {
            let n = Matrix::from_i64(Q, &[&[d, 0, 0], &[0, e, f], &[0, 0, e]]);
            let ns = ns_from_nijenhuis(&NijenhuisOperator::new(three_dim(), n).unwrap()).unwrap();
            let t = ns.tensors();
            assert_eq!(t.tri, table(3, &[(2, 1, 1, e), (2, 2, 2, -e)]));
            assert_eq!(t.trl, table(3, &[(2, 1, 1, e), (2, 2, 1, f), (2, 2, 2, -e)]));
            assert_eq!(t.circ, table(3, &[(2, 1, 1, -e), (2, 2, 1, f), (2, 2, 2, e)]));
            assert!(is_prelie(subadjacent(&ns).unwrap().tensor()));
        }
    }

    #[test]
    fn subadjacent_of_two_dim_table() {
        let n = NijenhuisOperator::new(two_dim(), Matrix::from_i64(Q, &[&[1, 1], &[0, 1]])).unwrap();
        let sub = subadjacent(&ns_from_nijenhuis(&n).unwrap()).unwrap();
        assert_eq!(sub.tensor(), &table(2, &[(1, 0, 0, -1), (1, 1, 0, -2), (1, 1, 1, 1)]));
    }

    #[test]
    fn trivial_cases() {
        let z = NsTensors { tri: StructureTensor::zero(Q, 2), trl: StructureTensor::zero(Q, 2), circ: StructureTensor::zero(Q, 2) };
        assert!(check_ns_prelie(&z).unwrap().passed());
        let zns = NsPreLie::new(z.clone()).unwrap();
        assert!(subadjacent(&zns).unwrap().tensor().is_zero());
        let rd = reynolds_from_ns(&zns).unwrap();
        assert_eq!(ns_from_reynolds(&rd).unwrap(), zns);

        let g = two_dim();
        assert!(check_nijenhuis(&g, &Matrix::identity(Q, 2)).unwrap().passed());
        assert!(check_nijenhuis(&g, &Matrix::zeros(Q, 2, 2)).unwrap().passed());
        let id = NijenhuisOperator::new(g.clone(), Matrix::identity(Q, 2)).unwrap();
        assert_eq!(deformed_product(&id).unwrap().tensor(), g.tensor());
        let zero = NijenhuisOperator::new(g, Matrix::zeros(Q, 2, 2)).unwrap();
        assert!(deformed_product(&zero).unwrap().tensor().is_zero());
        assert_eq!(ns_from_nijenhuis(&zero).unwrap().tensors(), &z);
        assert!(matches!(
            NsPreLie::new(NsTensors { tri: table(2, &[(0, 0, 1, 1)]), trl: StructureTensor::zero(Q, 2), circ: table(2, &[(1, 1, 0, 1)]) }),
            Err(Error::UnverifiedNs(_))
        ));
    }

    #[test]
    fn dendriform_pair_with_trivial_circ() {
        // An operator with H = 0 gives ∘ = 0.
        let d = g3_data(Q, &[&[1, 0, 2], &[0, 1, 0], &[0, 0, 0]]);
        let s = RcwSetting::without_cocycle(d.setting().algebra().clone(), d.setting().rep().clone());
        let d0 = ReynoldsData::new(s, d.operator().clone()).unwrap();
        let ns = ns_from_reynolds(&d0).unwrap();
        assert!(ns.tensors().circ.is_zero());
        let again = NsPreLie::new(NsTensors { circ: StructureTensor::zero(Q, 3), ..ns.tensors().clone() }).unwrap();
        assert_eq!(again, ns);
    }

    #[test]
    fn reynolds_round_trips() {
        let e11 = g3_data(Q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let ns = ns_from_reynolds(&e11).unwrap();
        let t = ns.tensors();
        assert!(t.tri.is_zero() && t.trl.is_zero() && t.circ.is_zero());

        for d in [noncommutative_data(), g3_data(Q, &[&[1, 2, 0], &[0, 3, 1], &[0, 0, 0]])] {
            let ns = ns_from_reynolds(&d).unwrap();
            assert_eq!(subadjacent(&ns).unwrap().tensor(), induced_product(&d).unwrap().tensor());
            let back = reynolds_from_ns(&ns).unwrap();
            assert_eq!(ns_from_reynolds(&back).unwrap(), ns);
        }

        let n = NijenhuisOperator::new(two_dim(), Matrix::from_i64(Q, &[&[1, 1], &[0, 1]])).unwrap();
        let ns = ns_from_nijenhuis(&n).unwrap();
        let rd = reynolds_from_ns(&ns).unwrap();
        assert_eq!(ns_from_reynolds(&rd).unwrap(), ns);
    }

    #[test]
    fn compatible_structure() {
        let d = noncommutative_data();
        let ns = compatible_ns_from_invertible(&d).unwrap();
        assert_eq!(&ns.tensors().star().unwrap(), d.setting().algebra().tensor());

        let g = PreLieAlgebra::new(StructureTensor::from_entries(Q, 1, &[(0, 0, 0, 1)])).unwrap();
        let rep = regular_representation(&g);
        let d0 = ReynoldsData::new(RcwSetting::without_cocycle(g.clone(), rep.clone()), Matrix::zeros(Q, 1, 1)).unwrap();
        assert_eq!(compatible_ns_from_invertible(&d0), Err(Error::Singular));
        // The only operator on the one-dimensional unital algebra is 0.
        assert!(ReynoldsData::new(RcwSetting::without_cocycle(g.clone(), rep.clone()), Matrix::identity(Q, 1)).is_err());

        let ab = PreLieAlgebra::abelian(Q, 2);
        let zrep = Representation::zero(&ab, 2);
        let di = ReynoldsData::new(RcwSetting::without_cocycle(ab, zrep), Matrix::identity(Q, 2)).unwrap();
        let zns = compatible_ns_from_invertible(&di).unwrap();
        assert!(zns.tensors().star().unwrap().is_zero());

        let h = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let dd = reynolds_from_invertible_cochain(two_dim(), regular_representation(&two_dim()), &Cochain::from_matrix(&h)).unwrap();
        let c = compatible_ns_from_invertible(&dd).unwrap();
        assert_eq!(&c.tensors().star().unwrap(), two_dim().tensor());
    }
}
