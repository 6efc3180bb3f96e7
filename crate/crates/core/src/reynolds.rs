//! Relative cocycle weighted (RCW) Reynolds operators `K: V → g`,
//! Reynolds operators of weight λ, D-Reynolds operators, and the
//! constructions around them.

use alloc::format;
use alloc::vec::Vec;

use crate::cochain::{check_two_cocycle, coboundary, Cochain};
use crate::error::Error;
use crate::linalg::{add_vec, axpy, sub_vec, unit_vec, zero_vec, Matrix};
use crate::prelie::{check_morphism, check_derivation, check_prelie, Actions, PreLieAlgebra, Representation, StructureTensor};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

/// A pre-Lie algebra `g`, a representation `V` and a verified 2-cocycle
/// `H ∈ C^2(g, V)`: everything an RCW Reynolds operator is defined against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcwSetting {
    algebra: PreLieAlgebra,
    rep: Representation,
    cocycle: Cochain,
}

impl RcwSetting {
    pub fn new(algebra: PreLieAlgebra, rep: Representation, cocycle: Cochain) -> Result<Self, Error> {
        let r = check_two_cocycle(&algebra, &rep, &cocycle)?;
        if !r.passed() {
            return Err(Error::UnverifiedCocycle(r));
        }
        Ok(RcwSetting { algebra, rep, cocycle })
    }

    /// The setting with `H = 0`.
    pub fn without_cocycle(algebra: PreLieAlgebra, rep: Representation) -> Self {
        let cocycle = Cochain::zero(algebra.field(), 2, algebra.dim(), rep.dim_v);
        RcwSetting { algebra, rep, cocycle }
    }

    pub fn algebra(&self) -> &PreLieAlgebra {
        &self.algebra
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim_v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.algebra.mul(x, y)
    }

    pub fn left(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        self.rep.act_left(x, u)
    }

    pub fn right(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        self.rep.act_right(x, u)
    }

    /// `H(x, y)` for coordinate vectors.
    pub fn h(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.cocycle
            .eval(&[x.to_vec(), y.to_vec()])
            .expect("cocycle shape matches the setting")
    }

    pub fn g_unit(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field(), self.dim_g(), i)
    }

    pub fn v_unit(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field(), self.dim_v(), i)
    }

    /// Same setting with the cocycle replaced by `H + ∂h` for `h: g → V`.
    pub fn shifted(&self, h: &Cochain) -> Result<RcwSetting, Error> {
        check_operator_shape(&h.to_matrix()?, self.dim_v(), self.dim_g(), "h")?;
        let dh = coboundary(&self.algebra, &self.rep, h)?;
        RcwSetting::new(self.algebra.clone(), self.rep.clone(), self.cocycle.add(&dh)?)
    }

    /// `L_{Ku} v + R_{Kv} u + H(Ku, Kv)`: the argument of `K` on the right of
    /// the RCW identity, which is also the induced product `u ·_K v`.
    pub fn induced(&self, k: &Matrix, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let (ku, kv) = (k.mul_vec(u), k.mul_vec(v));
        let mut out = self.left(&ku, v);
        axpy(&mut out, &self.field().one(), &self.right(&kv, u));
        axpy(&mut out, &self.field().one(), &self.h(&ku, &kv));
        out
    }

    /// `Ku·Kv − K(L_{Ku}v + R_{Kv}u + H(Ku,Kv))`.
    pub fn rcw_residual(&self, k: &Matrix, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let lhs = self.mul(&k.mul_vec(u), &k.mul_vec(v));
        sub_vec(&lhs, &k.mul_vec(&self.induced(k, u, v)))
    }
}

pub(crate) fn check_operator_shape(k: &Matrix, rows: usize, cols: usize, name: &str) -> Result<(), Error> {
    if k.rows() != rows || k.cols() != cols {
        return Err(Error::Shape(format!(
            "{} is {}x{}, expected {}x{}",
            name,
            k.rows(),
            k.cols(),
            rows,
            cols
        )));
    }
    Ok(())
}

const RCW: &str = "Ku·Kv = K(L_{Ku}v + R_{Kv}u + H(Ku,Kv))";

fn rcw_report(s: &RcwSetting, k: &Matrix, stop_first: bool) -> Result<Report, Error> {
    check_operator_shape(k, s.dim_g(), s.dim_v(), "K")?;
    if k.field() != s.field() {
        return Err(Error::FieldMismatch(
            alloc::string::ToString::to_string(&k.field()),
            alloc::string::ToString::to_string(&s.field()),
        ));
    }
    let mut r = Report::with_conditions("rcw-reynolds", &[RCW]);
    for u in 0..s.dim_v() {
        for v in 0..s.dim_v() {
            let res = s.rcw_residual(k, &s.v_unit(u), &s.v_unit(v));
            if r.record(RCW, &[u, v], res) && stop_first {
                return Ok(r);
            }
        }
    }
    Ok(r)
}

/// Checks the RCW identity on all pairs of module basis vectors.
pub fn check_rcw_reynolds(s: &RcwSetting, k: &Matrix) -> Result<Report, Error> {
    rcw_report(s, k, false)
}

/// Early-exit form of [`check_rcw_reynolds`]; shape errors count as failure.
pub fn is_rcw_reynolds(s: &RcwSetting, k: &Matrix) -> bool {
    rcw_report(s, k, true).map_or(false, |r| r.passed())
}

/// A verified RCW Reynolds operator together with its setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReynoldsData {
    setting: RcwSetting,
    k: Matrix,
}

impl ReynoldsData {
    pub fn new(setting: RcwSetting, k: Matrix) -> Result<Self, Error> {
        let r = check_rcw_reynolds(&setting, &k)?;
        if !r.passed() {
            return Err(Error::UnverifiedOperator(r));
        }
        Ok(ReynoldsData { setting, k })
    }

    pub fn setting(&self) -> &RcwSetting {
        &self.setting
    }

    pub fn operator(&self) -> &Matrix {
        &self.k
    }

    pub fn field(&self) -> Field {
        self.setting.field()
    }

    pub fn dim_g(&self) -> usize {
        self.setting.dim_g()
    }

    pub fn dim_v(&self) -> usize {
        self.setting.dim_v()
    }
}

/// The twisted semidirect product structure on `g ⊕ V`:
/// `(x,u)·(y,v) = (x·y, L_x v + R_y u + H(x,y))`, basis `g` first.
/// `h = None` means `H = 0`. No identity is checked.
pub fn semidirect_tensor(g: &PreLieAlgebra, act: &Actions, h: Option<&Cochain>) -> StructureTensor {
    let (n, m) = (g.dim(), act.dim_v);
    let field = g.field();
    StructureTensor::from_fn(field, n + m, |i, j| {
        let mut out = zero_vec(field, n + m);
        match (i < n, j < n) {
            (true, true) => {
                out[..n].clone_from_slice(g.basis_product(i, j));
                if let Some(h) = h {
                    out[n..].clone_from_slice(&h.eval_basis(&[i, j]));
                }
            }
            (true, false) => out[n..].clone_from_slice(&act.left[i].column(j - n)),
            (false, true) => out[n..].clone_from_slice(&act.right[j].column(i - n)),
            (false, false) => {}
        }
        out
    })
}

/// `g ⋉_H V` as a verified pre-Lie algebra of dimension `dim g + dim V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semidirect {
    pub algebra: PreLieAlgebra,
    pub dim_g: usize,
    pub dim_v: usize,
}

impl Semidirect {
    /// Coordinates of `(x, u)`.
    pub fn pair(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        let mut out = x.to_vec();
        out.extend_from_slice(u);
        out
    }
}

pub fn semidirect(s: &RcwSetting) -> Result<Semidirect, Error> {
    let t = semidirect_tensor(&s.algebra, &s.rep, Some(&s.cocycle));
    Ok(Semidirect {
        algebra: PreLieAlgebra::new(t)?,
        dim_g: s.dim_g(),
        dim_v: s.dim_v(),
    })
}

/// Checks that the graph `{(Ku, u)}` is closed under the twisted semidirect
/// product, by rank comparison inside `g ⊕ V`.
pub fn check_graph_subalgebra(s: &RcwSetting, k: &Matrix) -> Result<Report, Error> {
    check_operator_shape(k, s.dim_g(), s.dim_v(), "K")?;
    let t = semidirect_tensor(&s.algebra, &s.rep, Some(&s.cocycle));
    let (n, m) = (s.dim_g(), s.dim_v());
    let gens: Vec<Vec<Scalar>> = (0..m)
        .map(|u| {
            let mut w = k.column(u);
            w.extend(s.v_unit(u));
            w
        })
        .collect();
    let graph = Matrix::from_columns(s.field(), n + m, &gens);
    let base_rank = graph.rank();
    const CLOSED: &str = "graph closed under the twisted product";
    let mut r = Report::with_conditions("graph-subalgebra", &[CLOSED]);
    for u in 0..m {
        for v in 0..m {
            let p = t.product(&gens[u], &gens[v]);
            let mut cols = gens.clone();
            cols.push(p.clone());
            if Matrix::from_columns(s.field(), n + m, &cols).rank() != base_rank {
                r.record(CLOSED, &[u, v], p);
            }
        }
    }
    Ok(r)
}

/// The pre-Lie product `u ·_K v = L_{Ku}v + R_{Kv}u + H(Ku,Kv)` on `V`.
pub fn induced_product(d: &ReynoldsData) -> Result<PreLieAlgebra, Error> {
    let s = &d.setting;
    let t = StructureTensor::from_fn(s.field(), s.dim_v(), |u, v| s.induced(&d.k, &s.v_unit(u), &s.v_unit(v)));
    let a = PreLieAlgebra::new(t)?;
    let r = check_morphism(&a, &s.algebra, &d.k)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    Ok(a)
}

/// The algebras `g ⋉_H V`, `g ⋉_{H+∂h} V` and the isomorphism
/// `Ψ_h(x,u) = (x, u − h(x))` between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftIsomorphism {
    pub source: Semidirect,
    pub target: Semidirect,
    pub shifted_cocycle: Cochain,
    pub psi: Matrix,
}

pub fn shift_isomorphism(s: &RcwSetting, h: &Cochain) -> Result<ShiftIsomorphism, Error> {
    let shifted = s.shifted(h)?;
    let hm = h.to_matrix()?;
    let (n, m) = (s.dim_g(), s.dim_v());
    let field = s.field();
    let mut psi = Matrix::identity(field, n + m);
    for i in 0..m {
        for j in 0..n {
            psi.set(n + i, j, -hm.get(i, j));
        }
    }
    let source = semidirect(s)?;
    let target = semidirect(&shifted)?;
    let r = check_morphism(&source.algebra, &target.algebra, &psi)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    psi.inverse()?;
    Ok(ShiftIsomorphism {
        source,
        target,
        shifted_cocycle: shifted.cocycle.clone(),
        psi,
    })
}

/// `K ∘ (id_V − h∘K)^{-1}`, an RCW Reynolds operator for `H + ∂h`.
pub fn shift_operator(d: &ReynoldsData, h: &Cochain) -> Result<ReynoldsData, Error> {
    let s = &d.setting;
    let shifted = s.shifted(h)?;
    let hk = h.to_matrix()?.mul(&d.k)?;
    let m = Matrix::identity(s.field(), s.dim_v()).sub(&hk)?;
    let k_new = d.k.mul(&m.inverse()?)?;
    ReynoldsData::new(shifted, k_new)
}

/// The result of a gauge transformation: `K_B` and the isomorphism
/// `id_V + B∘K` from `(V, ·_K)` to `(V, ·_{K_B})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    pub operator: ReynoldsData,
    pub isomorphism: Matrix,
}

/// `K_B = K ∘ (id_V + B∘K)^{-1}` for a 1-cocycle `B: g → V`.
pub fn gauge_transform(d: &ReynoldsData, b: &Cochain) -> Result<GaugeTransform, Error> {
    let s = &d.setting;
    let bm = b.to_matrix()?;
    check_operator_shape(&bm, s.dim_v(), s.dim_g(), "B")?;
    let db = coboundary(&s.algebra, &s.rep, b)?;
    if !db.is_zero() {
        let mut r = Report::with_conditions("one-cocycle", &["∂B = 0"]);
        for (tuple, last, v) in db.nonzero_entries() {
            let mut idx = tuple;
            idx.push(last);
            r.record("∂B = 0", &idx, v);
        }
        return Err(Error::NotCocycle(r));
    }
    let iso = Matrix::identity(s.field(), s.dim_v()).add(&bm.mul(&d.k)?)?;
    let inv = iso.inverse().map_err(|_| Error::NotAdmissible)?;
    let k_b = d.k.mul(&inv)?;
    let out = ReynoldsData::new(s.clone(), k_b)?;
    let before = induced_product(d)?;
    let after = induced_product(&out)?;
    let r = check_morphism(&before, &after, &iso)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    Ok(GaugeTransform {
        operator: out,
        isomorphism: iso,
    })
}

/// For invertible `h: g → V`, the operator `K = h^{-1}` is RCW Reynolds for
/// `H = −∂h`.
pub fn reynolds_from_invertible_cochain(g: PreLieAlgebra, rep: Representation, h: &Cochain) -> Result<ReynoldsData, Error> {
    let hm = h.to_matrix()?;
    if !hm.is_square() {
        return Err(Error::Singular);
    }
    let k = hm.inverse()?;
    let dh = coboundary(&g, &rep, h)?;
    let setting = RcwSetting::new(g, rep, dh.scale(&-dh.field().one()))?;
    ReynoldsData::new(setting, k)
}

/// Checks that `(φ, ψ)` is a morphism of RCW Reynolds operators from `d` to
/// `e`.
pub fn check_rcw_morphism(d: &ReynoldsData, e: &ReynoldsData, phi: &Matrix, psi: &Matrix) -> Result<Report, Error> {
    let (s, t) = (&d.setting, &e.setting);
    check_operator_shape(phi, t.dim_g(), s.dim_g(), "φ")?;
    check_operator_shape(psi, t.dim_v(), s.dim_v(), "ψ")?;
    const KC: &str = "φ∘K = K'∘ψ";
    const LC: &str = "ψ(L_x u) = L'_{φx} ψu";
    const RC: &str = "ψ(R_x u) = R'_{φx} ψu";
    const HC: &str = "ψ∘H = H'∘(φ⊗φ)";
    let mut r = Report::with_conditions("rcw-morphism", &[KC, LC, RC, HC]);
    let lhs = phi.mul(&d.k)?;
    let rhs = e.k.mul(psi)?;
    for u in 0..s.dim_v() {
        r.record(KC, &[u], sub_vec(&lhs.column(u), &rhs.column(u)));
    }
    for x in 0..s.dim_g() {
        let px = phi.column(x);
        for u in 0..s.dim_v() {
            let pu = psi.column(u);
            let l = sub_vec(&psi.mul_vec(&s.rep.left[x].column(u)), &t.left(&px, &pu));
            r.record(LC, &[x, u], l);
            let rr = sub_vec(&psi.mul_vec(&s.rep.right[x].column(u)), &t.right(&px, &pu));
            r.record(RC, &[x, u], rr);
        }
        for y in 0..s.dim_g() {
            let hv = psi.mul_vec(&s.cocycle.eval_basis(&[x, y]));
            r.record(HC, &[x, y], sub_vec(&hv, &t.h(&px, &phi.column(y))));
        }
    }
    r.absorb("φ", check_morphism(&s.algebra, &t.algebra, phi)?);
    Ok(r)
}

const WEIGHTED: &str = "K(x)·K(y) = K(K(x)·y + x·K(y) + λK(x)·K(y))";

/// Checks `K(x)·K(y) = K(K(x)·y + x·K(y) + λ K(x)·K(y))` on basis pairs.
pub fn check_weighted_reynolds(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar) -> Result<Report, Error> {
    weighted_report(g, k, lambda, false)
}

pub fn is_weighted_reynolds(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar) -> bool {
    weighted_report(g, k, lambda, true).map_or(false, |r| r.passed())
}

fn weighted_report(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar, stop_first: bool) -> Result<Report, Error> {
    check_operator_shape(k, g.dim(), g.dim(), "K")?;
    let mut r = Report::with_conditions("weighted-reynolds", &[WEIGHTED]);
    let n = g.dim();
    for x in 0..n {
        for y in 0..n {
            let (kx, ky) = (k.column(x), k.column(y));
            let (ex, ey) = (unit_vec(g.field(), n, x), unit_vec(g.field(), n, y));
            let kk = g.mul(&kx, &ky);
            let mut inner = add_vec(&g.mul(&kx, &ey), &g.mul(&ex, &ky));
            axpy(&mut inner, lambda, &kk);
            if r.record(WEIGHTED, &[x, y], sub_vec(&kk, &k.mul_vec(&inner))) && stop_first {
                return Ok(r);
            }
        }
    }
    Ok(r)
}

/// Checks `K(x)·K(y) = K(K(x)·y + x·K(y) − (K(x)·D(1))·K(y))` on basis
/// pairs of a unital algebra.
pub fn check_d_reynolds(g: &PreLieAlgebra, d: &Matrix, k: &Matrix) -> Result<Report, Error> {
    let one = g.unit().ok_or(Error::NoUnit)?;
    check_operator_shape(k, g.dim(), g.dim(), "K")?;
    check_operator_shape(d, g.dim(), g.dim(), "D")?;
    const C: &str = "K(x)·K(y) = K(K(x)·y + x·K(y) − (K(x)·D(1))·K(y))";
    let mut r = Report::with_conditions("d-reynolds", &[C]);
    let d1 = d.mul_vec(one);
    let n = g.dim();
    for x in 0..n {
        for y in 0..n {
            let (kx, ky) = (k.column(x), k.column(y));
            let (ex, ey) = (unit_vec(g.field(), n, x), unit_vec(g.field(), n, y));
            let kk = g.mul(&kx, &ky);
            let inner = sub_vec(
                &add_vec(&g.mul(&kx, &ey), &g.mul(&ex, &ky)),
                &g.mul(&g.mul(&kx, &d1), &ky),
            );
            r.record(C, &[x, y], sub_vec(&kk, &k.mul_vec(&inner)));
        }
    }
    Ok(r)
}

/// `x ⋆ y = x·K(y) + K(x)·y + λ K(x)·K(y)` as a tensor (no checks).
pub fn star_tensor(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar) -> StructureTensor {
    let n = g.dim();
    StructureTensor::from_fn(g.field(), n, |x, y| {
        let (kx, ky) = (k.column(x), k.column(y));
        let (ex, ey) = (unit_vec(g.field(), n, x), unit_vec(g.field(), n, y));
        let mut out = add_vec(&g.mul(&ex, &ky), &g.mul(&kx, &ey));
        axpy(&mut out, lambda, &g.mul(&kx, &ky));
        out
    })
}

/// Verifies everything the star product promises: `K(x)·K(y) = K(x⋆y)`,
/// `⋆` is pre-Lie, `K` is weight-λ Reynolds for `⋆`, and `K` is a morphism
/// `(g,⋆) → (g,·)` commuting with `K`.
pub fn check_star_product(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar, star: &StructureTensor) -> Result<Report, Error> {
    const I: &str = "K(x)·K(y) = K(x⋆y)";
    let mut r = Report::with_conditions("star-product", &[I]);
    let n = g.dim();
    for x in 0..n {
        for y in 0..n {
            let kk = g.mul(&k.column(x), &k.column(y));
            r.record(I, &[x, y], sub_vec(&kk, &k.mul_vec(star.basis_product(x, y))));
        }
    }
    r.absorb("⋆ pre-Lie", check_prelie(star));
    match PreLieAlgebra::new(star.clone()) {
        Ok(sa) => {
            r.absorb("K weighted on ⋆", check_weighted_reynolds(&sa, k, lambda)?);
            r.absorb("K morphism", check_morphism(&sa, g, k)?);
        }
        Err(_) => r.fail("K weighted on ⋆"),
    }
    Ok(r)
}

/// The pre-Lie algebra `(g, ⋆)` of a weight-λ Reynolds operator.
pub fn star_product(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar) -> Result<PreLieAlgebra, Error> {
    let r = check_weighted_reynolds(g, k, lambda)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    let t = star_tensor(g, k, lambda);
    let r = check_star_product(g, k, lambda, &t)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    PreLieAlgebra::new(t)
}

/// `K^{-1} + λ·id` for an invertible weight-λ Reynolds operator `K`.
pub fn derivation_from_reynolds(g: &PreLieAlgebra, k: &Matrix, lambda: &Scalar) -> Result<Matrix, Error> {
    let r = check_weighted_reynolds(g, k, lambda)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    let d = k.inverse()?.add(&Matrix::identity(g.field(), g.dim()).scale(lambda))?;
    let r = check_derivation(g, &d)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    Ok(d)
}

/// `(D − λ·id)^{-1}` for a derivation `D`, a Reynolds operator of weight λ.
pub fn reynolds_from_derivation(g: &PreLieAlgebra, d: &Matrix, lambda: &Scalar) -> Result<Matrix, Error> {
    let r = check_derivation(g, d)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    let k = d.sub(&Matrix::identity(g.field(), g.dim()).scale(lambda))?.inverse()?;
    let r = check_weighted_reynolds(g, &k, lambda)?;
    if !r.passed() {
        return Err(Error::UnverifiedOperator(r));
    }
    Ok(k)
}

/// Checks that a pre-Lie morphism `f: (g,K) → (g',K')` also intertwines the
/// operators: `f∘K = K'∘f`.
pub fn check_weighted_morphism(g: &PreLieAlgebra, k: &Matrix, g2: &PreLieAlgebra, k2: &Matrix, f: &Matrix) -> Result<Report, Error> {
    let mut r = check_morphism(g, g2, f)?;
    r.check = "weighted-reynolds-morphism".into();
    const C: &str = "f∘K = K'∘f";
    r.set(C, true);
    let lhs = f.mul(k)?;
    let rhs = k2.mul(f)?;
    for x in 0..g.dim() {
        r.record(C, &[x], sub_vec(&lhs.column(x), &rhs.column(x)));
    }
    Ok(r)
}

/// The residual vector for an arbitrary pair of module vectors; zero for
/// every pair exactly when `K` is RCW Reynolds.
pub fn rcw_residual(s: &RcwSetting, k: &Matrix, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    s.rcw_residual(k, u, v)
}
