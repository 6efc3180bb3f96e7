//! Linear and formal deformations of an RCW Reynolds operator, equivalence
//! data, Nijenhuis elements and a finite-field rigidity probe.
//!
//! A truncated series `K_0 + K_1 t + … + K_N t^N` is read as a polynomial:
//! every coefficient order `0..=3N` of the deformed identity is determined
//! and checked.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::kcohomology::{coboundary_k, coboundary_k_degree0, induced_representation};
use crate::linalg::{add_vec, axpy, sub_vec, zero_vec, Matrix};
use crate::report::Report;
use crate::reynolds::{check_operator_shape, RcwSetting, ReynoldsData};
use crate::scalar::{Field, Scalar};
use crate::cochain::Cochain;

/// Coefficient of `t^n` in `K_t u·K_t v − K_t(L_{K_t u}v + R_{K_t v}u + H(K_t u, K_t v))`.
fn order_residual(s: &RcwSetting, ks: &[Matrix], n: usize, u: usize, v: usize) -> Vec<Scalar> {
    let field = s.field();
    let one = field.one();
    let (eu, ev) = (s.v_unit(u), s.v_unit(v));
    let ku: Vec<Vec<Scalar>> = ks.iter().map(|k| k.column(u)).collect();
    let kv: Vec<Vec<Scalar>> = ks.iter().map(|k| k.column(v)).collect();
    let top = ks.len() - 1;
    let mut out = zero_vec(field, s.dim_g());
    for i in 0..=n.min(top) {
        let j = n - i;
        if j > top {
            continue;
        }
        axpy(&mut out, &one, &s.mul(&ku[i], &kv[j]));
        let mut inner = s.left(&ku[j], &ev);
        axpy(&mut inner, &one, &s.right(&kv[j], &eu));
        out = sub_vec(&out, &ks[i].mul_vec(&inner));
    }
    for i in 0..=n.min(top) {
        for j in 0..=(n - i).min(top) {
            let k = n - i - j;
            if k > top {
                continue;
            }
            out = sub_vec(&out, &ks[i].mul_vec(&s.h(&ku[j], &kv[k])));
        }
    }
    out
}

pub const ORDER_T1: &str = "order t¹: Ku·K₁v + K₁u·Kv = K₁(L_{Ku}v + R_{Kv}u + H(Ku,Kv)) + K(L_{K₁u}v + R_{K₁v}u + H(K₁u,Kv) + H(Ku,K₁v))";
pub const ORDER_T2: &str = "order t²: K₁u·K₁v = K₁(L_{K₁u}v + R_{K₁v}u + H(Ku,K₁v) + H(K₁u,Kv)) + KH(K₁u,K₁v)";
pub const ORDER_T3: &str = "order t³: K₁H(K₁u,K₁v) = 0";

/// Checks that `K + tK₁` is an RCW Reynolds operator for every `t`, one
/// condition per power of `t`. The `t¹` condition is the 1-cocycle
/// condition `∂_K K₁ = 0`.
pub fn check_linear_deformation(data: &ReynoldsData, k1: &Matrix) -> Result<Report, Error> {
    let s = data.setting();
    check_operator_shape(k1, s.dim_g(), s.dim_v(), "K₁")?;
    let ks = [data.operator().clone(), k1.clone()];
    let mut r = Report::with_conditions("linear-deformation", &[ORDER_T1, ORDER_T2, ORDER_T3]);
    for (n, name) in [(1, ORDER_T1), (2, ORDER_T2), (3, ORDER_T3)] {
        for u in 0..s.dim_v() {
            for v in 0..s.dim_v() {
                r.record(name, &[u, v], order_residual(s, &ks, n, u, v));
            }
        }
    }
    Ok(r)
}

/// `K_t = K_0 + K_1 t + … + K_N t^N` with `K_0` the base operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationSeries {
    base: ReynoldsData,
    coefficients: Vec<Matrix>,
}

impl DeformationSeries {
    /// `higher` holds `K_1, …, K_N`.
    pub fn new(base: ReynoldsData, higher: Vec<Matrix>) -> Result<Self, Error> {
        let s = base.setting();
        for (i, k) in higher.iter().enumerate() {
            check_operator_shape(k, s.dim_g(), s.dim_v(), &format!("K_{}", i + 1))?;
            if k.field() != s.field() {
                return Err(Error::FieldMismatch(format!("{}", k.field()), format!("{}", s.field())));
            }
        }
        let mut coefficients = Vec::with_capacity(higher.len() + 1);
        coefficients.push(base.operator().clone());
        coefficients.extend(higher);
        Ok(DeformationSeries { base, coefficients })
    }

    pub fn base(&self) -> &ReynoldsData {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `K_0, …, K_N`.
    pub fn coefficients(&self) -> &[Matrix] {
        &self.coefficients
    }
}

fn order_name(n: usize) -> alloc::string::String {
    format!("order t^{}", n)
}

/// Checks the coefficient identity
/// `Σ_{i+j=n} K_i u·K_j v = Σ_{i+j=n} K_i(L_{K_j u}v + R_{K_j v}u) + Σ_{i+j+k=n} K_i H(K_j u, K_k v)`
/// for `n = 0..=3N`. The first failing order is noted.
pub fn check_formal_deformation(series: &DeformationSeries) -> Report {
    let s = series.base.setting();
    let ks = &series.coefficients;
    let top = 3 * series.order();
    let mut r = Report::new("formal-deformation");
    let mut first = None;
    for n in 0..=top {
        let name = order_name(n);
        r.set(&name, true);
        for u in 0..s.dim_v() {
            for v in 0..s.dim_v() {
                if r.record(&name, &[u, v], order_residual(s, ks, n, u, v)) && first.is_none() {
                    first = Some(n);
                }
            }
        }
    }
    r.note(format!("orders 0..={} checked for a series of order {}", top, series.order()));
    if let Some(n) = first {
        r.note(format!("first failing order: {}", n));
    }
    r
}

/// The infinitesimal `K_1` of a verified series and the verdict of
/// `∂_K K_1 = 0`.
pub fn infinitesimal(series: &DeformationSeries) -> Result<(Matrix, Report), Error> {
    let check = check_formal_deformation(series);
    if !check.passed() {
        return Err(Error::UnverifiedSeries(check));
    }
    let d = &series.base;
    let k1 = match series.coefficients.get(1) {
        Some(k) => k.clone(),
        None => Matrix::zeros(d.field(), d.dim_g(), d.dim_v()),
    };
    let dk = coboundary_k(d, &Cochain::from_matrix(&k1))?;
    let mut r = Report::with_conditions("infinitesimal", &[COCYCLE]);
    for (tuple, last, value) in dk.nonzero_entries() {
        let mut idx = tuple;
        idx.push(last);
        r.record(COCYCLE, &idx, value);
    }
    Ok((k1, r))
}

const COCYCLE: &str = "∂_K K₁ = 0";

/// `A y = x·y − y·x` and `B u = L_x u − R_x u + H(x, Ku)`.
struct Infinitesimal<'a> {
    s: &'a RcwSetting,
    k: &'a Matrix,
    x: &'a [Scalar],
}

impl Infinitesimal<'_> {
    fn a(&self, y: &[Scalar]) -> Vec<Scalar> {
        sub_vec(&self.s.mul(self.x, y), &self.s.mul(y, self.x))
    }

    fn b(&self, u: &[Scalar]) -> Vec<Scalar> {
        let mut out = sub_vec(&self.s.left(self.x, u), &self.s.right(self.x, u));
        axpy(&mut out, &self.s.field().one(), &self.s.h(self.x, &self.k.mul_vec(u)));
        out
    }

    /// `R̄_u(x) = x·Ku − K(L_x u) − KH(x, Ku)`.
    fn r_bar(&self, u: &[Scalar]) -> Vec<Scalar> {
        let ku = self.k.mul_vec(u);
        let mut out = self.s.mul(self.x, &ku);
        out = sub_vec(&out, &self.k.mul_vec(&self.s.left(self.x, u)));
        sub_vec(&out, &self.k.mul_vec(&self.s.h(self.x, &ku)))
    }
}

pub const NIJ: &str = "x·R̄_u(x) − R̄_u(x)·x = 0";
pub const ALG_MAP_1: &str = "(x·y − y·x)·(x·z − z·x) = 0";
pub const ALG_MAP_2: &str = "(y·z)·x = 0";
pub const LEFT_1: &str = "H(x, K(L_y u)) = L_y H(x, Ku)";
pub const LEFT_2: &str = "L_{x·y−y·x}(L_x u − R_x u + H(x, Ku)) = 0";
pub const RIGHT_1: &str = "H(x, K(R_y u)) = R_y H(x, Ku)";
pub const RIGHT_2: &str = "R_{x·y−y·x}(L_x u − R_x u + H(x, Ku)) = 0";
pub const H_COMP_1: &str = "L_x H(y,z) − R_x H(y,z) + H(x, KH(y,z)) = H(x·y − y·x, z) + H(y, x·z − z·x)";
pub const H_COMP_2: &str = "H(x·y − y·x, x·z − z·x) = 0";
pub const DIFF_1: &str = "K₁u + x·Ku − Ku·x = K(L_x u − R_x u + H(x, Ku)) + K₁′u";
pub const DIFF_2: &str = "x·K₁u − K₁u·x = K₁′(L_x u − R_x u + H(x, Ku))";

pub const PHI_T1: &str = "φ_t morphism, t¹: A(y)·z + y·A(z) = A(y·z)";
pub const PHI_T2: &str = "φ_t morphism, t²: A(y)·A(z) = 0";
pub const PSI_L_T1: &str = "ψ_t L-equivariant, t¹: B(L_y u) = L_{A y}u + L_y B u";
pub const PSI_L_T2: &str = "ψ_t L-equivariant, t²: L_{A y}B u = 0";
pub const PSI_R_T1: &str = "ψ_t R-equivariant, t¹: B(R_y u) = R_{A y}u + R_y B u";
pub const PSI_R_T2: &str = "ψ_t R-equivariant, t²: R_{A y}B u = 0";
pub const PSI_H_T1: &str = "ψ_t∘H = H∘(φ_t⊗φ_t), t¹: B H(y,z) = H(A y, z) + H(y, A z)";
pub const PSI_H_T2: &str = "ψ_t∘H = H∘(φ_t⊗φ_t), t²: H(A y, A z) = 0";
pub const K_T1: &str = "φ_t∘K_t = K′_t∘ψ_t, t¹: K₁u + A(Ku) = K(B u) + K₁′u";
pub const K_T2: &str = "φ_t∘K_t = K′_t∘ψ_t, t²: A(K₁u) = K₁′(B u)";

/// Two verdicts on the same data: the conditions as printed for
/// `φ_t = id + t(L_x − R_x)`, `ψ_t = id + t(L_x − R_x + H(x, K−))`, and the
/// `t¹`, `t²` coefficients of the morphism identities expanded directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoReadings {
    pub literal: Report,
    pub rederived: Report,
}

fn check_x(s: &RcwSetting, x: &[Scalar]) -> Result<(), Error> {
    if x.len() != s.dim_g() {
        return Err(Error::DimensionMismatch(format!("element has {} coordinates, g has dimension {}", x.len(), s.dim_g())));
    }
    Ok(())
}

/// Printed conditions on `g` and `V` that do not involve `K₁` (the groups
/// for the algebra map, both actions and `H`).
fn literal_structure(inf: &Infinitesimal, r: &mut Report) {
    let s = inf.s;
    let k = inf.k;
    let (n, m) = (s.dim_g(), s.dim_v());
    for y in 0..n {
        let ey = s.g_unit(y);
        let ay = inf.a(&ey);
        for z in 0..n {
            let ez = s.g_unit(z);
            let az = inf.a(&ez);
            r.record(ALG_MAP_1, &[y, z], s.mul(&ay, &az));
            r.record(ALG_MAP_2, &[y, z], s.mul(&s.mul(&ey, &ez), inf.x));
            let hyz = s.h(&ey, &ez);
            let mut lhs = sub_vec(&s.left(inf.x, &hyz), &s.right(inf.x, &hyz));
            axpy(&mut lhs, &s.field().one(), &s.h(inf.x, &k.mul_vec(&hyz)));
            let rhs = add_vec(&s.h(&ay, &ez), &s.h(&ey, &az));
            r.record(H_COMP_1, &[y, z], sub_vec(&lhs, &rhs));
            r.record(H_COMP_2, &[y, z], s.h(&ay, &az));
        }
        for u in 0..m {
            let eu = s.v_unit(u);
            let hxku = s.h(inf.x, &k.mul_vec(&eu));
            let bu = inf.b(&eu);
            let ly = s.left(&ey, &eu);
            r.record(LEFT_1, &[y, u], sub_vec(&s.h(inf.x, &k.mul_vec(&ly)), &s.left(&ey, &hxku)));
            r.record(LEFT_2, &[y, u], s.left(&ay, &bu));
            let ry = s.right(&ey, &eu);
            r.record(RIGHT_1, &[y, u], sub_vec(&s.h(inf.x, &k.mul_vec(&ry)), &s.right(&ey, &hxku)));
            r.record(RIGHT_2, &[y, u], s.right(&ay, &bu));
        }
    }
}

fn rederived_structure(inf: &Infinitesimal, r: &mut Report) {
    let s = inf.s;
    let (n, m) = (s.dim_g(), s.dim_v());
    for y in 0..n {
        let ey = s.g_unit(y);
        let ay = inf.a(&ey);
        for z in 0..n {
            let ez = s.g_unit(z);
            let az = inf.a(&ez);
            let mut t1 = add_vec(&s.mul(&ay, &ez), &s.mul(&ey, &az));
            t1 = sub_vec(&t1, &inf.a(&s.mul(&ey, &ez)));
            r.record(PHI_T1, &[y, z], t1);
            r.record(PHI_T2, &[y, z], s.mul(&ay, &az));
            let hyz = s.h(&ey, &ez);
            let rhs = add_vec(&s.h(&ay, &ez), &s.h(&ey, &az));
            r.record(PSI_H_T1, &[y, z], sub_vec(&inf.b(&hyz), &rhs));
            r.record(PSI_H_T2, &[y, z], s.h(&ay, &az));
        }
        for u in 0..m {
            let eu = s.v_unit(u);
            let bu = inf.b(&eu);
            let rhs = add_vec(&s.left(&ay, &eu), &s.left(&ey, &bu));
            r.record(PSI_L_T1, &[y, u], sub_vec(&inf.b(&s.left(&ey, &eu)), &rhs));
            r.record(PSI_L_T2, &[y, u], s.left(&ay, &bu));
            let rhs = add_vec(&s.right(&ay, &eu), &s.right(&ey, &bu));
            r.record(PSI_R_T1, &[y, u], sub_vec(&inf.b(&s.right(&ey, &eu)), &rhs));
            r.record(PSI_R_T2, &[y, u], s.right(&ay, &bu));
        }
    }
}

/// Checks that `x` makes the linear deformations `K + tK₁` and `K + tK₁′`
/// equivalent.
pub fn check_equivalence_data(data: &ReynoldsData, k1: &Matrix, k1p: &Matrix, x: &[Scalar]) -> Result<TwoReadings, Error> {
    let s = data.setting();
    check_operator_shape(k1, s.dim_g(), s.dim_v(), "K₁")?;
    check_operator_shape(k1p, s.dim_g(), s.dim_v(), "K₁′")?;
    check_x(s, x)?;
    let inf = Infinitesimal { s, k: data.operator(), x };
    let mut literal = Report::with_conditions(
        "equivalence-data",
        &[ALG_MAP_1, ALG_MAP_2, LEFT_1, LEFT_2, RIGHT_1, RIGHT_2, H_COMP_1, H_COMP_2, DIFF_1, DIFF_2],
    );
    literal_structure(&inf, &mut literal);
    let mut rederived = Report::with_conditions(
        "equivalence-data-rederived",
        &[PHI_T1, PHI_T2, PSI_L_T1, PSI_L_T2, PSI_R_T1, PSI_R_T2, PSI_H_T1, PSI_H_T2, K_T1, K_T2],
    );
    rederived_structure(&inf, &mut rederived);
    let k = data.operator();
    for u in 0..s.dim_v() {
        let eu = s.v_unit(u);
        let ku = k.column(u);
        let bu = inf.b(&eu);
        let mut lhs = add_vec(&k1.column(u), &inf.a(&ku));
        lhs = sub_vec(&lhs, &k.mul_vec(&bu));
        let t1 = sub_vec(&lhs, &k1p.column(u));
        let t2 = sub_vec(&inf.a(&k1.column(u)), &k1p.mul_vec(&bu));
        literal.record(DIFF_1, &[u], t1.clone());
        literal.record(DIFF_2, &[u], t2.clone());
        rederived.record(K_T1, &[u], t1);
        rederived.record(K_T2, &[u], t2);
    }
    Ok(TwoReadings { literal, rederived })
}

/// `K₁ − ∂_K(x)`: the partner deformation for which the first `t¹`
/// condition of equivalence holds by construction.
pub fn equivalent_partner(data: &ReynoldsData, k1: &Matrix, x: &[Scalar]) -> Result<Matrix, Error> {
    k1.sub(&coboundary_k_degree0(data, x)?)
}

/// Checks whether `x` is a Nijenhuis element for `K`: the `R̄` condition on
/// every basis vector of `V` together with the conditions for the algebra
/// map, both actions and `H`.
pub fn check_nijenhuis_element(data: &ReynoldsData, x: &[Scalar]) -> Result<TwoReadings, Error> {
    let s = data.setting();
    check_x(s, x)?;
    let inf = Infinitesimal { s, k: data.operator(), x };
    let mut literal = Report::with_conditions(
        "nijenhuis-element",
        &[NIJ, ALG_MAP_1, ALG_MAP_2, LEFT_1, LEFT_2, RIGHT_1, RIGHT_2, H_COMP_1, H_COMP_2],
    );
    let mut rederived = Report::with_conditions(
        "nijenhuis-element-rederived",
        &[NIJ, PHI_T1, PHI_T2, PSI_L_T1, PSI_L_T2, PSI_R_T1, PSI_R_T2, PSI_H_T1, PSI_H_T2],
    );
    for u in 0..s.dim_v() {
        let rb = inf.r_bar(&s.v_unit(u));
        let res = sub_vec(&s.mul(x, &rb), &s.mul(&rb, x));
        literal.record(NIJ, &[u], res.clone());
        rederived.record(NIJ, &[u], res);
    }
    literal_structure(&inf, &mut literal);
    rederived_structure(&inf, &mut rederived);
    Ok(TwoReadings { literal, rederived })
}

/// Nijenhuis-element test on the printed conditions.
pub fn is_nijenhuis_element(data: &ReynoldsData, x: &[Scalar]) -> bool {
    check_nijenhuis_element(data, x).map_or(false, |r| r.literal.passed())
}

/// The `index`-th vector of `F_p^n` in lexicographic order (first
/// coordinate most significant).
pub fn nth_vector(field: Field, n: usize, mut index: u128) -> Vec<Scalar> {
    let p = u128::from(field.characteristic());
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push((index % p) as i64);
        index /= p;
    }
    v.into_iter().rev().map(|c| field.from_i64(c)).collect()
}

/// `p^n`, or `None` on overflow.
pub fn space_size(field: Field, n: usize) -> Option<u128> {
    let p = u128::from(field.characteristic());
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.checked_mul(p)?;
    }
    Some(total)
}

fn finite_size(field: Field, n: usize, budget: u128) -> Result<u128, Error> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    match space_size(field, n) {
        Some(t) if t <= budget => Ok(t),
        Some(t) => Err(Error::BudgetExceeded { needed: t, budget }),
        None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
    }
}

/// All Nijenhuis elements over a prime field, in lexicographic order.
pub fn nijenhuis_elements(data: &ReynoldsData, budget: u128) -> Result<Vec<Vec<Scalar>>, Error> {
    let total = finite_size(data.field(), data.dim_g(), budget)?;
    Ok((0..total)
        .map(|i| nth_vector(data.field(), data.dim_g(), i))
        .filter(|x| is_nijenhuis_element(data, x))
        .collect())
}

/// Outcome of comparing `Z¹_K` with `∂_K(Nij(K))` over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    /// Dimension of the space of 1-cocycles.
    pub cocycle_dim: usize,
    /// Nijenhuis elements in lexicographic order.
    pub nijenhuis: Vec<Vec<Scalar>>,
    /// Distinct images `∂_K x`, sorted by their printed entries.
    pub image: Vec<Matrix>,
    /// Images that are not 1-cocycles.
    pub image_outside_cocycles: usize,
    /// Whether `Z¹_K = ∂_K(Nij(K))`, the sufficient condition for rigidity.
    pub condition_holds: bool,
}

/// Decides the sufficient rigidity condition `Z¹_K = ∂_K(Nij(K))` by full
/// enumeration of `g` over `F_p`.
pub fn rigidity_probe(data: &ReynoldsData, budget: u128) -> Result<RigidityReport, Error> {
    let nijenhuis = nijenhuis_elements(data, budget)?;
    rigidity_from_elements(data, nijenhuis)
}

/// The rigidity comparison for an already enumerated `Nij(K)`.
pub fn rigidity_from_elements(data: &ReynoldsData, nijenhuis: Vec<Vec<Scalar>>) -> Result<RigidityReport, Error> {
    let field = data.field();
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let d1 = induced_representation(data)?.coboundary_matrix(1)?;
    let cocycle_dim = d1.kernel().dim();
    let mut seen = BTreeSet::new();
    let mut image = Vec::new();
    let mut outside = 0;
    for x in &nijenhuis {
        let m = coboundary_k_degree0(data, x)?;
        let key: Vec<alloc::string::String> = m.entries().iter().map(|s| format!("{}", s)).collect();
        if seen.insert(key) {
            if !d1.mul_vec(&Cochain::from_matrix(&m).values().to_vec()).iter().all(Scalar::is_zero) {
                outside += 1;
            }
            image.push(m);
        }
    }
    image.sort_by_cached_key(|m| m.entries().iter().map(|s| s.to_i64().unwrap_or(0)).collect::<Vec<_>>());
    let holds = outside == 0 && space_size(field, cocycle_dim) == Some(image.len() as u128);
    Ok(RigidityReport {
        cocycle_dim,
        nijenhuis,
        image,
        image_outside_cocycles: outside,
        condition_holds: holds,
    })
}
