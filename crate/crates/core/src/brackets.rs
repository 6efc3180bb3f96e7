//! The Matsushima–Nijenhuis bracket on `C*(W, W)` and the binary and
//! ternary brackets on `⊕ Hom(∧^{n-1}V ⊗ V, g)` whose Maurer–Cartan
//! elements are RCW Reynolds operators.
//!
//! The brackets on `V → g` cochains are derived brackets inside
//! `C*(g ⊕ V, g ⊕ V)`: a cochain `P` lifts to `P̃`, which is `P` on arguments
//! from `V` (with values in `g`) and zero as soon as one argument lies in
//! `g`. With `Π` the semidirect product structure (no cocycle) and
//! `H̃(x, y) = H(x, y) ∈ V`,
//!
//! ```text
//! ⟦P, Q⟧    = (-1)^{p-1}    pr [[Π, P̃], Q̃]
//! ⟦P, Q, R⟧ = ε(p, q, r)  · pr [[[H̃, P̃], Q̃], R̃]
//! ```
//!
//! where `pr` restricts to arguments in `V` and keeps the `g` component. The
//! sign `ε` is fixed in `SIGNS.md`.
//!
//! Over `F_2` and `F_3` the combinations with `1/2` and `1/6` are formed on
//! integer lifts over `Q` and reduced afterwards.

use alloc::format;
use alloc::vec::Vec;

use crate::cochain::{enumerate_unshuffles, eval_with_vector, Cochain, Unshuffle};
use crate::error::Error;
use crate::linalg::{axpy, zero_vec, Matrix};
use crate::prelie::{Actions, PreLieAlgebra};
use crate::report::Report;
use crate::reynolds::{semidirect_tensor, RcwSetting, ReynoldsData};
use crate::scalar::{sign, Field, Scalar};

fn check_square(c: &Cochain, what: &str) -> Result<(), Error> {
    if c.dim_source() != c.dim_target() {
        return Err(Error::Shape(format!(
            "{} maps dimension {} to {}; the Matsushima–Nijenhuis bracket needs C*(W, W)",
            what,
            c.dim_source(),
            c.dim_target()
        )));
    }
    Ok(())
}

fn check_pair(p: &Cochain, q: &Cochain) -> Result<(), Error> {
    check_square(p, "P")?;
    check_square(q, "Q")?;
    if p.dim_source() != q.dim_source() || p.field() != q.field() {
        return Err(Error::Shape("P and Q live on different spaces".into()));
    }
    Ok(())
}

/// The unshuffles a diamond `P ⋄ Q` sums over, which depend only on the
/// degrees.
struct DiamondPlan {
    p: usize,
    q: usize,
    inner: Vec<Unshuffle>,
    outer: Vec<Unshuffle>,
}

impl DiamondPlan {
    fn new(pc: &Cochain, qc: &Cochain) -> Self {
        let (p, q) = (pc.degree() - 1, qc.degree() - 1);
        let inner = if p >= 1 { enumerate_unshuffles(&[q, 1, p - 1]) } else { Vec::new() };
        DiamondPlan {
            p,
            q,
            inner,
            outer: enumerate_unshuffles(&[p, q]),
        }
    }

    fn eval(&self, pc: &Cochain, qc: &Cochain, x: &[usize]) -> Vec<Scalar> {
        let field = pc.field();
        let (p, q) = (self.p, self.q);
        assert_eq!(x.len(), p + q + 1, "diamond evaluated at the wrong number of arguments");
        let (first, last) = (&x[..p + q], x[p + q]);
        let mut out = zero_vec(field, pc.dim_target());
        let mut args: Vec<usize> = Vec::with_capacity(p + q + 1);
        for sh in &self.inner {
            args.clear();
            args.extend(sh.perm[..=q].iter().map(|&i| first[i]));
            let qv = qc.eval_basis(&args);
            args.clear();
            args.extend(sh.perm[q + 1..].iter().map(|&i| first[i]));
            args.push(last);
            let v = eval_with_vector(pc, &args, 0, &qv);
            axpy(&mut out, &sign(field, usize::from(sh.sign < 0)), &v);
        }
        let outer = sign(field, p * q);
        for sh in &self.outer {
            args.clear();
            args.extend(sh.perm[p..].iter().map(|&i| first[i]));
            args.push(last);
            let qv = qc.eval_basis(&args);
            args.clear();
            args.extend(sh.perm[..p].iter().map(|&i| first[i]));
            let v = eval_with_vector(pc, &args, p, &qv);
            let s = if sh.sign < 0 { -&outer } else { outer.clone() };
            axpy(&mut out, &s, &v);
        }
        out
    }
}

/// Both diamonds of `[P, Q]^{MN}`.
struct BracketPlan {
    pq: DiamondPlan,
    qp: DiamondPlan,
}

impl BracketPlan {
    fn new(pc: &Cochain, qc: &Cochain) -> Self {
        BracketPlan {
            pq: DiamondPlan::new(pc, qc),
            qp: DiamondPlan::new(qc, pc),
        }
    }

    fn eval(&self, pc: &Cochain, qc: &Cochain, x: &[usize]) -> Vec<Scalar> {
        let mut out = self.pq.eval(pc, qc, x);
        let s = -sign(pc.field(), self.pq.p * self.pq.q);
        axpy(&mut out, &s, &self.qp.eval(qc, pc, x));
        out
    }
}

/// `(P ⋄ Q)(x_1, ..., x_{p+q+1})` at basis arguments, for `P ∈ C^{p+1}`,
/// `Q ∈ C^{q+1}`.
pub fn diamond_at(pc: &Cochain, qc: &Cochain, x: &[usize]) -> Vec<Scalar> {
    DiamondPlan::new(pc, qc).eval(pc, qc, x)
}

/// `P ⋄ Q ∈ C^{p+q+1}(W, W)`.
pub fn diamond(pc: &Cochain, qc: &Cochain) -> Result<Cochain, Error> {
    check_pair(pc, qc)?;
    let d = pc.dim_source();
    let plan = DiamondPlan::new(pc, qc);
    Ok(Cochain::from_fn(pc.field(), pc.degree() + qc.degree() - 1, d, d, |x| plan.eval(pc, qc, x)))
}

/// `[P, Q]^{MN}` at basis arguments.
pub fn mn_bracket_at(pc: &Cochain, qc: &Cochain, x: &[usize]) -> Vec<Scalar> {
    BracketPlan::new(pc, qc).eval(pc, qc, x)
}

/// `[P, Q]^{MN} = P ⋄ Q − (−1)^{pq} Q ⋄ P`.
pub fn mn_bracket(pc: &Cochain, qc: &Cochain) -> Result<Cochain, Error> {
    check_pair(pc, qc)?;
    let d = pc.dim_source();
    let plan = BracketPlan::new(pc, qc);
    Ok(Cochain::from_fn(pc.field(), pc.degree() + qc.degree() - 1, d, d, |x| plan.eval(pc, qc, x)))
}

/// A bilinear product as an element of `C^2(W, W)`.
pub fn product_cochain(t: &crate::prelie::StructureTensor) -> Cochain {
    Cochain::from_bilinear(t.field(), t.dim(), t.dim(), |i, j| t.basis_product(i, j).to_vec())
}

/// Sign `ε(p, q, r)` of the ternary bracket; see `SIGNS.md`.
pub fn ternary_sign(_p: usize, _q: usize, _r: usize) -> i8 {
    -1
}

/// Everything the derived brackets need: the lifted semidirect product and
/// cocycle on `W = g ⊕ V`, over the field the computation runs in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketContext {
    field: Field,
    work: Field,
    n: usize,
    m: usize,
    pi: Cochain,
    h: Cochain,
}

impl BracketContext {
    pub fn new(g: &PreLieAlgebra, rep: &Actions, h: &Cochain) -> Result<Self, Error> {
        let (n, m) = (g.dim(), rep.dim_v);
        if rep.dim_g != n || h.dim_source() != n || h.dim_target() != m || h.degree() != 2 {
            return Err(Error::Shape(format!(
                "cocycle maps {}→{} in degree {}, expected 2-cochain {}→{}",
                h.dim_source(),
                h.dim_target(),
                h.degree(),
                n,
                m
            )));
        }
        let field = g.field();
        let work = work_field(field);
        let pi = product_cochain(&semidirect_tensor(g, rep, None)).convert_lift(work);
        let h_w = Cochain::from_bilinear(field, n + m, n + m, |i, j| {
            let mut out = zero_vec(field, n + m);
            if i < n && j < n {
                out[n..].clone_from_slice(&h.eval_basis(&[i, j]));
            }
            out
        })
        .convert_lift(work);
        Ok(BracketContext { field, work, n, m, pi, h: h_w })
    }

    pub fn from_setting(s: &RcwSetting) -> Result<Self, Error> {
        BracketContext::new(s.algebra(), s.rep(), s.cocycle())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn check(&self, c: &Cochain) -> Result<(), Error> {
        if c.dim_source() != self.m || c.dim_target() != self.n || c.field() != self.field {
            return Err(Error::Shape(format!(
                "cochain maps dimension {} to {} over {}, brackets act on V→g cochains {}→{} over {}",
                c.dim_source(),
                c.dim_target(),
                c.field(),
                self.m,
                self.n,
                self.field
            )));
        }
        Ok(())
    }

    /// `P̃` on `W`, over the working field.
    fn lift(&self, c: &Cochain) -> Cochain {
        let (n, m) = (self.n, self.m);
        let c = c.convert_lift(self.work);
        let work = self.work;
        Cochain::from_fn(work, c.degree(), n + m, n + m, |x| {
            let mut out = zero_vec(work, n + m);
            if x.iter().all(|&i| i >= n) {
                let args: Vec<usize> = x.iter().map(|&i| i - n).collect();
                out[..n].clone_from_slice(&c.eval_basis(&args));
            }
            out
        })
    }

    /// `pr [outer, last]` as a `V → g` cochain over the working field.
    fn project(&self, outer: &Cochain, last: &Cochain) -> Cochain {
        let (n, m) = (self.n, self.m);
        let degree = outer.degree() + last.degree() - 1;
        let mut shifted = Vec::with_capacity(degree);
        let plan = BracketPlan::new(outer, last);
        Cochain::from_fn(self.work, degree, m, n, |y| {
            shifted.clear();
            shifted.extend(y.iter().map(|&i| i + n));
            let mut v = plan.eval(outer, last, &shifted);
            v.truncate(n);
            v
        })
    }

    fn reduce(&self, c: Cochain) -> Result<Cochain, Error> {
        if self.work == self.field {
            Ok(c)
        } else {
            c.convert(self.field)
        }
    }

    fn binary_work(&self, p: &Cochain, q: &Cochain) -> Result<Cochain, Error> {
        self.check(p)?;
        self.check(q)?;
        let inner = mn_bracket(&self.pi, &self.lift(p))?;
        let out = self.project(&inner, &self.lift(q));
        Ok(out.scale(&sign(self.work, p.degree() - 1)))
    }

    fn ternary_work(&self, p: &Cochain, q: &Cochain, r: &Cochain) -> Result<Cochain, Error> {
        self.check(p)?;
        self.check(q)?;
        self.check(r)?;
        let a = mn_bracket(&self.h, &self.lift(p))?;
        let b = mn_bracket(&a, &self.lift(q))?;
        let out = self.project(&b, &self.lift(r));
        let e = ternary_sign(p.degree(), q.degree(), r.degree());
        Ok(out.scale(&self.work.from_i64(i64::from(e))))
    }

    /// `⟦P, Q⟧`.
    pub fn binary(&self, p: &Cochain, q: &Cochain) -> Result<Cochain, Error> {
        let c = self.binary_work(p, q)?;
        self.reduce(c)
    }

    /// `⟦P, Q, R⟧`.
    pub fn ternary(&self, p: &Cochain, q: &Cochain, r: &Cochain) -> Result<Cochain, Error> {
        let c = self.ternary_work(p, q, r)?;
        self.reduce(c)
    }

    /// `½⟦K,K⟧ − ⅙⟦K,K,K⟧`, which is the RCW residual
    /// `Ku·Kv − K(L_{Ku}v + R_{Kv}u + H(Ku,Kv))`.
    pub fn maurer_cartan(&self, k: &Cochain) -> Result<Cochain, Error> {
        let w = self.work;
        let two = self.binary_work(k, k)?.scale(&w.ratio(1, 2)?);
        let three = self.ternary_work(k, k, k)?.scale(&w.ratio(1, 6)?);
        self.reduce(two.sub(&three)?)
    }

    /// `d_K f = ⟦K, f⟧ − ½⟦K, K, f⟧`.
    pub fn d_k(&self, k: &Cochain, f: &Cochain) -> Result<Cochain, Error> {
        let c = self.d_k_work(k, f)?;
        self.reduce(c)
    }

    fn d_k_work(&self, k: &Cochain, f: &Cochain) -> Result<Cochain, Error> {
        let w = self.work;
        let b = self.binary_work(k, f)?;
        let t = self.ternary_work(k, k, f)?.scale(&w.ratio(1, 2)?);
        b.sub(&t)
    }

    /// `⟦P, Q⟧_K = ⟦P, Q⟧ − ⟦K, P, Q⟧`.
    pub fn twisted_binary(&self, k: &Cochain, p: &Cochain, q: &Cochain) -> Result<Cochain, Error> {
        let c = self.binary_work(p, q)?.sub(&self.ternary_work(k, p, q)?)?;
        self.reduce(c)
    }

    /// `d_K K' + ½⟦K',K'⟧_K − ⅙⟦K',K',K'⟧`.
    pub fn twisted_maurer_cartan(&self, k: &Cochain, kp: &Cochain) -> Result<Cochain, Error> {
        let w = self.work;
        let d = self.d_k_work(k, kp)?;
        let b = self.binary_work(kp, kp)?.sub(&self.ternary_work(k, kp, kp)?)?;
        let t = self.ternary_work(kp, kp, kp)?;
        let c = d.add(&b.scale(&w.ratio(1, 2)?))?.sub(&t.scale(&w.ratio(1, 6)?))?;
        self.reduce(c)
    }
}

/// Brackets with `1/2` and `1/6` are formed over `Q` in characteristic 2
/// and 3.
fn work_field(f: Field) -> Field {
    match f {
        Field::Prime(p) if p <= 3 => Field::Rational,
        other => other,
    }
}

trait ConvertLift {
    fn convert_lift(&self, work: Field) -> Cochain;
}

impl ConvertLift for Cochain {
    fn convert_lift(&self, work: Field) -> Cochain {
        if work == self.field() {
            self.clone()
        } else {
            self.lift()
        }
    }
}

fn report_from(check: &str, condition: &str, c: &Cochain) -> Report {
    let mut r = Report::with_conditions(check, &[condition]);
    for (tuple, last, v) in c.nonzero_entries() {
        let mut at = tuple;
        at.push(last);
        r.record(condition, &at, v);
    }
    r
}

/// Checks `½⟦K,K⟧ − ⅙⟦K,K,K⟧ = 0` on basis pairs.
pub fn check_maurer_cartan(g: &PreLieAlgebra, rep: &Actions, h: &Cochain, k: &Matrix) -> Result<Report, Error> {
    let ctx = BracketContext::new(g, rep, h)?;
    let mc = ctx.maurer_cartan(&Cochain::from_matrix(k))?;
    Ok(report_from("maurer-cartan", "½⟦K,K⟧ − ⅙⟦K,K,K⟧ = 0", &mc))
}

/// `d_K f` for a verified operator.
pub fn d_k(data: &ReynoldsData, f: &Cochain) -> Result<Cochain, Error> {
    let ctx = BracketContext::from_setting(data.setting())?;
    ctx.d_k(&Cochain::from_matrix(data.operator()), f)
}

/// Checks the twisted Maurer–Cartan equation for `K'`.
pub fn check_twisted_mc(data: &ReynoldsData, kp: &Matrix) -> Result<Report, Error> {
    let ctx = BracketContext::from_setting(data.setting())?;
    let k = Cochain::from_matrix(data.operator());
    let mc = ctx.twisted_maurer_cartan(&k, &Cochain::from_matrix(kp))?;
    Ok(report_from(
        "twisted-maurer-cartan",
        "d_K K' + ½⟦K',K'⟧_K − ⅙⟦K',K',K'⟧ = 0",
        &mc,
    ))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcohomology::coboundary_k;
    use crate::linalg::sub_vec;
    use crate::prelie::{check_prelie, regular_representation, StructureTensor};
    use crate::reynolds::{check_rcw_reynolds, reynolds_from_invertible_cochain};
    use alloc::vec;

    const Q: Field = Field::Rational;

    fn noncommutative_data() -> ReynoldsData {
        let g = PreLieAlgebra::new(StructureTensor::from_entries(Q, 3, &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1)])).unwrap();
        let rep = regular_representation(&g);
        let h = Matrix::from_i64(Q, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        reynolds_from_invertible_cochain(g, rep, &Cochain::from_matrix(&h)).unwrap()
    }

    fn sample(degree: usize, seed: i64) -> Cochain {
        Cochain::from_fn(Q, degree, 3, 3, |a| {
            let t: i64 = a.iter().map(|&x| x as i64 + seed).product();
            vec![Q.from_i64(t % 5 - 2), Q.from_i64(t % 3), Q.from_i64(1 - t % 4)]
        })
    }

    #[test]
    fn diamond_of_bilinear_maps() {
        let t = StructureTensor::from_entries(Q, 2, &[(0, 0, 1, 1), (0, 1, 0, 2), (1, 0, 1, -1), (1, 1, 0, 3)]);
        let p = product_cochain(&t);
        let d = diamond(&p, &p).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let (ex, ey, ez) = (unit(x), unit(y), unit(z));
                    let mut want = t.product(t.basis_product(x, y), &ez);
                    want = sub_vec(&want, &t.product(t.basis_product(y, x), &ez));
                    want = sub_vec(&want, &t.product(&ex, t.basis_product(y, z)));
                    want = crate::linalg::add_vec(&want, &t.product(&ey, t.basis_product(x, z)));
                    assert_eq!(d.eval_basis(&[x, y, z]), want);
                }
            }
        }
        assert!(diamond(&p, &Cochain::zero(Q, 2, 2, 2)).unwrap().is_zero());
    }

    fn unit(i: usize) -> Vec<Scalar> {
        crate::linalg::unit_vec(Q, 2, i)
    }

    #[test]
    fn mn_square_detects_prelie() {
        let f3 = Field::prime(3).unwrap();
        let mut count = [0usize; 2];
        for code in 0..729u32 {
            // Six of the eight structure constants of a 2-dim product over F_3.
            let mut c = code;
            let mut entries = Vec::new();
            for (i, j, k) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0)] {
                entries.push((i, j, k, i64::from(c % 3)));
                c /= 3;
            }
            let t = StructureTensor::from_entries(f3, 2, &entries);
            let p = product_cochain(&t);
            let sq = mn_bracket(&p, &p).unwrap();
            let pre = check_prelie(&t).passed();
            assert_eq!(sq.is_zero(), pre);
            count[usize::from(pre)] += 1;
        }
        assert!(count[0] > 0 && count[1] > 0);
    }

    #[test]
    fn mn_graded_antisymmetry_and_square_zero() {
        let g = noncommutative_data();
        let mu = product_cochain(g.setting().algebra().tensor());
        for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let p = sample(a, 1);
            let q = sample(b, 2);
            let pq = mn_bracket(&p, &q).unwrap();
            let qp = mn_bracket(&q, &p).unwrap();
            let s = -sign(Q, (a - 1) * (b - 1));
            assert_eq!(pq, qp.scale(&s));
        }
        for deg in 1..3 {
            let f = sample(deg, 3);
            let once = mn_bracket(&mu, &f).unwrap();
            assert!(mn_bracket(&mu, &once).unwrap().is_zero());
        }
    }

    #[test]
    fn binary_and_ternary_on_operators() {
        let d = noncommutative_data();
        let s = d.setting();
        let ctx = BracketContext::from_setting(s).unwrap();
        for seed in 0..4 {
            let km = Matrix::from_i64(Q, &[&[1, seed, 2], &[0, -1, 1], &[2, 1, -seed]]);
            let k = Cochain::from_matrix(&km);
            let two = Cochain::from_bilinear(Q, 3, 3, |u, v| {
                let (eu, ev) = (s.v_unit(u), s.v_unit(v));
                let (ku, kv) = (km.column(u), km.column(v));
                let mut inner = s.left(&ku, &ev);
                axpy(&mut inner, &Q.one(), &s.right(&kv, &eu));
                let r = sub_vec(&s.mul(&ku, &kv), &km.mul_vec(&inner));
                r.iter().map(|x| x * &Q.from_i64(2)).collect()
            });
            assert_eq!(ctx.binary(&k, &k).unwrap(), two);
            let six = Cochain::from_bilinear(Q, 3, 3, |u, v| {
                let h = s.h(&km.column(u), &km.column(v));
                km.mul_vec(&h).iter().map(|x| x * &Q.from_i64(6)).collect()
            });
            assert_eq!(ctx.ternary(&k, &k, &k).unwrap(), six);
        }
        let z = Cochain::zero(Q, 1, 3, 3);
        let k = Cochain::from_matrix(d.operator());
        assert!(ctx.binary(&z, &k).unwrap().is_zero());
        assert!(ctx.ternary(&k, &z, &k).unwrap().is_zero());
    }

    #[test]
    fn ternary_symmetry() {
        let d = noncommutative_data();
        let ctx = BracketContext::from_setting(d.setting()).unwrap();
        let k = Cochain::from_matrix(d.operator());
        let (f, g) = (sample(2, 1), sample(2, 2));
        let a = ctx.ternary(&f, &g, &k).unwrap();
        assert_eq!(ctx.ternary(&g, &f, &k).unwrap(), a.scale(&-Q.one()));
        assert_eq!(ctx.ternary(&f, &k, &g).unwrap(), a);
        let b = ctx.ternary(&k, &k, &f).unwrap();
        assert_eq!(ctx.ternary(&k, &f, &k).unwrap(), b);
        assert_eq!(ctx.ternary(&f, &k, &k).unwrap(), b);
        assert_eq!(ctx.binary(&f, &g).unwrap(), ctx.binary(&g, &f).unwrap().scale(&-Q.one()));
    }

    #[test]
    fn d_k_matches_operator_coboundary() {
        let d = noncommutative_data();
        for n in 1..3 {
            for seed in 1..4 {
                let f = sample(n, seed);
                let lhs = d_k(&d, &f).unwrap();
                let rhs = coboundary_k(&d, &f).unwrap().scale(&sign(Q, n - 1));
                assert_eq!(lhs, rhs);
            }
        }
        let f = sample(1, 2);
        let once = d_k(&d, &f).unwrap();
        assert!(d_k(&d, &once).unwrap().is_zero());
    }

    #[test]
    fn maurer_cartan_matches_reynolds_over_f3() {
        let f3 = Field::prime(3).unwrap();
        let g = PreLieAlgebra::new(StructureTensor::from_entries(f3, 3, &[(2, 2, 1, 1)])).unwrap();
        let rep = regular_representation(&g);
        let mut h = Cochain::zero(f3, 2, 3, 3);
        h.set(&[2], 2, vec![f3.zero(), f3.zero(), f3.one()]);
        let s = crate::reynolds::RcwSetting::new(g.clone(), rep.clone(), h.clone()).unwrap();
        let mut agree = [0usize; 2];
        for code in 0..200u64 {
            let mut c = code.wrapping_mul(2_654_435_761) % 19_683;
            let mut rows = [[0i64; 3]; 3];
            for r in rows.iter_mut().flatten() {
                *r = (c % 3) as i64;
                c /= 3;
            }
            let km = Matrix::from_i64(f3, &[&rows[0], &rows[1], &rows[2]]);
            let rcw = check_rcw_reynolds(&s, &km).unwrap().passed();
            let mc = check_maurer_cartan(&g, &rep, &h, &km).unwrap().passed();
            assert_eq!(rcw, mc);
            agree[usize::from(rcw)] += 1;
        }
        assert!(agree[0] > 0 && agree[1] > 0);
    }

    #[test]
    fn twisted_mc_matches_sum() {
        let d = noncommutative_data();
        let s = d.setting();
        let k = d.operator().clone();
        assert!(check_twisted_mc(&d, &Matrix::zeros(Q, 3, 3)).unwrap().passed());
        assert!(check_twisted_mc(&d, &k.scale(&-Q.one())).unwrap().passed());
        for seed in 0..5 {
            let kp = Matrix::from_i64(Q, &[&[seed, 0, 1], &[0, 1 - seed, 0], &[1, 0, seed % 2]]);
            let tw = check_twisted_mc(&d, &kp).unwrap().passed();
            let direct = check_rcw_reynolds(s, &k.add(&kp).unwrap()).unwrap().passed();
            assert_eq!(tw, direct);
        }
    }

    #[test]
    fn characteristic_two() {
        let f2 = Field::prime(2).unwrap();
        let g = PreLieAlgebra::new(StructureTensor::from_entries(f2, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)])).unwrap();
        let rep = regular_representation(&g);
        let h = Cochain::zero(f2, 2, 2, 2);
        let s = crate::reynolds::RcwSetting::new(g.clone(), rep.clone(), h.clone()).unwrap();
        for code in 0..16i64 {
            let km = Matrix::from_i64(f2, &[&[code & 1, (code >> 1) & 1], &[(code >> 2) & 1, (code >> 3) & 1]]);
            assert_eq!(
                check_maurer_cartan(&g, &rep, &h, &km).unwrap().passed(),
                check_rcw_reynolds(&s, &km).unwrap().passed()
            );
        }
    }
}
