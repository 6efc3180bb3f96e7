//! Exhaustive search over finite entry domains for operators (or vectors)
//! satisfying a registered predicate.
//!
//! Candidates are numbered lexicographically: the free entries in row-major
//! order, first free entry most significant, each ranging over the domain in
//! the order given. Any contiguous index range can be searched on its own,
//! so callers may split the space across workers and concatenate.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::deformation::is_nijenhuis_element;
use crate::error::Error;
use crate::linalg::Matrix;
use crate::ns::check_nijenhuis;
use crate::prelie::{regular_representation, PreLieAlgebra, StructureTensor};
use crate::report::Report;
use crate::reynolds::{is_rcw_reynolds, is_weighted_reynolds, RcwSetting, ReynoldsData};
use crate::scalar::{Field, Scalar};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Shape of the unknown a predicate tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unknown {
    Matrix { rows: usize, cols: usize },
    Vector { dim: usize },
}

impl Unknown {
    pub fn len(self) -> usize {
        match self {
            Unknown::Matrix { rows, cols } => rows * cols,
            Unknown::Vector { dim } => dim,
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }
}

/// A searchable condition on a flat candidate (row-major for matrices).
pub trait Predicate: Send + Sync {
    fn id(&self) -> &'static str;
    fn unknown(&self) -> Unknown;
    fn field(&self) -> Field;
    fn accepts(&self, entries: &[Scalar]) -> bool;
}

fn as_matrix(field: Field, u: Unknown, entries: &[Scalar]) -> Matrix {
    match u {
        Unknown::Matrix { rows, cols } => Matrix::from_flat(field, rows, cols, entries.to_vec()).expect("candidate matches its shape"),
        Unknown::Vector { dim } => Matrix::from_flat(field, dim, 1, entries.to_vec()).expect("candidate matches its shape"),
    }
}

/// RCW Reynolds operators `V → g` for a fixed setting.
pub struct RcwPredicate(pub RcwSetting);

impl Predicate for RcwPredicate {
    fn id(&self) -> &'static str {
        "rcw-reynolds"
    }
    fn unknown(&self) -> Unknown {
        Unknown::Matrix { rows: self.0.dim_g(), cols: self.0.dim_v() }
    }
    fn field(&self) -> Field {
        self.0.field()
    }
    fn accepts(&self, entries: &[Scalar]) -> bool {
        is_rcw_reynolds(&self.0, &as_matrix(self.field(), self.unknown(), entries))
    }
}

/// Nijenhuis operators on an algebra.
pub struct NijenhuisPredicate(pub PreLieAlgebra);

impl Predicate for NijenhuisPredicate {
    fn id(&self) -> &'static str {
        "nijenhuis"
    }
    fn unknown(&self) -> Unknown {
        Unknown::Matrix { rows: self.0.dim(), cols: self.0.dim() }
    }
    fn field(&self) -> Field {
        self.0.field()
    }
    fn accepts(&self, entries: &[Scalar]) -> bool {
        check_nijenhuis(&self.0, &as_matrix(self.field(), self.unknown(), entries)).map_or(false, |r| r.passed())
    }
}

/// Reynolds operators of a scalar weight on an algebra.
pub struct WeightedPredicate {
    pub algebra: PreLieAlgebra,
    pub weight: Scalar,
}

impl Predicate for WeightedPredicate {
    fn id(&self) -> &'static str {
        "weighted-reynolds"
    }
    fn unknown(&self) -> Unknown {
        Unknown::Matrix { rows: self.algebra.dim(), cols: self.algebra.dim() }
    }
    fn field(&self) -> Field {
        self.algebra.field()
    }
    fn accepts(&self, entries: &[Scalar]) -> bool {
        is_weighted_reynolds(&self.algebra, &as_matrix(self.field(), self.unknown(), entries), &self.weight)
    }
}

/// Nijenhuis elements of a fixed operator.
pub struct NijenhuisElementPredicate(pub ReynoldsData);

impl Predicate for NijenhuisElementPredicate {
    fn id(&self) -> &'static str {
        "nijenhuis-element"
    }
    fn unknown(&self) -> Unknown {
        Unknown::Vector { dim: self.0.dim_g() }
    }
    fn field(&self) -> Field {
        self.0.field()
    }
    fn accepts(&self, entries: &[Scalar]) -> bool {
        is_nijenhuis_element(&self.0, entries)
    }
}

pub const PREDICATE_IDS: [&str; 4] = ["rcw-reynolds", "nijenhuis", "weighted-reynolds", "nijenhuis-element"];

/// Whatever a predicate may need; each id takes what it uses.
#[derive(Debug, Clone, Default)]
pub struct PredicateInputs {
    pub algebra: Option<PreLieAlgebra>,
    pub setting: Option<RcwSetting>,
    pub operator: Option<Matrix>,
    pub weight: Option<Scalar>,
}

fn missing(id: &str, what: &str) -> Error {
    Error::Shape(format!("predicate {} needs {}", id, what))
}

/// Looks a predicate up by id.
pub fn predicate(id: &str, inputs: &PredicateInputs) -> Result<Box<dyn Predicate>, Error> {
    let algebra = || {
        inputs
            .algebra
            .clone()
            .or_else(|| inputs.setting.as_ref().map(|s| s.algebra().clone()))
            .ok_or_else(|| missing(id, "an algebra"))
    };
    match id {
        "rcw-reynolds" => Ok(Box::new(RcwPredicate(inputs.setting.clone().ok_or_else(|| missing(id, "a representation"))?))),
        "nijenhuis" => Ok(Box::new(NijenhuisPredicate(algebra()?))),
        "weighted-reynolds" => Ok(Box::new(WeightedPredicate {
            algebra: algebra()?,
            weight: inputs.weight.clone().ok_or_else(|| missing(id, "a weight"))?,
        })),
        "nijenhuis-element" => {
            let s = inputs.setting.clone().ok_or_else(|| missing(id, "a representation"))?;
            let k = inputs.operator.clone().ok_or_else(|| missing(id, "an operator"))?;
            Ok(Box::new(NijenhuisElementPredicate(ReynoldsData::new(s, k)?)))
        }
        _ => Err(Error::Parse(format!("unknown predicate {}; known: {}", id, PREDICATE_IDS.join(", ")))),
    }
}

/// What to enumerate.
pub struct SearchSpec {
    pub predicate: Box<dyn Predicate>,
    /// Values each free entry ranges over, in enumeration order.
    pub domain: Vec<Scalar>,
    /// Fixed entries as (flat row-major position, value).
    pub fixed: Vec<(usize, Scalar)>,
}

impl SearchSpec {
    pub fn new(predicate: Box<dyn Predicate>, domain: Vec<Scalar>, fixed: Vec<(usize, Scalar)>) -> Result<Self, Error> {
        if domain.is_empty() {
            return Err(Error::Shape("entry domain is empty".into()));
        }
        let field = predicate.field();
        let len = predicate.unknown().len();
        for s in &domain {
            if s.field() != field {
                return Err(Error::FieldMismatch(format!("{}", s.field()), format!("{}", field)));
            }
        }
        let mut seen = Vec::new();
        for (pos, s) in &fixed {
            if *pos >= len {
                return Err(Error::Shape(format!("fixed entry {} outside an unknown of {} entries", pos + 1, len)));
            }
            if seen.contains(pos) {
                return Err(Error::Shape(format!("entry {} fixed twice", pos + 1)));
            }
            if s.field() != field {
                return Err(Error::FieldMismatch(format!("{}", s.field()), format!("{}", field)));
            }
            seen.push(*pos);
        }
        Ok(SearchSpec { predicate, domain, fixed })
    }

    /// Positions left free, ascending.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.predicate.unknown().len()).filter(|p| !self.fixed.iter().any(|(q, _)| q == p)).collect()
    }

    /// Number of candidates, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        let base = self.domain.len() as u128;
        let mut total: u128 = 1;
        for _ in self.free_positions() {
            total = total.checked_mul(base)?;
        }
        Some(total)
    }

    /// Candidate count, refused above `budget`.
    pub fn checked_size(&self, budget: u128) -> Result<u128, Error> {
        match self.size() {
            Some(t) if t <= budget => Ok(t),
            Some(t) => Err(Error::BudgetExceeded { needed: t, budget }),
            None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
        }
    }

    /// The candidate with the given lexicographic index.
    pub fn candidate(&self, mut index: u128) -> Vec<Scalar> {
        let len = self.predicate.unknown().len();
        let field = self.predicate.field();
        let mut out = alloc::vec![field.zero(); len];
        for (p, s) in &self.fixed {
            out[*p] = s.clone();
        }
        let base = self.domain.len() as u128;
        for p in self.free_positions().into_iter().rev() {
            out[p] = self.domain[(index % base) as usize].clone();
            index /= base;
        }
        out
    }

    /// Indices in `range` whose candidates pass, ascending.
    pub fn search_range(&self, range: Range<u128>) -> Vec<u128> {
        range.filter(|&i| self.predicate.accepts(&self.candidate(i))).collect()
    }

    pub fn as_matrix(&self, entries: &[Scalar]) -> Matrix {
        as_matrix(self.predicate.field(), self.predicate.unknown(), entries)
    }
}

/// Every passing candidate in lexicographic order and the exact count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub predicate: String,
    pub candidates: u128,
    pub solutions: Vec<Vec<Scalar>>,
}

/// Single-threaded exhaustive search.
pub fn exhaustive_search(spec: &SearchSpec, budget: u128) -> Result<SearchResult, Error> {
    let total = spec.checked_size(budget)?;
    let solutions = spec.search_range(0..total).into_iter().map(|i| spec.candidate(i)).collect();
    Ok(SearchResult {
        predicate: String::from(spec.predicate.id()),
        candidates: total,
        solutions,
    })
}

/// The algebra `e3·e3 = e2` with its regular representation and
/// `H(e3,e3) = e3`.
pub fn g3_setting(field: Field) -> RcwSetting {
    let g = PreLieAlgebra::new(StructureTensor::from_entries(field, 3, &[(2, 2, 1, 1)])).expect("e3·e3 = e2 is pre-Lie");
    let rep = regular_representation(&g);
    let mut h = crate::cochain::Cochain::zero(field, 2, 3, 3);
    h.set(&[2], 2, alloc::vec![field.zero(), field.zero(), field.one()]);
    RcwSetting::new(g, rep, h).expect("H is a 2-cocycle")
}

/// The eighteen polynomial conditions in the entries `a_ij` of `K` (each
/// returned as `lhs − rhs`) that characterise RCW Reynolds operators on
/// [`g3_setting`], three per unordered pair of basis vectors.
pub fn g3_polynomial_system(k: &Matrix) -> Vec<Scalar> {
    let a = |i: usize, j: usize| k.get(i - 1, j - 1).clone();
    let two = k.field().from_i64(2);
    let (a12, a13, a22, a23) = (a(1, 2), a(1, 3), a(2, 2), a(2, 3));
    let (a31, a32, a33) = (a(3, 1), a(3, 2), a(3, 3));
    let sq = |x: &Scalar| x.clone() * x;
    let mut out = Vec::with_capacity(18);
    for t in [sq(&a31), sq(&a32)] {
        out.push(t.clone() * &a13);
        out.push(t.clone() - t.clone() * &a23);
        out.push(t * &a33);
    }
    out.push(sq(&a33) * &a13 + two.clone() * &a33 * &a12);
    out.push(sq(&a33) - (sq(&a33) * &a23 + two.clone() * &a33 * &a22));
    out.push(sq(&a33) * &a33 + two * &a33 * &a32);
    let p = a31.clone() * &a32;
    out.push(p.clone() * &a13);
    out.push(p.clone() - p.clone() * &a23);
    out.push(p * &a33);
    for c in [a31, a32.clone()] {
        let q = c.clone() * &a33;
        out.push(q.clone() * &a13 + c.clone() * &a12);
        out.push(q.clone() - (q.clone() * &a23 + c.clone() * &a22));
        out.push(q * &a33 + c * &a32);
    }
    out
}

const SYSTEM: &str = "RCW identity ⟺ polynomial system";

/// Compares the RCW checker with [`g3_polynomial_system`] on every
/// `3 × 3` matrix over a prime field. `fixed` restricts the sweep as in
/// [`SearchSpec`].
pub fn verify_polynomial_system(field: Field, fixed: Vec<(usize, Scalar)>, budget: u128) -> Result<PolynomialSweep, Error> {
    let elements = field.elements().ok_or(Error::InfiniteField)?;
    let spec = SearchSpec::new(Box::new(RcwPredicate(g3_setting(field))), elements, fixed)?;
    let total = spec.checked_size(budget)?;
    Ok(sweep_range(&spec, 0..total).finish(total))
}

/// Partial result of a polynomial-system sweep over an index range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepTally {
    pub solutions: u128,
    pub disagreements: Vec<u128>,
}

impl SweepTally {
    /// Concatenates tallies of consecutive ranges.
    pub fn merge(mut self, other: SweepTally) -> SweepTally {
        self.solutions += other.solutions;
        self.disagreements.extend(other.disagreements);
        self
    }

    pub fn finish(self, candidates: u128) -> PolynomialSweep {
        let mut report = Report::with_conditions("polynomial-system", &[SYSTEM]);
        if !self.disagreements.is_empty() {
            report.fail(SYSTEM);
        }
        report.note(format!("{} candidates, {} solutions, {} disagreements", candidates, self.solutions, self.disagreements.len()));
        PolynomialSweep {
            candidates,
            solutions: self.solutions,
            disagreements: self.disagreements,
            report,
        }
    }
}

/// Sweeps one index range of a [`verify_polynomial_system`] spec.
pub fn sweep_range(spec: &SearchSpec, range: Range<u128>) -> SweepTally {
    let mut t = SweepTally::default();
    for i in range {
        let entries = spec.candidate(i);
        let pred = spec.predicate.accepts(&entries);
        let poly = g3_polynomial_system(&spec.as_matrix(&entries)).iter().all(Scalar::is_zero);
        if pred {
            t.solutions += 1;
        }
        if pred != poly {
            t.disagreements.push(i);
        }
    }
    t
}

/// Outcome of [`verify_polynomial_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSweep {
    pub candidates: u128,
    pub solutions: u128,
    /// Indices where checker and polynomial system disagree.
    pub disagreements: Vec<u128>,
    pub report: Report,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Q;
    use alloc::vec;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn g3_over_f2() {
        let f2 = f(2);
        let spec = SearchSpec::new(Box::new(RcwPredicate(g3_setting(f2))), f2.elements().unwrap(), vec![]).unwrap();
        let r = exhaustive_search(&spec, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.candidates, 512);
        for s in &r.solutions {
            assert!(g3_polynomial_system(&spec.as_matrix(s)).iter().all(Scalar::is_zero));
        }
        let row_zero = r.solutions.iter().filter(|s| s[6..].iter().all(Scalar::is_zero)).count();
        assert_eq!(row_zero, 64);

        let fixed: Vec<(usize, Scalar)> = (6..9).map(|p| (p, f2.zero())).collect();
        let spec = SearchSpec::new(Box::new(RcwPredicate(g3_setting(f2))), f2.elements().unwrap(), fixed.clone()).unwrap();
        let r = exhaustive_search(&spec, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.candidates, r.solutions.len()), (64, 64));

        let sweep = verify_polynomial_system(f2, vec![], DEFAULT_BUDGET).unwrap();
        assert!(sweep.report.passed() && sweep.disagreements.is_empty());
        let slice = verify_polynomial_system(f2, fixed, DEFAULT_BUDGET).unwrap();
        assert_eq!(slice.solutions, 64);
    }

    #[test]
    fn g3_over_f3() {
        let sweep = verify_polynomial_system(f(3), vec![], DEFAULT_BUDGET).unwrap();
        assert_eq!(sweep.candidates, 19_683);
        assert!(sweep.report.passed());
        assert!(sweep.solutions >= 729);
    }

    #[test]
    fn g3_polynomials_over_q_family() {
        let k = Matrix::from_i64(Q, &[&[3, -1, 7], &[2, 0, 5], &[0, 0, 0]]);
        assert!(g3_polynomial_system(&k).iter().all(Scalar::is_zero));
        let bad = Matrix::from_i64(Q, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert!(!g3_polynomial_system(&bad).iter().all(Scalar::is_zero));
        assert_eq!(g3_polynomial_system(&k).len(), 18);
    }

    #[test]
    fn abelian_everything_passes() {
        let f3 = f(3);
        let g = PreLieAlgebra::abelian(f3, 2);
        let spec = SearchSpec::new(Box::new(NijenhuisPredicate(g.clone())), f3.elements().unwrap(), vec![]).unwrap();
        let r = exhaustive_search(&spec, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.solutions.len() as u128, r.candidates);
        assert_eq!(r.candidates, 81);
        let w = WeightedPredicate { algebra: g, weight: f3.one() };
        let spec = SearchSpec::new(Box::new(w), vec![f3.zero(), f3.one()], vec![]).unwrap();
        assert_eq!(exhaustive_search(&spec, DEFAULT_BUDGET).unwrap().solutions.len(), 16);
    }

    #[test]
    fn upper_triangular_nijenhuis() {
        let f3 = f(3);
        let g = PreLieAlgebra::new(StructureTensor::from_entries(f3, 2, &[(1, 0, 0, -1), (1, 1, 1, 1)])).unwrap();
        // [[c, d], [0, c]]: tie entry 4 to entry 1 by listing c-values only on the diagonal.
        let mut count = 0;
        for c in f3.elements().unwrap() {
            let spec = SearchSpec::new(Box::new(NijenhuisPredicate(g.clone())), f3.elements().unwrap(), vec![(0, c.clone()), (2, f3.zero()), (3, c)]).unwrap();
            let r = exhaustive_search(&spec, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.solutions.len(), 3);
            count += r.solutions.len();
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn ordering_budget_and_registry() {
        let f2 = f(2);
        let spec = SearchSpec::new(Box::new(RcwPredicate(g3_setting(f2))), f2.elements().unwrap(), vec![]).unwrap();
        let r = exhaustive_search(&spec, DEFAULT_BUDGET).unwrap();
        let idx = spec.search_range(0..512);
        let split: Vec<u128> = spec.search_range(0..100).into_iter().chain(spec.search_range(100..512)).collect();
        assert_eq!(idx, split);
        assert_eq!(r.solutions[0], vec![f2.zero(); 9]);
        assert_eq!(spec.candidate(1)[8], f2.one());
        assert!(matches!(exhaustive_search(&spec, 100), Err(Error::BudgetExceeded { needed: 512, budget: 100 })));

        let inputs = PredicateInputs { setting: Some(g3_setting(f2)), ..Default::default() };
        for id in ["rcw-reynolds", "nijenhuis"] {
            assert_eq!(predicate(id, &inputs).unwrap().id(), id);
        }
        assert!(predicate("weighted-reynolds", &inputs).is_err());
        assert!(predicate("nijenhuis-element", &inputs).is_err());
        assert!(matches!(predicate("nope", &inputs), Err(Error::Parse(_))));
        assert!(SearchSpec::new(Box::new(RcwPredicate(g3_setting(f2))), vec![], vec![]).is_err());
        assert!(verify_polynomial_system(Q, vec![], 10).is_err());
    }
}
