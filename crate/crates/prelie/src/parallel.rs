//! Exhaustive enumerations split into contiguous index ranges, one per
//! worker thread, with results concatenated in index order. The output does
//! not depend on the number of workers.

use std::ops::Range;

use prelie_core::deformation::{is_nijenhuis_element, nth_vector, space_size};
use prelie_core::search::{g3_setting, sweep_range, PolynomialSweep, RcwPredicate, SearchResult, SearchSpec, SweepTally};
use prelie_core::{Error, Field, ReynoldsData, Scalar};

/// Splits `0..total` into at most `workers` contiguous ranges.
pub fn split(total: u128, workers: usize) -> Vec<Range<u128>> {
    let w = workers.max(1) as u128;
    let step = total / w + u128::from(total % w != 0);
    if step == 0 {
        return vec![0..0];
    }
    (0..w)
        .map(|i| (i * step).min(total)..((i + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Runs `f` on each range in its own thread; results keep range order.
pub fn map_ranges<T: Send>(total: u128, workers: usize, f: impl Fn(Range<u128>) -> T + Sync) -> Vec<T> {
    let ranges = split(total, workers);
    if ranges.len() == 1 {
        return ranges.into_iter().map(&f).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = ranges.into_iter().map(|r| s.spawn(|| f(r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn search(spec: &SearchSpec, budget: u128, workers: usize) -> Result<SearchResult, Error> {
    let total = spec.checked_size(budget)?;
    let solutions = map_ranges(total, workers, |r| spec.search_range(r))
        .into_iter()
        .flatten()
        .map(|i| spec.candidate(i))
        .collect();
    Ok(SearchResult {
        predicate: spec.predicate.id().to_string(),
        candidates: total,
        solutions,
    })
}

/// Threaded form of the checker against polynomial-system sweep on the
/// `e3·e3 = e2` family.
pub fn polynomial_sweep(field: Field, fixed: Vec<(usize, Scalar)>, budget: u128, workers: usize) -> Result<PolynomialSweep, Error> {
    let elements = field.elements().ok_or(Error::InfiniteField)?;
    let spec = SearchSpec::new(Box::new(RcwPredicate(g3_setting(field))), elements, fixed)?;
    let total = spec.checked_size(budget)?;
    let tally = map_ranges(total, workers, |r| sweep_range(&spec, r))
        .into_iter()
        .fold(SweepTally::default(), SweepTally::merge);
    Ok(tally.finish(total))
}

/// Every Nijenhuis element over a prime field, in lexicographic order.
pub fn nijenhuis_elements(data: &ReynoldsData, budget: u128, workers: usize) -> Result<Vec<Vec<Scalar>>, Error> {
    let (field, n) = (data.field(), data.dim_g());
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let total = match space_size(field, n) {
        Some(t) if t <= budget => t,
        other => return Err(Error::BudgetExceeded { needed: other.unwrap_or(u128::MAX), budget }),
    };
    Ok(map_ranges(total, workers, |r| {
        r.map(|i| nth_vector(field, n, i)).filter(|x| is_nijenhuis_element(data, x)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_in_order() {
        for total in [0u128, 1, 5, 64, 513] {
            for w in 1..6 {
                let rs = split(total, w);
                assert!(rs.len() <= w.max(1));
                let flat: Vec<u128> = rs.into_iter().flatten().collect();
                assert_eq!(flat, (0..total).collect::<Vec<_>>());
            }
        }
    }
}
