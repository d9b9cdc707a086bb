//! Brute-force enumeration of `M_{p,n}` and `M_{p,q,n}`.
//!
//! This is the ground truth every formula and recurrence is checked against,
//! so it only ever evaluates the membership predicate. The depth-first walk
//! builds sets in increasing element order, which yields lexicographic output
//! directly, and prunes branches whose eventual cardinality is already too
//! large for the minimum (or second minimum) chosen so far.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::set::{satisfies, FamilyParams, FiniteSet};

/// Default largest `n` the enumerator accepts.
pub const DEFAULT_CEILING: u32 = 40;

/// Enumeration oracle with a configurable resource guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    ceiling: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl Oracle {
    pub fn with_ceiling(ceiling: u32) -> Self {
        Oracle { ceiling }
    }

    pub fn ceiling(&self) -> u32 {
        self.ceiling
    }

    fn guard(&self, n: u32) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if n > self.ceiling {
            return Err(Error::OracleRangeExceeded {
                n,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// All members of the family whose maximum is `n`, in lexicographic order.
    pub fn enumerate_with_max(&self, params: FamilyParams, n: u32) -> Result<Vec<FiniteSet>> {
        self.guard(n)?;
        let mut out = Vec::new();
        walk(params, n, &mut |elements| {
            out.push(FiniteSet::from_sorted_unchecked(elements.to_vec()))
        });
        Ok(out)
    }

    /// `|M_{p,n}|` or `|M_{p,q,n}|` by counting the walk's leaves.
    pub fn count(&self, params: FamilyParams, n: u32) -> Result<BigUint> {
        self.guard(n)?;
        let mut count: u64 = 0;
        walk(params, n, &mut |_| count += 1);
        Ok(BigUint::from(count))
    }
}

/// [`Oracle::enumerate_with_max`] with the default ceiling.
pub fn enumerate_with_max(params: FamilyParams, n: u32) -> Result<Vec<FiniteSet>> {
    Oracle::default().enumerate_with_max(params, n)
}

/// [`Oracle::count`] with the default ceiling.
pub fn oracle_count(params: FamilyParams, n: u32) -> Result<BigUint> {
    Oracle::default().count(params, n)
}

fn walk(params: FamilyParams, n: u32, emit: &mut dyn FnMut(&[u32])) {
    let mut current = Vec::with_capacity(n as usize);
    for min in 1..=n {
        current.push(min);
        if min == n {
            finish(params, &current, emit);
        } else if can_grow_to(params, n, &current, 2) {
            extend(params, n, &mut current, emit);
        }
        current.pop();
    }
}

fn extend(params: FamilyParams, n: u32, current: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    let last = *current.last().expect("walk seeds a minimum");
    for next in last + 1..=n {
        current.push(next);
        if next == n {
            finish(params, current, emit);
        } else if can_grow_to(params, n, current, current.len() + 1) {
            extend(params, n, current, emit);
        }
        current.pop();
    }
}

fn finish(params: FamilyParams, elements: &[u32], emit: &mut dyn FnMut(&[u32])) {
    if satisfies(elements, params) {
        emit(elements);
    }
}

/// Whether a partial set could still end with at least `final_len` elements.
/// The minimum caps the cardinality at `min / p`; with `q` present and at
/// least two elements the second minimum (or `n` while it is unknown) caps it
/// at `min2 / q`.
fn can_grow_to(params: FamilyParams, n: u32, partial: &[u32], final_len: usize) -> bool {
    let final_len = final_len as u64;
    if u64::from(params.p()) * final_len > u64::from(partial[0]) {
        return false;
    }
    if let Some(q) = params.q() {
        let second = partial.get(1).copied().unwrap_or(n);
        if u64::from(q) * final_len > u64::from(second) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::is_member;

    fn sets(xss: &[&[u32]]) -> Vec<FiniteSet> {
        xss.iter()
            .map(|xs| FiniteSet::new(xs.to_vec()).unwrap())
            .collect()
    }

    fn p(p: u32) -> FamilyParams {
        FamilyParams::order_p(p).unwrap()
    }

    fn pq(p: u32, q: u32) -> FamilyParams {
        FamilyParams::order_pq(p, q).unwrap()
    }

    /// Every subset of `{1..n}` containing `n`, filtered by the predicate.
    fn powerset_sweep(params: FamilyParams, n: u32) -> Vec<FiniteSet> {
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << (n - 1)) {
            let mut elements: Vec<u32> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            elements.push(n);
            let set = FiniteSet::new(elements).unwrap();
            if is_member(&set, params) {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(enumerate_with_max(p(1), 3).unwrap(), sets(&[&[2, 3], &[3]]));
        assert!(enumerate_with_max(p(2), 1).unwrap().is_empty());
        assert_eq!(
            enumerate_with_max(pq(1, 2), 4).unwrap(),
            sets(&[&[2, 4], &[3, 4], &[4]])
        );
    }

    #[test]
    fn counts() {
        assert_eq!(oracle_count(p(1), 5).unwrap(), BigUint::from(5u32));
        assert_eq!(oracle_count(p(2), 8).unwrap(), BigUint::from(6u32));
        assert_eq!(oracle_count(pq(1, 2), 7).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn one_two_seven_members() {
        let expected = sets(&[
            &[2, 7],
            &[3, 6, 7],
            &[3, 7],
            &[4, 6, 7],
            &[4, 7],
            &[5, 6, 7],
            &[5, 7],
            &[6, 7],
            &[7],
        ]);
        assert_eq!(enumerate_with_max(pq(1, 2), 7).unwrap(), expected);
    }

    #[test]
    fn matches_full_powerset_sweep() {
        let families = [
            p(1),
            p(2),
            p(3),
            pq(1, 2),
            pq(1, 3),
            pq(2, 3),
            pq(3, 2),
            pq(2, 2),
        ];
        for params in families {
            for n in 1..=18 {
                assert_eq!(
                    enumerate_with_max(params, n).unwrap(),
                    powerset_sweep(params, n),
                    "{params} n={n}"
                );
            }
        }
    }

    #[test]
    fn output_is_sorted_and_distinct() {
        let out = enumerate_with_max(p(1), 14).unwrap();
        assert!(out.windows(2).all(|w| w[0] < w[1]));
        assert!(out.iter().all(|s| s.max_element() == 14));
    }

    #[test]
    fn ceiling_guard() {
        let oracle = Oracle::with_ceiling(10);
        assert_eq!(
            oracle.count(p(1), 11),
            Err(Error::OracleRangeExceeded { n: 11, ceiling: 10 })
        );
        assert!(oracle.count(p(1), 10).is_ok());
        assert_eq!(
            enumerate_with_max(p(1), DEFAULT_CEILING + 1).unwrap_err(),
            Error::OracleRangeExceeded {
                n: DEFAULT_CEILING + 1,
                ceiling: DEFAULT_CEILING
            }
        );
        assert_eq!(oracle.count(p(1), 0), Err(Error::ZeroIndex));
    }

    #[test]
    fn p_at_least_q_collapses_to_single_parameter_family() {
        for (pp, qq) in [(2, 2), (3, 2), (3, 1), (4, 3)] {
            for n in 1..=20 {
                assert_eq!(
                    enumerate_with_max(pq(pp, qq), n).unwrap(),
                    enumerate_with_max(p(pp), n).unwrap()
                );
            }
        }
    }

    #[test]
    fn higher_p_families_nest_inside_lower() {
        for n in 1..=16 {
            let wide = enumerate_with_max(p(1), n).unwrap();
            for pp in 2..=4 {
                for s in enumerate_with_max(p(pp), n).unwrap() {
                    assert!(wide.binary_search(&s).is_ok(), "{s} p={pp}");
                }
            }
        }
    }
}
