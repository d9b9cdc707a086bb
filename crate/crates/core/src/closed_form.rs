//! Explicit counting formulas for `|M_{p,m}|` and `|M_{p,q,n}|`.
//!
//! Both formulas are evaluated in exact integer arithmetic. Summation bounds
//! written as quotients (`k/p - 2`, `(n+2)/(q+1)`) are cardinality bounds and
//! are taken with integer floor; a sum whose upper bound is below its lower
//! bound is empty.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::set::FamilyParams;

/// A single sequence term: the count of family members with maximum `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermValue {
    pub n: u32,
    pub value: BigUint,
}

/// `C(m, j)`, zero when `j > m`.
pub fn binomial(m: u64, j: u64) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `sum_{j=0}^{top} C(m, j)`, walking one row of Pascal's triangle.
fn binomial_prefix_sum(m: u64, top: u64) -> BigUint {
    let top = top.min(m);
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for j in 0..top {
        term *= m - j;
        term /= j + 1;
        sum += &term;
    }
    sum
}

/// `|M_{p,m}|`: sets with maximum `m` and `min S >= p|S|`.
///
/// Below `m = p` nothing qualifies, and for `p <= m < 2p` only the singleton
/// `{m}` does. From `m >= p + 1` on, fixing the minimum `k` leaves
/// `sum_{j=0}^{floor(k/p)-2} C(m-k-1, j)` ways to fill in the interior.
pub fn count_order_p(p: u32, m: u32) -> Result<BigUint> {
    FamilyParams::order_p(p)?;
    if m == 0 {
        return Err(Error::ZeroIndex);
    }
    if m < p {
        return Ok(BigUint::zero());
    }
    if m == p {
        return Ok(BigUint::one());
    }
    let (p, m) = (u64::from(p), u64::from(m));
    let mut total = BigUint::one();
    for k in 1..m {
        let q = k / p;
        if q < 2 {
            continue;
        }
        total += binomial_prefix_sum(m - k - 1, q - 2);
    }
    Ok(total)
}

/// `|M_{p,q,n}|` for `p < q`.
///
/// Zero for `n < q`, one for `q <= n < 2q`, and otherwise the singleton, the
/// `n - 2p` two-element sets, and for each size `k >= 3` and second minimum
/// `i` the `(i - pk) * C(n-i-1, k-3)` larger sets.
pub fn count_order_pq(p: u32, q: u32, n: u32) -> Result<BigUint> {
    FamilyParams::order_pq(p, q)?.require_p_lt_q()?;
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    if n < q {
        return Ok(BigUint::zero());
    }
    if n < 2 * q {
        return Ok(BigUint::one());
    }
    let (p, q, n) = (u64::from(p), u64::from(q), u64::from(n));
    let mut total = BigUint::from(1 + n - 2 * p);
    let k_max = (n + 2) / (q + 1);
    for k in 3..=k_max {
        for i in q * k..=n + 2 - k {
            total += binomial(n - i - 1, k - 3) * (i - p * k);
        }
    }
    Ok(total)
}

/// `|M_{p,n}|` or `|M_{p,q,n}|` by the explicit formulas, as a [`TermValue`].
pub fn term(params: FamilyParams, n: u32) -> Result<TermValue> {
    let value = match params.q() {
        None => count_order_p(params.p(), n)?,
        Some(q) => count_order_pq(params.p(), q, n)?,
    };
    Ok(TermValue { n, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_with_max, oracle_count};

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(60, 30), big(118_264_581_564_861_424));
    }

    #[test]
    fn pascal_row_sums() {
        for m in 0..20 {
            for top in 0..22 {
                let direct: BigUint = (0..=top).map(|j| binomial(m, j)).sum();
                assert_eq!(binomial_prefix_sum(m, top), direct);
            }
        }
    }

    #[test]
    fn order_p_examples() {
        assert_eq!(count_order_p(1, 1).unwrap(), big(1));
        assert_eq!(count_order_p(1, 2).unwrap(), big(1));
        let fib: Vec<BigUint> = (1..=7).map(|m| count_order_p(1, m).unwrap()).collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8, 13].map(big));
        assert_eq!(count_order_p(2, 8).unwrap(), big(6));
        assert_eq!(count_order_p(3, 2).unwrap(), big(0));
    }

    #[test]
    fn order_pq_examples() {
        assert_eq!(count_order_pq(1, 2, 1).unwrap(), big(0));
        assert_eq!(count_order_pq(1, 2, 3).unwrap(), big(1));
        assert_eq!(count_order_pq(1, 2, 7).unwrap(), big(9));
        assert_eq!(count_order_pq(1, 2, 9).unwrap(), big(20));
    }

    #[test]
    fn order_pq_requires_p_below_q() {
        assert_eq!(
            count_order_pq(2, 2, 5),
            Err(Error::RequiresPLessThanQ { p: 2, q: 2 })
        );
        assert_eq!(
            count_order_pq(3, 2, 5),
            Err(Error::RequiresPLessThanQ { p: 3, q: 2 })
        );
        assert_eq!(count_order_p(1, 0), Err(Error::ZeroIndex));
        assert!(count_order_p(0, 3).is_err());
    }

    #[test]
    fn order_p_matches_oracle() {
        for p in 1..=4 {
            for m in 1..=25 {
                let params = FamilyParams::order_p(p).unwrap();
                assert_eq!(
                    count_order_p(p, m).unwrap(),
                    oracle_count(params, m).unwrap(),
                    "p={p} m={m}"
                );
            }
        }
    }

    #[test]
    fn order_pq_matches_oracle() {
        for (p, q) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4)] {
            let params = FamilyParams::order_pq(p, q).unwrap();
            for n in 1..=22 {
                assert_eq!(
                    count_order_pq(p, q, n).unwrap(),
                    oracle_count(params, n).unwrap(),
                    "p={p} q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn two_element_band_has_n_minus_2p_sets() {
        for (p, q) in [(1, 2), (1, 3), (2, 3), (2, 5)] {
            let params = FamilyParams::order_pq(p, q).unwrap();
            for n in 2 * q..=20 {
                let pairs = enumerate_with_max(params, n)
                    .unwrap()
                    .iter()
                    .filter(|s| s.card() == 2)
                    .count() as u32;
                assert_eq!(pairs, n - 2 * p, "p={p} q={q} n={n}");
            }
        }
    }

    #[test]
    fn order_p_is_nondecreasing_past_2p() {
        for p in 1..=5 {
            let values: Vec<BigUint> = (2 * p..=80).map(|m| count_order_p(p, m).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]), "p={p}");
        }
    }
}
