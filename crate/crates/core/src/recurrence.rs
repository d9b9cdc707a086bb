//! Sequence tables built from linear recurrences.
//!
//! Tables are always indexed by the absolute maximum element `m`. The shifted
//! two-parameter sequence `a_n = |M_{p,q,n+q}|` is obtained with
//! [`SequenceTable::slice_from`]`(q + 1)`, which keeps absolute indices for
//! reporting. Every index below the first one a recurrence is valid for is
//! seeded from the closed forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::closed_form::{count_order_p, count_order_pq};
use crate::error::{Error, Result};
use crate::set::FamilyParams;

/// `a(m) = c_1 a(m-1) + ... + c_d a(m-d)` over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    coefficients: Vec<BigRational>,
    seeds: Option<Vec<BigInt>>,
}

impl LinearRecurrence {
    /// `coefficients[i]` multiplies `a(m - 1 - i)`. The last coefficient must be nonzero.
    pub fn new(coefficients: Vec<BigRational>) -> Result<Self> {
        match coefficients.last() {
            None => Err(Error::InvalidRecurrence("order must be at least 1".into())),
            Some(c) if c.is_zero() => Err(Error::InvalidRecurrence(
                "the highest-lag coefficient must be nonzero".into(),
            )),
            Some(_) => Ok(LinearRecurrence {
                coefficients,
                seeds: None,
            }),
        }
    }

    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Attaches `order` seed terms.
    pub fn with_seeds(mut self, seeds: Vec<BigInt>) -> Result<Self> {
        if seeds.len() != self.order() {
            return Err(Error::InvalidRecurrence(format!(
                "expected {} seeds, got {}",
                self.order(),
                seeds.len()
            )));
        }
        self.seeds = Some(seeds);
        Ok(self)
    }

    /// `|M_{p,m}| = |M_{p,m-1}| + |M_{p,m-p-1}|`, order `p + 1`.
    pub fn order_p(p: u32) -> Result<Self> {
        FamilyParams::order_p(p)?;
        let mut c = vec![0i64; p as usize + 1];
        c[0] = 1;
        c[p as usize] = 1;
        Self::from_integers(&c)
    }

    /// The self-contained depth `2q + 2` recurrence for `a_n = |M_{p,q,n+q}|`:
    /// lags 1, 2, q+1, q+2 and 2q+2 carry 2, -1, 2, -2 and -1. It does not depend on `p`.
    pub fn uncoupled_pq(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParams("q must be at least 1".into()));
        }
        let q = q as usize;
        let mut c = vec![0i64; 2 * q + 2];
        c[0] = 2;
        c[1] = -1;
        c[q] += 2;
        c[q + 1] += -2;
        c[2 * q + 1] = -1;
        Self::from_integers(&c)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn seeds(&self) -> Option<&[BigInt]> {
        self.seeds.as_deref()
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// `sum_i c_i * window[len - 1 - i]`, where `window` ends just before the new term.
    pub(crate) fn apply(&self, history: &[BigInt]) -> BigRational {
        let len = history.len();
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * BigRational::from_integer(history[len - 1 - i].clone()))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Integer fast path when every coefficient is an integer.
    fn apply_integral(&self, ints: &[(usize, BigInt)], history: &[BigInt]) -> BigInt {
        let len = history.len();
        ints.iter().fold(BigInt::zero(), |acc, (i, c)| {
            acc + c * &history[len - 1 - i]
        })
    }

    fn integer_coefficients(&self) -> Option<Vec<(usize, BigInt)>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            self.coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.to_integer()))
                .collect(),
        )
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a(m) =")?;
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                f.write_str(if c.is_negative() { " -" } else { " " })?;
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "a(m-{})", i + 1)?;
        }
        Ok(())
    }
}

/// Extends `prefix` by `count` terms. Returns only the new terms.
pub fn step_linear(rec: &LinearRecurrence, prefix: &[BigInt], count: usize) -> Result<Vec<BigInt>> {
    if prefix.len() < rec.order() {
        return Err(Error::InsufficientPrefix {
            needed: rec.order(),
            got: prefix.len(),
        });
    }
    let mut terms = prefix.to_vec();
    terms.reserve(count);
    let ints = rec.integer_coefficients();
    for offset in 0..count {
        let next = match &ints {
            Some(ints) => rec.apply_integral(ints, &terms),
            None => {
                let value = rec.apply(&terms);
                if !value.is_integer() {
                    return Err(Error::NonIntegralTerm { offset });
                }
                value.to_integer()
            }
        };
        terms.push(next);
    }
    Ok(terms.split_off(prefix.len()))
}

/// Which computation produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Enumeration,
    ClosedForm,
    RecurrenceCoupled,
    RecurrenceUncoupled,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Enumeration,
        Method::ClosedForm,
        Method::RecurrenceCoupled,
        Method::RecurrenceUncoupled,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::ClosedForm => "closed-form",
            Method::RecurrenceCoupled => "recurrence-coupled",
            Method::RecurrenceUncoupled => "recurrence-uncoupled",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown method tag {s:?}")))
    }
}

/// Consecutive terms `first_index, first_index + 1, ...` of one family's sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    params: FamilyParams,
    first_index: u32,
    values: Vec<BigUint>,
    method: Method,
}

impl SequenceTable {
    pub fn new(
        params: FamilyParams,
        first_index: u32,
        values: Vec<BigUint>,
        method: Method,
    ) -> Result<Self> {
        if first_index == 0 {
            return Err(Error::ZeroIndex);
        }
        if values.is_empty() {
            return Err(Error::InvalidParams(
                "a table holds at least one term".into(),
            ));
        }
        Ok(SequenceTable {
            params,
            first_index,
            values,
            method,
        })
    }

    /// Table of `f(m)` for `m = 1..=len`.
    pub fn tabulate<F>(params: FamilyParams, len: u32, method: Method, mut f: F) -> Result<Self>
    where
        F: FnMut(u32) -> Result<BigUint>,
    {
        let values = (1..=len).map(&mut f).collect::<Result<Vec<_>>>()?;
        Self::new(params, 1, values, method)
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn first_index(&self) -> u32 {
        self.first_index
    }

    pub fn last_index(&self) -> u32 {
        self.first_index + self.values.len() as u32 - 1
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Term at absolute index `m`.
    pub fn get(&self, m: u32) -> Option<&BigUint> {
        m.checked_sub(self.first_index)
            .and_then(|i| self.values.get(i as usize))
    }

    /// The same terms from absolute index `first` onward.
    pub fn slice_from(&self, first: u32) -> Option<SequenceTable> {
        let skip = first.checked_sub(self.first_index)? as usize;
        if skip >= self.values.len() {
            return None;
        }
        Some(SequenceTable {
            params: self.params,
            first_index: first,
            values: self.values[skip..].to_vec(),
            method: self.method,
        })
    }

    pub fn signed_values(&self) -> Vec<BigInt> {
        self.values
            .iter()
            .map(|v| BigInt::from_biguint(Sign::Plus, v.clone()))
            .collect()
    }

    /// Iterator of `(m, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        (self.first_index..).zip(self.values.iter())
    }
}

fn to_unsigned(values: Vec<BigInt>) -> Vec<BigUint> {
    values
        .into_iter()
        .map(|v| {
            v.to_biguint().expect(
                "family counts are never negative; a negative term means a broken recurrence",
            )
        })
        .collect()
}

/// `|M_{p,m}|` for `m = 1..=len`, seeding `m <= p + 1` from the closed form and
/// continuing with `a(m) = a(m-1) + a(m-p-1)`.
pub fn seq_order_p(p: u32, len: u32) -> Result<SequenceTable> {
    let params = FamilyParams::order_p(p)?;
    if len == 0 {
        return Err(Error::ZeroIndex);
    }
    let seed_len = len.min(p + 1);
    let mut values = (1..=seed_len)
        .map(|m| count_order_p(p, m))
        .collect::<Result<Vec<_>>>()?;
    let lag = p as usize + 1;
    for m in seed_len as usize..len as usize {
        let next = &values[m - 1] + &values[m - lag];
        values.push(next);
    }
    SequenceTable::new(params, 1, values, Method::RecurrenceUncoupled)
}

/// `|M_{p,q,m}|` for `m = 1..=len` via the coupled identity
/// `b(m) = b(m-1) + b(m-q-1) + (q-p) |M_{q,m-2q-1}|` for `m >= 2q + 2`.
pub fn seq_order_pq_coupled(p: u32, q: u32, len: u32) -> Result<SequenceTable> {
    let params = FamilyParams::order_pq(p, q)?;
    params.require_p_lt_q()?;
    if len == 0 {
        return Err(Error::ZeroIndex);
    }
    let seed_len = len.min(2 * q + 1);
    let mut values = (1..=seed_len)
        .map(|m| count_order_pq(p, q, m))
        .collect::<Result<Vec<_>>>()?;
    if len > seed_len {
        let inner = seq_order_p(q, len - 2 * q - 1)?;
        let spread = BigUint::from(q - p);
        let (q, lag) = (q as usize, q as usize + 1);
        for m in seed_len as usize + 1..=len as usize {
            let idx = m - 1;
            let next =
                &values[idx - 1] + &values[idx - lag] + &spread * &inner.values[m - 2 * q - 2];
            values.push(next);
        }
    }
    SequenceTable::new(params, 1, values, Method::RecurrenceCoupled)
}

/// `|M_{p,q,m}|` for `m = 1..=len` via the self-contained depth `2q + 2`
/// recurrence, seeded up to `m = 3q + 2`.
pub fn seq_order_pq_uncoupled(p: u32, q: u32, len: u32) -> Result<SequenceTable> {
    let params = FamilyParams::order_pq(p, q)?;
    params.require_p_lt_q()?;
    if len == 0 {
        return Err(Error::ZeroIndex);
    }
    let seed_len = len.min(3 * q + 2);
    let seeds = (1..=seed_len)
        .map(|m| count_order_pq(p, q, m))
        .collect::<Result<Vec<_>>>()?;
    let mut values = seeds;
    if len > seed_len {
        let rec = LinearRecurrence::uncoupled_pq(q)?;
        let signed: Vec<BigInt> = values
            .iter()
            .map(|v| BigInt::from_biguint(Sign::Plus, v.clone()))
            .collect();
        let tail = step_linear(&rec, &signed, (len - seed_len) as usize)?;
        values.extend(to_unsigned(tail));
    }
    SequenceTable::new(params, 1, values, Method::RecurrenceUncoupled)
}

/// First absolute index at which `table` violates `rec`, or `None` when it holds.
/// Indices from `first_index + order` on are checked.
pub fn check_recurrence(rec: &LinearRecurrence, table: &SequenceTable) -> Result<Option<u32>> {
    let order = rec.order();
    if table.len() <= order {
        return Err(Error::TableTooShort {
            order,
            got: table.len(),
        });
    }
    let values = table.signed_values();
    let ints = rec.integer_coefficients();
    for end in order..values.len() {
        let history = &values[..end];
        let holds = match &ints {
            Some(ints) => rec.apply_integral(ints, history) == values[end],
            None => rec.apply(history) == BigRational::from_integer(values[end].clone()),
        };
        if !holds {
            return Ok(Some(table.first_index() + end as u32));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::oracle_count;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn uints(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn order_p_tables() {
        assert_eq!(
            seq_order_p(1, 7).unwrap().values(),
            uints(&[1, 1, 2, 3, 5, 8, 13])
        );
        assert_eq!(
            seq_order_p(2, 10).unwrap().values(),
            uints(&[0, 1, 1, 1, 2, 3, 4, 6, 9, 13])
        );
        assert_eq!(seq_order_p(3, 1).unwrap().values(), uints(&[0]));
    }

    #[test]
    fn order_p_table_matches_oracle() {
        for p in 1..=4 {
            let table = seq_order_p(p, 24).unwrap();
            let params = FamilyParams::order_p(p).unwrap();
            for (m, v) in table.iter() {
                assert_eq!(v, &oracle_count(params, m).unwrap(), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn coupled_tables() {
        assert_eq!(
            seq_order_pq_coupled(1, 2, 9).unwrap().values(),
            uints(&[0, 1, 1, 3, 4, 5, 9, 14, 20])
        );
        assert_eq!(
            seq_order_pq_coupled(2, 3, 2).unwrap().values(),
            uints(&[0, 0])
        );
        assert_eq!(
            seq_order_pq_coupled(2, 2, 5),
            Err(Error::RequiresPLessThanQ { p: 2, q: 2 })
        );
    }

    #[test]
    fn coupled_identity_at_one_two_six() {
        // a_4 = a_3 + a_1 + (q - p)|M_{2,1}| with a_n = |M_{1,2,n+2}|.
        let b = |m| oracle_count(FamilyParams::order_pq(1, 2).unwrap(), m).unwrap();
        let m2 = oracle_count(FamilyParams::order_p(2).unwrap(), 1).unwrap();
        assert_eq!(b(6), b(5) + b(3) + m2);
        assert_eq!(b(6), BigUint::from(5u32));
    }

    #[test]
    fn uncoupled_tables() {
        assert_eq!(
            seq_order_pq_uncoupled(1, 2, 9).unwrap().values(),
            seq_order_pq_coupled(1, 2, 9).unwrap().values()
        );
        assert_eq!(
            seq_order_pq_uncoupled(1, 3, 3).unwrap().values(),
            uints(&[0, 0, 1])
        );
        assert!(seq_order_pq_uncoupled(3, 2, 9).is_err());
    }

    #[test]
    fn uncoupled_step_at_one_two_nine() {
        // a_7 = 2a_6 - a_5 + 2a_4 - 2a_3 - a_1 = 28 - 9 + 10 - 8 - 1.
        let params = FamilyParams::order_pq(1, 2).unwrap();
        let a = |n: u32| BigInt::from(oracle_count(params, n + 2).unwrap());
        let two = BigInt::from(2);
        let rhs = &two * a(6) - a(5) + &two * a(4) - &two * a(3) - a(1);
        assert_eq!(rhs, BigInt::from(20));
        assert_eq!(a(7), rhs);
    }

    #[test]
    fn pq_tables_match_oracle() {
        for (p, q) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4)] {
            let params = FamilyParams::order_pq(p, q).unwrap();
            let coupled = seq_order_pq_coupled(p, q, 22).unwrap();
            let uncoupled = seq_order_pq_uncoupled(p, q, 22).unwrap();
            for (m, v) in coupled.iter() {
                let truth = oracle_count(params, m).unwrap();
                assert_eq!(v, &truth, "coupled p={p} q={q} m={m}");
                assert_eq!(
                    uncoupled.get(m).unwrap(),
                    &truth,
                    "uncoupled p={p} q={q} m={m}"
                );
            }
        }
    }

    #[test]
    fn step_linear_examples() {
        let fib = LinearRecurrence::from_integers(&[1, 1]).unwrap();
        assert_eq!(
            step_linear(&fib, &ints(&[1, 1]), 5).unwrap(),
            ints(&[2, 3, 5, 8, 13])
        );
        let p2 = LinearRecurrence::from_integers(&[1, 0, 1]).unwrap();
        assert_eq!(
            step_linear(&p2, &ints(&[0, 1, 1]), 4).unwrap(),
            ints(&[1, 2, 3, 4])
        );
        let constant = LinearRecurrence::from_integers(&[1]).unwrap();
        assert_eq!(
            step_linear(&constant, &ints(&[7]), 3).unwrap(),
            ints(&[7, 7, 7])
        );
    }

    #[test]
    fn step_linear_errors() {
        let fib = LinearRecurrence::from_integers(&[1, 1]).unwrap();
        assert_eq!(
            step_linear(&fib, &ints(&[1]), 3),
            Err(Error::InsufficientPrefix { needed: 2, got: 1 })
        );
        let half = LinearRecurrence::new(vec![BigRational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(step_linear(&half, &ints(&[4]), 2).unwrap(), ints(&[2, 1]));
        assert_eq!(
            step_linear(&half, &ints(&[4]), 3),
            Err(Error::NonIntegralTerm { offset: 2 })
        );
    }

    #[test]
    fn recurrence_construction() {
        assert!(LinearRecurrence::from_integers(&[]).is_err());
        assert!(LinearRecurrence::from_integers(&[1, 0]).is_err());
        assert_eq!(
            LinearRecurrence::uncoupled_pq(2).unwrap(),
            LinearRecurrence::from_integers(&[2, -1, 2, -2, 0, -1]).unwrap()
        );
        assert_eq!(
            LinearRecurrence::uncoupled_pq(1).unwrap(),
            LinearRecurrence::from_integers(&[2, 1, -2, -1]).unwrap()
        );
        assert_eq!(
            LinearRecurrence::order_p(3).unwrap(),
            LinearRecurrence::from_integers(&[1, 0, 0, 1]).unwrap()
        );
        let seeded = LinearRecurrence::from_integers(&[1, 1])
            .unwrap()
            .with_seeds(ints(&[1, 1]))
            .unwrap();
        assert_eq!(seeded.seeds(), Some(&ints(&[1, 1])[..]));
        assert_eq!(
            LinearRecurrence::from_integers(&[2, -1, 0, 1])
                .unwrap()
                .to_string(),
            "a(m) = 2*a(m-1) - a(m-2) + a(m-4)"
        );
    }

    #[test]
    fn check_recurrence_examples() {
        let fib = LinearRecurrence::from_integers(&[1, 1]).unwrap();
        assert_eq!(
            check_recurrence(&fib, &seq_order_p(1, 20).unwrap()).unwrap(),
            None
        );
        // 0,1,1,1,2,...: a(4) = 1 but a(3) + a(2) = 2.
        assert_eq!(
            check_recurrence(&fib, &seq_order_p(2, 10).unwrap()).unwrap(),
            Some(4)
        );

        let cor = LinearRecurrence::uncoupled_pq(2).unwrap();
        let shifted = seq_order_pq_coupled(1, 2, 30)
            .unwrap()
            .slice_from(3)
            .unwrap();
        assert_eq!(check_recurrence(&cor, &shifted).unwrap(), None);

        let short = seq_order_p(1, 2).unwrap();
        assert_eq!(
            check_recurrence(&fib, &short),
            Err(Error::TableTooShort { order: 2, got: 2 })
        );
    }

    #[test]
    fn slicing_keeps_absolute_indices() {
        let t = seq_order_p(2, 10).unwrap();
        let s = t.slice_from(4).unwrap();
        assert_eq!(s.first_index(), 4);
        assert_eq!(s.get(4), t.get(4));
        assert_eq!(s.last_index(), 10);
        assert!(t.slice_from(11).is_none());
        assert_eq!(s.get(3), None);
    }

    #[test]
    fn method_tags_parse_back() {
        for m in Method::ALL {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }

    proptest! {
        #[test]
        fn extension_composes(
            coeffs in proptest::collection::vec(-3i64..=3, 1..5),
            seeds in proptest::collection::vec(-20i64..=20, 5),
            k in 0usize..12,
            j in 0usize..12,
        ) {
            let mut coeffs = coeffs;
            if *coeffs.last().unwrap() == 0 {
                *coeffs.last_mut().unwrap() = 1;
            }
            let rec = LinearRecurrence::from_integers(&coeffs).unwrap();
            let prefix = ints(&seeds[..rec.order()]);
            let first = step_linear(&rec, &prefix, k).unwrap();
            let mut joined = prefix.clone();
            joined.extend(first.iter().cloned());
            let second = step_linear(&rec, &joined, j).unwrap();
            let mut staged = first;
            staged.extend(second);
            prop_assert_eq!(staged, step_linear(&rec, &prefix, k + j).unwrap());
        }
    }
}
