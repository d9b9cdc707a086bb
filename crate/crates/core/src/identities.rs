//! Index-by-index checks of the two-parameter identities on finished tables.
//!
//! With `a_n = |M_{p,q,n+q}|` and `M(n) = |M_{q,n}|`:
//!
//! * coupled:      `a_{n+q+1} = a_{n+q} + a_n + (q-p) M(n)`
//! * eq1, eq2, eq3: the coupled identity shifted to `n`, `n+q` and `n+q+1`,
//!   written as differences, e.g. `a_{n+2q+1} - a_{n+2q} = a_{n+q} + (q-p) M(n+q)`
//! * substitution: `M(n+q+1) = M(n+q) + M(n)`
//! * uncoupled:    `a_{n+2q+2} = 2a_{n+2q+1} - a_{n+2q} + 2a_{n+q+1} - 2a_{n+q} - a_n`

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::recurrence::SequenceTable;

/// Outcome of one identity checked for `n = 1..=checked`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub checked: u32,
    pub first_failure: Option<u32>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

struct Shifted<'a> {
    pq: &'a SequenceTable,
    single: &'a SequenceTable,
    q: u32,
    spread: BigInt,
}

impl Shifted<'_> {
    fn a(&self, n: u32) -> Result<BigInt> {
        lookup(self.pq, n + self.q)
    }

    fn m(&self, n: u32) -> Result<BigInt> {
        lookup(self.single, n)
    }

    /// `a_{k+q+1} - a_{k+q} == a_k + (q-p) M(k)`.
    fn difference_form(&self, k: u32) -> Result<bool> {
        let q = self.q;
        Ok(self.a(k + q + 1)? - self.a(k + q)? == self.a(k)? + &self.spread * self.m(k)?)
    }
}

fn lookup(table: &SequenceTable, m: u32) -> Result<BigInt> {
    table
        .get(m)
        .map(|v| BigInt::from(v.clone()))
        .ok_or(Error::IndexOutOfRange {
            m,
            last: table.last_index(),
        })
}

fn check_range<F>(name: &'static str, n_max: u32, mut holds: F) -> Result<IdentityReport>
where
    F: FnMut(u32) -> Result<bool>,
{
    let mut first_failure = None;
    for n in 1..=n_max {
        if !holds(n)? {
            first_failure = Some(n);
            break;
        }
    }
    Ok(IdentityReport {
        name,
        checked: n_max,
        first_failure,
    })
}

fn shifted<'a>(pq: &'a SequenceTable, single: &'a SequenceTable) -> Result<Shifted<'a>> {
    let (p, q) = pq.params().require_p_lt_q()?;
    if single.params().q().is_some() || single.params().p() != q {
        return Err(Error::InvalidParams(format!(
            "expected the order-{q} single-parameter table, got {}",
            single.params()
        )));
    }
    Ok(Shifted {
        pq,
        single,
        q,
        spread: BigInt::from(q - p),
    })
}

/// The coupled identity for `n = 1..=n_max`. `pq` needs absolute indices up
/// to `n_max + 2q + 1` and `single` (the order-`q` table) up to `n_max`.
pub fn coupled_identity(
    pq: &SequenceTable,
    single: &SequenceTable,
    n_max: u32,
) -> Result<IdentityReport> {
    let s = shifted(pq, single)?;
    check_range("coupled", n_max, |n| s.difference_form(n))
}

/// The three shifted difference forms, the order-`q` substitution and the uncoupled recurrence, each
/// for `n = 1..=n_max`. `pq` needs indices up to `n_max + 3q + 2` and
/// `single` up to `n_max + q + 1`.
pub fn derivation_identities(
    pq: &SequenceTable,
    single: &SequenceTable,
    n_max: u32,
) -> Result<Vec<IdentityReport>> {
    let s = shifted(pq, single)?;
    let q = s.q;
    let two = BigInt::from(2);
    Ok(vec![
        check_range("eq1", n_max, |n| s.difference_form(n))?,
        check_range("eq2", n_max, |n| s.difference_form(n + q))?,
        check_range("eq3", n_max, |n| s.difference_form(n + q + 1))?,
        check_range("substitution", n_max, |n| {
            Ok(s.m(n + q + 1)? == s.m(n + q)? + s.m(n)?)
        })?,
        check_range("uncoupled", n_max, |n| {
            let rhs = &two * s.a(n + 2 * q + 1)? - s.a(n + 2 * q)? + &two * s.a(n + q + 1)?
                - &two * s.a(n + q)?
                - s.a(n)?;
            Ok(s.a(n + 2 * q + 2)? == rhs)
        })?,
    ])
}
