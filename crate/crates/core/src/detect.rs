//! Minimal constant-coefficient recurrence detection over exact rationals.
//!
//! For each candidate order `d = 1, 2, ...` every applicable index of the
//! prefix contributes one equation `a(m) = c_1 a(m-1) + ... + c_d a(m-d)`.
//! The resulting Hankel-shaped system is solved by Gaussian elimination over
//! `BigRational`. An order fits when the system is consistent and admits a
//! solution with `c_d != 0`; the first order that fits is minimal because
//! every smaller one was shown inconsistent (or forced `c_d = 0`).
//!
//! Orders are only tried while the prefix holds at least `2d + 4` terms, so
//! each fit is backed by at least four equations beyond the `2d` needed to
//! pin it down.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::recurrence::LinearRecurrence;

/// Extra terms required beyond `2d` before order `d` is tried.
pub const SAFETY_MARGIN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionResult {
    pub recurrence: LinearRecurrence,
    pub verified_prefix_length: usize,
    /// Every smaller order was certified not to fit.
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    Found(DetectionResult),
    /// No order up to `searched_up_to` fits.
    NoneFound {
        searched_up_to: usize,
    },
}

impl Detection {
    pub fn found(&self) -> Option<&DetectionResult> {
        match self {
            Detection::Found(r) => Some(r),
            Detection::NoneFound { .. } => None,
        }
    }
}

/// Smallest prefix length for which order `d` is tried.
pub fn required_len(order: usize) -> usize {
    2 * order + SAFETY_MARGIN
}

/// Searches orders `1..=max_order` (capped by what the prefix length
/// supports) for the minimal recurrence annihilating `prefix`.
pub fn detect_minimal(prefix: &[BigInt], max_order: usize) -> Result<Detection> {
    if max_order == 0 {
        return Err(Error::InvalidParams("max_order must be at least 1".into()));
    }
    if prefix.len() < required_len(1) {
        return Err(Error::PrefixTooShort {
            needed: required_len(1),
            got: prefix.len(),
        });
    }
    let reachable = ((prefix.len() - SAFETY_MARGIN) / 2).min(max_order);
    for order in 1..=reachable {
        if let Some(coefficients) = fit_order(prefix, order) {
            let recurrence = LinearRecurrence::new(coefficients)?;
            debug_assert!(verify_annihilates(&recurrence, prefix).unwrap_or(false));
            return Ok(Detection::Found(DetectionResult {
                recurrence,
                verified_prefix_length: prefix.len(),
                minimal: true,
            }));
        }
    }
    Ok(Detection::NoneFound {
        searched_up_to: reachable,
    })
}

/// True iff `rec` holds at every index of `prefix` that has `order` predecessors.
pub fn verify_annihilates(rec: &LinearRecurrence, prefix: &[BigInt]) -> Result<bool> {
    let order = rec.order();
    if prefix.len() <= order {
        return Err(Error::PrefixTooShort {
            needed: order + 1,
            got: prefix.len(),
        });
    }
    Ok((order..prefix.len())
        .all(|end| rec.apply(&prefix[..end]) == BigRational::from_integer(prefix[end].clone())))
}

/// `[1, -c_1, ..., -c_d]`: the characteristic polynomial, highest degree first.
pub fn characteristic_coefficients(rec: &LinearRecurrence) -> Vec<BigRational> {
    std::iter::once(BigRational::one())
        .chain(rec.coefficients().iter().map(|c| -c.clone()))
        .collect()
}

/// Coefficients of an order-`order` recurrence with nonzero last coefficient
/// satisfied by the whole prefix, if one exists.
fn fit_order(prefix: &[BigInt], order: usize) -> Option<Vec<BigRational>> {
    let rows: Vec<Vec<BigRational>> = (order..prefix.len())
        .map(|m| {
            let mut row: Vec<BigRational> = (1..=order)
                .map(|lag| BigRational::from_integer(prefix[m - lag].clone()))
                .collect();
            row.push(BigRational::from_integer(prefix[m].clone()));
            row
        })
        .collect();
    let solution = solve(rows, order)?;
    let last = order - 1;
    if !solution.particular[last].is_zero() {
        return Some(solution.particular);
    }
    // Steer along the null space to make the last coefficient nonzero.
    let direction = solution.null_space.iter().find(|v| !v[last].is_zero())?;
    Some(
        solution
            .particular
            .iter()
            .zip(direction)
            .map(|(x, d)| x + d)
            .collect(),
    )
}

struct Solution {
    particular: Vec<BigRational>,
    null_space: Vec<Vec<BigRational>>,
}

/// Solves the augmented system `rows` (each `unknowns` coefficients plus a
/// right-hand side). Returns `None` when it is inconsistent.
fn solve(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Solution> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }

    let mut particular = vec![BigRational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = rows[r][unknowns].clone();
    }
    let null_space = (0..unknowns)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); unknowns];
            v[free] = BigRational::one();
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = -rows[r][free].clone();
            }
            v
        })
        .collect();
    Some(Solution {
        particular,
        null_space,
    })
}
