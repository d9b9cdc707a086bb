//! Executable versions of the bijective counting arguments.
//!
//! Each check materializes the family being split, its parts, and the images
//! of the smaller families under the explicit maps, then compares them as
//! sets. A map passes when it is injective on its domain and its image is
//! exactly the target part.
//!
//! Single-parameter family, `T = n + p + 1`:
//!
//! * `A = {S in M_{p,T} : n+p not in S}`, hit by `R1(S) = (S \ {n+p}) ∪ {T}` from `M_{p,n+p}`
//! * `B = {S in M_{p,T} : n+p in S}`, hit by `R2(S) = (S + p) ∪ {T}` from `M_{p,n}`
//!
//! Two-parameter family, `T = n + 2q + 1` and `S' = S \ {max S}`:
//!
//! * `A`: `n+2q` not in `S`, hit by `tau(S) = (S \ {max S}) ∪ {T}` from `M_{p,q,n+2q}`
//! * `B`: `n+2q` in `S` and `S' - q` in `M_{p,q,n+q}`, hit by `psi(S) = (S + q) ∪ {T}`
//! * `C`: the rest, split into `C_i = {min S = p|S| + i}` for `0 <= i < q - p`,
//!   each mapped onto `M_{q,n}` by `phi_i(S) = (S' \ {min S}) - 2q`

use std::collections::BTreeSet;
use std::fmt;

use crate::enumerate::Oracle;
use crate::error::{Error, Result};
use crate::set::{is_member, FamilyParams, FiniteSet};

/// Expected against observed size of one part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartCheck {
    pub name: String,
    pub expected: usize,
    pub actual: usize,
}

impl PartCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Whether one map is a bijection from its domain onto its target part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub name: String,
    pub domain_size: usize,
    pub injective: bool,
    pub onto: bool,
}

impl MapCheck {
    pub fn passed(&self) -> bool {
        self.injective && self.onto
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    /// Maximum element of the family being partitioned.
    pub target: u32,
    pub total: usize,
    pub parts: Vec<PartCheck>,
    pub maps: Vec<MapCheck>,
    /// Every member lies in exactly one part and every part lies in the family.
    pub partition_ok: bool,
    /// First failure, if any.
    pub failure: Option<String>,
    pub counterexample: Option<FiniteSet>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.partition_ok
            && self.parts.iter().all(PartCheck::passed)
            && self.maps.iter().all(MapCheck::passed)
    }

    pub fn part(&self, name: &str) -> Option<&PartCheck> {
        self.parts.iter().find(|p| p.name == name)
    }

    fn note(&mut self, failure: String, witness: Option<FiniteSet>) {
        if self.failure.is_none() {
            self.failure = Some(failure);
            self.counterexample = witness;
        }
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "max {}: total {}", self.target, self.total)?;
        for part in &self.parts {
            write!(
                f,
                ", |{}| = {} (expected {})",
                part.name, part.actual, part.expected
            )?;
        }
        for map in &self.maps {
            let status = if map.passed() {
                "bijective"
            } else {
                "NOT bijective"
            };
            write!(f, ", {} {status}", map.name)?;
        }
        if let Some(failure) = &self.failure {
            write!(f, "; first failure: {failure}")?;
            if let Some(set) = &self.counterexample {
                write!(f, " at {set}")?;
            }
        }
        Ok(())
    }
}

type Family = BTreeSet<FiniteSet>;

fn family(oracle: &Oracle, params: FamilyParams, n: u32) -> Result<Family> {
    if n == 0 {
        return Ok(Family::new());
    }
    Ok(oracle.enumerate_with_max(params, n)?.into_iter().collect())
}

fn check_partition(
    report: &mut PartitionReport,
    whole: &Family,
    parts: &[(&str, &Family)],
) -> bool {
    for member in whole {
        let homes: Vec<&str> = parts
            .iter()
            .filter(|(_, part)| part.contains(member))
            .map(|(name, _)| *name)
            .collect();
        if homes.len() != 1 {
            report.note(
                format!("member lies in {} parts {:?}", homes.len(), homes),
                Some(member.clone()),
            );
            return false;
        }
    }
    for (name, part) in parts {
        if let Some(stray) = part.iter().find(|s| !whole.contains(*s)) {
            report.note(format!("part {name} has a non-member"), Some(stray.clone()));
            return false;
        }
    }
    true
}

fn check_map<F>(
    report: &mut PartitionReport,
    name: String,
    domain: &Family,
    target: &Family,
    map: F,
) -> MapCheck
where
    F: Fn(&FiniteSet) -> Option<FiniteSet>,
{
    let mut image = Family::new();
    let mut injective = true;
    let mut well_defined = true;
    for s in domain {
        match map(s) {
            Some(t) => {
                if !target.contains(&t) {
                    well_defined = false;
                    report.note(
                        format!("{name} sends a set outside its target"),
                        Some(s.clone()),
                    );
                }
                if !image.insert(t) {
                    injective = false;
                    report.note(format!("{name} is not injective"), Some(s.clone()));
                }
            }
            None => {
                well_defined = false;
                report.note(format!("{name} is undefined"), Some(s.clone()));
            }
        }
    }
    let missed = target.iter().find(|t| !image.contains(*t));
    if let Some(t) = missed {
        report.note(format!("{name} misses a target member"), Some(t.clone()));
    }
    MapCheck {
        name,
        domain_size: domain.len(),
        injective,
        onto: well_defined && missed.is_none(),
    }
}

/// `(S \ {max S}) ∪ {new_max}`.
fn replace_max(s: &FiniteSet, new_max: u32) -> Option<FiniteSet> {
    match s.without_max() {
        Some(rest) => rest.insert(new_max).ok(),
        None => FiniteSet::singleton(new_max).ok(),
    }
}

fn empty_report(target: u32, total: usize) -> PartitionReport {
    PartitionReport {
        target,
        total,
        parts: Vec::new(),
        maps: Vec::new(),
        partition_ok: false,
        failure: None,
        counterexample: None,
    }
}

/// Splits `M_{p,n+p+1}` by whether `n + p` is present and checks both maps.
pub fn verify_partition_order_p(oracle: &Oracle, p: u32, n: u32) -> Result<PartitionReport> {
    let params = FamilyParams::order_p(p)?;
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let pivot = n + p;
    let target = pivot + 1;
    let whole = family(oracle, params, target)?;
    let upper = family(oracle, params, pivot)?;
    let lower = family(oracle, params, n)?;

    let (a, b): (Family, Family) = whole.iter().cloned().partition(|s| !s.contains(pivot));
    let mut report = empty_report(target, whole.len());
    report.partition_ok = check_partition(&mut report, &whole, &[("A", &a), ("B", &b)]);
    report.parts = vec![
        PartCheck {
            name: "A".into(),
            expected: upper.len(),
            actual: a.len(),
        },
        PartCheck {
            name: "B".into(),
            expected: lower.len(),
            actual: b.len(),
        },
    ];
    let r1 = check_map(&mut report, "R1".into(), &upper, &a, |s| {
        replace_max(s, target)
    });
    let r2 = check_map(&mut report, "R2".into(), &lower, &b, |s| {
        s.shift_up(p).insert(target).ok()
    });
    report.maps = vec![r1, r2];
    Ok(report)
}

/// [`verify_partition_order_p`] with the default oracle ceiling.
pub fn verify_partition_p(p: u32, n: u32) -> Result<PartitionReport> {
    verify_partition_order_p(&Oracle::default(), p, n)
}

/// Splits `M_{p,q,n+2q+1}` into `A`, `B`, `C = ∪ C_i` and checks `tau`, `psi`
/// and every `phi_i`.
pub fn verify_partition_order_pq(
    oracle: &Oracle,
    p: u32,
    q: u32,
    n: u32,
) -> Result<PartitionReport> {
    let params = FamilyParams::order_pq(p, q)?;
    params.require_p_lt_q()?;
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let pivot = n + 2 * q;
    let target = pivot + 1;
    let whole = family(oracle, params, target)?;
    let below = family(oracle, params, pivot)?;
    let shifted_domain = family(oracle, params, n + q)?;
    let order_q = family(oracle, FamilyParams::order_p(q)?, n)?;

    let in_b = |s: &FiniteSet| {
        s.without_max()
            .and_then(|rest| rest.shift_down(q))
            .is_some_and(|t| t.max_element() == n + q && is_member(&t, params))
    };
    let mut a = Family::new();
    let mut b = Family::new();
    let mut c = Family::new();
    for s in &whole {
        if !s.contains(pivot) {
            a.insert(s.clone());
        } else if in_b(s) {
            b.insert(s.clone());
        } else {
            c.insert(s.clone());
        }
    }

    let classes: Vec<Family> = (0..q - p)
        .map(|i| {
            whole
                .iter()
                .filter(|s| {
                    s.contains(pivot)
                        && u64::from(s.min_element())
                            == u64::from(p) * s.card() as u64 + u64::from(i)
                })
                .cloned()
                .collect()
        })
        .collect();
    let class_names: Vec<String> = (0..q - p).map(|i| format!("C{i}")).collect();

    let mut report = empty_report(target, whole.len());
    let top_ok = check_partition(&mut report, &whole, &[("A", &a), ("B", &b), ("C", &c)]);
    let class_parts: Vec<(&str, &Family)> = class_names
        .iter()
        .map(String::as_str)
        .zip(classes.iter())
        .collect();
    let classes_ok = check_partition(&mut report, &c, &class_parts);
    report.partition_ok = top_ok && classes_ok;

    report.parts = vec![
        PartCheck {
            name: "A".into(),
            expected: below.len(),
            actual: a.len(),
        },
        PartCheck {
            name: "B".into(),
            expected: shifted_domain.len(),
            actual: b.len(),
        },
        PartCheck {
            name: "C".into(),
            expected: (q - p) as usize * order_q.len(),
            actual: c.len(),
        },
    ];
    for (name, class) in class_names.iter().zip(&classes) {
        report.parts.push(PartCheck {
            name: name.clone(),
            expected: order_q.len(),
            actual: class.len(),
        });
    }

    let tau = check_map(&mut report, "tau".into(), &below, &a, |s| {
        replace_max(s, target)
    });
    let psi = check_map(&mut report, "psi".into(), &shifted_domain, &b, |s| {
        s.shift_up(q).insert(target).ok()
    });
    let mut maps = vec![tau, psi];
    for (i, class) in classes.iter().enumerate() {
        let phi = check_map(&mut report, format!("phi{i}"), class, &order_q, |s| {
            s.without_max()?.remove(s.min_element())?.shift_down(2 * q)
        });
        maps.push(phi);
    }
    report.maps = maps;
    Ok(report)
}

/// [`verify_partition_order_pq`] with the default oracle ceiling.
pub fn verify_partition_pq(p: u32, q: u32, n: u32) -> Result<PartitionReport> {
    verify_partition_order_pq(&Oracle::default(), p, q, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(report: &PartitionReport) -> Vec<(String, usize)> {
        report
            .parts
            .iter()
            .map(|p| (p.name.clone(), p.actual))
            .collect()
    }

    fn named(xs: &[(&str, usize)]) -> Vec<(String, usize)> {
        xs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }

    #[test]
    fn order_p_examples() {
        let r = verify_partition_p(1, 3).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(sizes(&r), named(&[("A", 3), ("B", 2)]));
        assert_eq!(r.total, 5);

        let r = verify_partition_p(2, 1).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(sizes(&r), named(&[("A", 1), ("B", 0)]));
        assert_eq!(r.total, 1);

        let r = verify_partition_p(1, 1).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(sizes(&r), named(&[("A", 1), ("B", 1)]));
        assert_eq!(r.total, 2);
    }

    #[test]
    fn order_pq_examples() {
        let r = verify_partition_pq(1, 2, 1).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(sizes(&r), named(&[("A", 4), ("B", 1), ("C", 0), ("C0", 0)]));
        assert_eq!(r.total, 5);

        let r = verify_partition_pq(1, 2, 3).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(sizes(&r), named(&[("A", 9), ("B", 4), ("C", 1), ("C0", 1)]));
        assert_eq!(r.total, 14);

        let r = verify_partition_pq(1, 3, 1).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.part("C").unwrap().actual, 0);
        assert_eq!(
            r.maps.iter().filter(|m| m.name.starts_with("phi")).count(),
            2
        );
    }

    #[test]
    fn every_case_in_range_passes() {
        for p in 1..=3 {
            for n in 1..=12 {
                let r = verify_partition_p(p, n).unwrap();
                assert!(r.passed(), "p={p} n={n}: {r}");
            }
        }
        for (p, q) in [(1, 2), (1, 3), (2, 3), (1, 4)] {
            for n in 1..=8 {
                let r = verify_partition_pq(p, q, n).unwrap();
                assert!(r.passed(), "p={p} q={q} n={n}: {r}");
            }
        }
    }

    #[test]
    fn guards() {
        assert_eq!(
            verify_partition_pq(2, 2, 3),
            Err(Error::RequiresPLessThanQ { p: 2, q: 2 })
        );
        let small = Oracle::with_ceiling(10);
        assert_eq!(
            verify_partition_order_p(&small, 2, 8),
            Err(Error::OracleRangeExceeded { n: 11, ceiling: 10 })
        );
        assert!(verify_partition_order_pq(&small, 1, 2, 6).is_err());
        assert_eq!(verify_partition_p(1, 0), Err(Error::ZeroIndex));
    }

    #[test]
    fn a_broken_map_is_caught_with_a_witness() {
        let oracle = Oracle::default();
        let params = FamilyParams::order_p(1).unwrap();
        let domain = family(&oracle, params, 5).unwrap();
        let target = family(&oracle, params, 6).unwrap();
        let mut report = empty_report(6, target.len());
        // Forgetting to drop the old maximum is not a map into M_{1,6}.
        let check = check_map(&mut report, "bad".into(), &domain, &target, |s| {
            s.insert(6).ok()
        });
        assert!(!check.passed());
        assert!(report.failure.is_some());
        assert!(report.counterexample.is_some());
    }
}
