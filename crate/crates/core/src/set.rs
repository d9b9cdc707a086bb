//! Finite sets of positive integers and the families `S_p` / `S_{p,q}`.
//!
//! A set belongs to `S_p` when `min S >= p * |S|`. The two-parameter family
//! `S_{p,q}` additionally asks that the second smallest element satisfies
//! `min2 S >= q * |S|`, where a singleton's only element counts as both its
//! smallest and its second smallest.

use std::fmt;

use crate::error::{Error, Result};

/// A nonempty, strictly increasing list of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSet {
    elements: Vec<u32>,
}

impl FiniteSet {
    /// Builds a set from elements that are already strictly increasing and positive.
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidSet(
                "the empty set is not a member of any family".into(),
            ));
        }
        if elements[0] == 0 {
            return Err(Error::InvalidSet("elements must be positive".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "elements must be strictly increasing: {elements:?}"
            )));
        }
        Ok(FiniteSet { elements })
    }

    /// Builds a set from arbitrary positive elements, sorting and removing duplicates.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut v: Vec<u32> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::new(v)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u32>) -> Self {
        debug_assert!(Self::new(elements.clone()).is_ok());
        FiniteSet { elements }
    }

    pub fn singleton(x: u32) -> Result<Self> {
        Self::new(vec![x])
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn card(&self) -> usize {
        self.elements.len()
    }

    pub fn min_element(&self) -> u32 {
        self.elements[0]
    }

    /// Second smallest element; a singleton's element is its own second smallest.
    pub fn min2(&self) -> u32 {
        *self.elements.get(1).unwrap_or(&self.elements[0])
    }

    pub fn max_element(&self) -> u32 {
        *self.elements.last().expect("nonempty by construction")
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `S + k`.
    pub fn shift_up(&self, k: u32) -> FiniteSet {
        FiniteSet {
            elements: self.elements.iter().map(|&x| x + k).collect(),
        }
    }

    /// `S - k`, or `None` when some element would drop below 1.
    pub fn shift_down(&self, k: u32) -> Option<FiniteSet> {
        if self.min_element() <= k {
            return None;
        }
        Some(FiniteSet {
            elements: self.elements.iter().map(|&x| x - k).collect(),
        })
    }

    /// `S \ {x}`, or `None` when the result would be empty.
    pub fn remove(&self, x: u32) -> Option<FiniteSet> {
        let elements: Vec<u32> = self.elements.iter().copied().filter(|&e| e != x).collect();
        if elements.is_empty() {
            None
        } else {
            Some(FiniteSet { elements })
        }
    }

    /// `S ∪ {x}`.
    pub fn insert(&self, x: u32) -> Result<FiniteSet> {
        if x == 0 {
            return Err(Error::InvalidSet("elements must be positive".into()));
        }
        let mut elements = self.elements.clone();
        if let Err(pos) = elements.binary_search(&x) {
            elements.insert(pos, x);
        }
        Ok(FiniteSet { elements })
    }

    /// `S' = S \ {max S}`, or `None` for singletons.
    pub fn without_max(&self) -> Option<FiniteSet> {
        self.remove(self.max_element())
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Selects `S_p` (no `q`) or `S_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    p: u32,
    q: Option<u32>,
}

impl FamilyParams {
    pub fn new(p: u32, q: Option<u32>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParams("p must be at least 1".into()));
        }
        if q == Some(0) {
            return Err(Error::InvalidParams("q must be at least 1".into()));
        }
        Ok(FamilyParams { p, q })
    }

    /// The single-parameter family `S_p`.
    pub fn order_p(p: u32) -> Result<Self> {
        Self::new(p, None)
    }

    /// The two-parameter family `S_{p,q}`. Any `p`, `q >= 1` is accepted here;
    /// use [`FamilyParams::require_p_lt_q`] where the formulas need `p < q`.
    pub fn order_pq(p: u32, q: u32) -> Result<Self> {
        Self::new(p, Some(q))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> Option<u32> {
        self.q
    }

    /// Returns `(p, q)` when `q` is present and `p < q`.
    pub fn require_p_lt_q(&self) -> Result<(u32, u32)> {
        match self.q {
            Some(q) if self.p < q => Ok((self.p, q)),
            Some(q) => Err(Error::RequiresPLessThanQ { p: self.p, q }),
            None => Err(Error::InvalidParams(
                "q is required for the two-parameter family".into(),
            )),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            Some(q) => write!(f, "p={} q={}", self.p, q),
            None => write!(f, "p={}", self.p),
        }
    }
}

/// The singleton-aware second minimum of `set`.
pub fn min2(set: &FiniteSet) -> u32 {
    set.min2()
}

/// Membership in `S_p` or `S_{p,q}`.
pub fn is_member(set: &FiniteSet, params: FamilyParams) -> bool {
    satisfies(set.elements(), params)
}

/// The membership predicate on a nonempty increasing slice.
pub(crate) fn satisfies(elements: &[u32], params: FamilyParams) -> bool {
    let card = elements.len() as u64;
    let min = elements[0];
    if u64::from(min) < u64::from(params.p) * card {
        return false;
    }
    match params.q {
        Some(q) => u64::from(*elements.get(1).unwrap_or(&min)) >= u64::from(q) * card,
        None => true,
    }
}
