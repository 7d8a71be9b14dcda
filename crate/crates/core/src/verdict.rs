use serde::{Deserialize, Serialize};

use crate::carrier::Carrier;

/// An element tuple witnessing the failure of a universal statement (or the
/// truth of an existential one), listed in the order of the formula's
/// quantifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness(pub Vec<usize>);

impl Witness {
    pub fn render(&self, carrier: &Carrier) -> String {
        carrier.render_tuple(&self.0)
    }
}

impl<const N: usize> From<[usize; N]> for Witness {
    fn from(t: [usize; N]) -> Self {
        Witness(t.to_vec())
    }
}

/// Outcome of evaluating one property: either it holds, or it fails with the
/// lexicographically first violating tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub const HOLDS: Verdict = Verdict {
        holds: true,
        witness: None,
    };

    pub fn fails(w: impl Into<Witness>) -> Self {
        Verdict {
            holds: false,
            witness: Some(w.into()),
        }
    }

    /// Universal check: holds iff `first_violation` is `None`.
    pub fn from_violation<W: Into<Witness>>(first_violation: Option<W>) -> Self {
        match first_violation {
            None => Verdict::HOLDS,
            Some(w) => Verdict::fails(w),
        }
    }

    /// A verdict whose failure has no meaningful tuple (e.g. an empty
    /// existential).
    pub fn bare(holds: bool) -> Self {
        Verdict {
            holds,
            witness: None,
        }
    }

    pub fn render_witness(&self, carrier: &Carrier) -> Option<String> {
        self.witness.as_ref().map(|w| w.render(carrier))
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        Verdict::bare(b)
    }
}

/// First element of an iterator of candidate tuples satisfying `bad`.
pub(crate) fn first_violation<T>(
    candidates: impl Iterator<Item = T>,
    mut bad: impl FnMut(&T) -> bool,
) -> Option<T> {
    candidates.into_iter().find(|t| bad(t))
}

/// All pairs over `0..n` in lexicographic order.
pub(crate) fn pairs(n: usize) -> impl Iterator<Item = [usize; 2]> {
    (0..n).flat_map(move |a| (0..n).map(move |b| [a, b]))
}

/// All triples over `0..n` in lexicographic order.
pub(crate) fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
}

/// All quadruples over `0..n` in lexicographic order.
pub(crate) fn quads(n: usize) -> impl Iterator<Item = [usize; 4]> {
    pairs(n).flat_map(move |[a, b]| pairs(n).map(move |[c, d]| [a, b, c, d]))
}
