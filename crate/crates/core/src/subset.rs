//! Extensional subsets, their two complements, and the d/sd/qd
//! classification.

use std::sync::Arc;

use crate::apartness::ApartnessRelation;
use crate::bits::{has, ones};
use crate::carrier::{same_carrier, Carrier};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// An extensional subset of a carrier. Construction closes the given mask
/// under equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    carrier: Arc<Carrier>,
    members: u64,
}

impl std::fmt::Debug for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.carrier.render_mask(self.members))
    }
}

impl std::fmt::Display for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.carrier.render_mask(self.members))
    }
}

impl Subset {
    pub fn new(carrier: Arc<Carrier>, mask: u64) -> Self {
        let members = carrier.close_mask(mask & carrier.all());
        Subset { carrier, members }
    }

    pub fn from_names<S: AsRef<str>>(carrier: Arc<Carrier>, names: &[S]) -> Result<Self> {
        let mask = carrier.mask_of(names)?;
        Ok(Self::new(carrier, mask))
    }

    pub fn empty(carrier: Arc<Carrier>) -> Self {
        Subset {
            carrier,
            members: 0,
        }
    }

    pub fn full(carrier: Arc<Carrier>) -> Self {
        let members = carrier.all();
        Subset { carrier, members }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        has(self.members, x)
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        ones(self.members)
    }

    pub fn names(&self) -> Vec<String> {
        self.iter().map(|i| self.carrier.name(i).to_string()).collect()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members & !other.members == 0
    }

    /// `¬Y`: elements not equal to any member.
    pub fn logical_complement(&self) -> Subset {
        Subset {
            carrier: self.carrier.clone(),
            members: self.carrier.all() & !self.members,
        }
    }

    pub(crate) fn with_mask(&self, mask: u64) -> Subset {
        Subset {
            carrier: self.carrier.clone(),
            members: mask,
        }
    }
}

/// Result of [`classify_subset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetClassification {
    /// `∀x (x ∈ Y ∨ x ∈ ¬Y)`. Evaluated literally; with decidable membership
    /// on a finite carrier it cannot fail.
    pub is_d: Verdict,
    /// `∀x (x ∈ Y ∨ x ∈ ∼Y)`, witness `(x)`.
    pub is_sd: Verdict,
    /// `∀x ∀y∈Y (x ∈ Y ∨ x # y)`, witness `(x,y)`.
    pub is_qd: Verdict,
    /// `∼Y = ¬Y`, witness: first element in exactly one of them.
    pub complements_equal: Verdict,
    pub a_complement: Subset,
    pub logical_complement: Subset,
}

pub const D_SUBSET_NOTE: &str =
    "detachability holds for every subset of a finite carrier with decidable membership";

impl ApartnessRelation {
    fn check_carrier(&self, c: &Arc<Carrier>) -> Result<()> {
        if same_carrier(self.carrier(), c) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// `∼Y = { x : ∀y∈Y, x # y }`. The empty set has the full carrier as
    /// a-complement.
    pub fn a_complement(&self, y: &Subset) -> Result<Subset> {
        self.check_carrier(y.carrier())?;
        Ok(y.with_mask(self.a_complement_mask(y.mask())))
    }

    pub(crate) fn a_complement_mask(&self, members: u64) -> u64 {
        (0..self.len())
            .filter(|&x| self.apart_from_all(x, members))
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub fn classify_subset(&self, y: &Subset) -> Result<SubsetClassification> {
        self.check_carrier(y.carrier())?;
        Ok(self.classify_mask(y))
    }

    pub(crate) fn classify_subset_mask(&self, mask: u64) -> SubsetClassification {
        self.classify_mask(&Subset::new(self.carrier().clone(), mask))
    }

    fn classify_mask(&self, y: &Subset) -> SubsetClassification {
        let n = self.len();
        let members = y.mask();
        let a_comp = self.a_complement_mask(members);
        let log_comp = self.carrier().all() & !members;

        let is_d = Verdict::from_violation(
            (0..n).find(|&x| !(has(members, x) || has(log_comp, x))).map(|x| [x]),
        );
        let is_sd = Verdict::from_violation(
            (0..n).find(|&x| !(has(members, x) || has(a_comp, x))).map(|x| [x]),
        );
        let is_qd = Verdict::from_violation((0..n).find_map(|x| {
            if has(members, x) {
                return None;
            }
            ones(members & !self.row(x)).next().map(|y| [x, y])
        }));
        let complements_equal = Verdict::from_violation(
            ones(a_comp ^ log_comp).next().map(|x| [x]),
        );
        SubsetClassification {
            is_d,
            is_sd,
            is_qd,
            complements_equal,
            a_complement: y.with_mask(a_comp),
            logical_complement: y.with_mask(log_comp),
        }
    }

    /// Subsets `Y` of this carrier with `x ⋈ Y`, i.e. `x ∈ ∼Y`.
    pub fn apart_from_subset(&self, x: usize, y: &Subset) -> bool {
        self.apart_from_all(x, y.mask())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(s: &Subset) -> Vec<String> {
        s.names()
    }

    #[test]
    fn c3_complements_of_a() {
        let c3 = fixtures::c3();
        let y = Subset::from_names(c3.carrier().clone(), &["a"]).unwrap();
        assert_eq!(names(&c3.a_complement(&y).unwrap()), ["c"]);
        assert_eq!(names(&y.logical_complement()), ["b", "c"]);
    }

    #[test]
    fn empty_subset_has_full_a_complement() {
        let c3 = fixtures::c3();
        let y = Subset::empty(c3.carrier().clone());
        assert_eq!(c3.a_complement(&y).unwrap().len(), 3);
        let full = Subset::full(c3.carrier().clone());
        assert!(full.logical_complement().is_empty());
    }

    #[test]
    fn c5_complement_of_ab() {
        let c5 = fixtures::c5();
        let y = Subset::from_names(c5.carrier().clone(), &["a", "b"]).unwrap();
        assert_eq!(names(&c5.a_complement(&y).unwrap()), ["c", "d", "e"]);
    }

    #[test]
    fn logical_complement_respects_coarse_equality() {
        let c5 = fixtures::c5_coarse();
        let y = Subset::from_names(c5.carrier().clone(), &["a"]).unwrap();
        assert_eq!(names(&y), ["a", "b"]);
        assert_eq!(names(&y.logical_complement()), ["c", "d", "e"]);
    }

    #[test]
    fn c3_singleton_is_neither_sd_nor_qd() {
        let c3 = fixtures::c3();
        let y = Subset::from_names(c3.carrier().clone(), &["a"]).unwrap();
        let k = c3.classify_subset(&y).unwrap();
        let c = c3.carrier();
        assert!(!k.is_sd.holds);
        assert_eq!(k.is_sd.render_witness(c).unwrap(), "(b)");
        assert!(!k.is_qd.holds);
        assert_eq!(k.is_qd.render_witness(c).unwrap(), "(b,a)");
        assert!(!k.complements_equal.holds);
        assert!(k.is_d.holds);
    }

    #[test]
    fn c5_ab_is_sd_and_qd() {
        let c5 = fixtures::c5();
        let y = Subset::from_names(c5.carrier().clone(), &["a", "b"]).unwrap();
        let k = c5.classify_subset(&y).unwrap();
        assert!(k.is_sd.holds && k.is_qd.holds && k.complements_equal.holds);
    }

    #[test]
    fn empty_subset_is_sd_and_qd() {
        let c3 = fixtures::c3();
        let k = c3
            .classify_subset(&Subset::empty(c3.carrier().clone()))
            .unwrap();
        assert!(k.is_sd.holds && k.is_qd.holds);
    }

    #[test]
    fn carrier_mismatch_is_rejected() {
        let c3 = fixtures::c3();
        let other = Carrier::discrete(["x", "y", "z"]).unwrap();
        let y = Subset::empty(other);
        assert_eq!(c3.a_complement(&y), Err(Error::CarrierMismatch));
    }
}
