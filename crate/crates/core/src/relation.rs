//! Binary relations on a set with apartness: classification, the
//! apartness complement under the product apartness, left/right classes and
//! the co-quasiorder built from a strongly detachable subset.

use std::sync::Arc;

use crate::apartness::ApartnessRelation;
use crate::bits::{full_mask, ones, BitMatrix};
use crate::carrier::{same_carrier, Carrier};
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::verdict::Verdict;

/// A relation on a carrier, closed under equality in both coordinates.
///
/// The empty relation is admitted; [`RelationClassification::inhabited`]
/// tells the two apart.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    carrier: Arc<Carrier>,
    pairs: BitMatrix,
}

impl std::fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.carrier.render_pairs(&self.pairs))
    }
}

impl std::fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.carrier.render_pairs(&self.pairs))
    }
}

impl BinaryRelation {
    pub fn new(carrier: Arc<Carrier>, pairs: BitMatrix) -> Result<Self> {
        if pairs.dim() != carrier.len() {
            return Err(Error::DimensionMismatch {
                expected: carrier.len(),
                found: pairs.dim(),
            });
        }
        let pairs = if carrier.is_diagonal() {
            pairs
        } else {
            carrier.close_matrix(&pairs)
        };
        Ok(BinaryRelation { carrier, pairs })
    }

    pub fn from_names<A: AsRef<str>, B: AsRef<str>>(
        carrier: Arc<Carrier>,
        pairs: &[(A, B)],
    ) -> Result<Self> {
        let m = carrier.matrix_of(pairs)?;
        Self::new(carrier, m)
    }

    /// Caller guarantees the matrix is already closed under equality.
    pub(crate) fn closed(carrier: Arc<Carrier>, pairs: BitMatrix) -> Self {
        debug_assert!(carrier.is_closed_matrix(&pairs));
        BinaryRelation { carrier, pairs }
    }

    pub fn empty(carrier: Arc<Carrier>) -> Self {
        let n = carrier.len();
        BinaryRelation {
            carrier,
            pairs: BitMatrix::empty(n),
        }
    }

    pub fn full(carrier: Arc<Carrier>) -> Self {
        let n = carrier.len();
        BinaryRelation {
            carrier,
            pairs: BitMatrix::full(n),
        }
    }

    /// The equality of the carrier, as a relation.
    pub fn equality(carrier: Arc<Carrier>) -> Self {
        let pairs = carrier.equality().clone();
        BinaryRelation { carrier, pairs }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.pairs
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.get(x, y)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.pairs()
    }

    pub fn name_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(x, y)| (self.carrier.name(x).to_string(), self.carrier.name(y).to_string()))
            .collect()
    }

    pub fn is_subset_of(&self, other: &BinaryRelation) -> bool {
        self.pairs.is_subset_of(&other.pairs)
    }

    /// `¬α`
    pub fn logical_complement(&self) -> BinaryRelation {
        self.with(self.pairs.complement())
    }

    pub fn intersection(&self, other: &BinaryRelation) -> BinaryRelation {
        self.with(self.pairs.intersection(&other.pairs))
    }

    pub fn transpose(&self) -> BinaryRelation {
        self.with(self.pairs.transpose())
    }

    /// Left class `aα = { x : (a,x) ∈ α }`.
    pub fn left_class(&self, a: usize) -> Subset {
        Subset::new(self.carrier.clone(), self.pairs.row(a))
    }

    /// Right class `αa = { x : (x,a) ∈ α }`.
    pub fn right_class(&self, a: usize) -> Subset {
        Subset::new(self.carrier.clone(), self.pairs.column(a))
    }

    /// Equivalence classes when this relation is an equivalence containing
    /// the carrier's equality, ordered by least member.
    pub fn classes(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for x in 0..self.carrier.len() {
            if seen >> x & 1 == 0 {
                let c = self.pairs.row(x);
                seen |= c;
                out.push(c);
            }
        }
        out
    }

    fn with(&self, pairs: BitMatrix) -> BinaryRelation {
        BinaryRelation {
            carrier: self.carrier.clone(),
            pairs,
        }
    }

    /// The pairs of this relation as a subset of the pair carrier produced
    /// by [`ApartnessRelation::pair_structure`].
    pub fn as_pair_subset(&self, pair_carrier: Arc<Carrier>) -> Subset {
        Subset::new(pair_carrier, self.pairs.to_flat())
    }
}

/// Relational properties. Each failed flag carries the first violating
/// tuple: `(x)` for the reflexivity flags, `(x,y)` for strong irreflexivity
/// and symmetry, `(x,y,z)` for (co-)transitivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationClassification {
    pub inhabited: bool,
    pub reflexive: Verdict,
    pub irreflexive: Verdict,
    pub strongly_irreflexive: Verdict,
    pub symmetric: Verdict,
    pub transitive: Verdict,
    pub cotransitive: Verdict,
    /// irreflexive and co-transitive
    pub weak_co_quasiorder: Verdict,
    /// strongly irreflexive and co-transitive
    pub co_quasiorder: Verdict,
    /// symmetric co-quasiorder
    pub co_equivalence: Verdict,
}

impl RelationClassification {
    pub fn flags(&self) -> [(&'static str, &Verdict); 9] {
        [
            ("reflexive", &self.reflexive),
            ("irreflexive", &self.irreflexive),
            ("strongly_irreflexive", &self.strongly_irreflexive),
            ("symmetric", &self.symmetric),
            ("transitive", &self.transitive),
            ("cotransitive", &self.cotransitive),
            ("weak_co_quasiorder", &self.weak_co_quasiorder),
            ("co_quasiorder", &self.co_quasiorder),
            ("co_equivalence", &self.co_equivalence),
        ]
    }

    pub fn is_equivalence(&self) -> bool {
        self.reflexive.holds && self.symmetric.holds && self.transitive.holds
    }
}

fn first_failing(vs: &[&Verdict]) -> Verdict {
    vs.iter()
        .find(|v| !v.holds)
        .map(|v| (*v).clone())
        .unwrap_or(Verdict::HOLDS)
}

pub(crate) fn reflexive(m: &BitMatrix) -> Verdict {
    Verdict::from_violation((0..m.dim()).find(|&x| !m.get(x, x)).map(|x| [x]))
}

pub(crate) fn symmetric(m: &BitMatrix) -> Verdict {
    let t = m.transpose();
    Verdict::from_violation(m.first_outside(&t).map(|(x, y)| [x, y]))
}

pub(crate) fn transitive(m: &BitMatrix) -> Verdict {
    // (x,y), (y,z) in m  =>  (x,z) in m
    Verdict::from_violation((0..m.dim()).find_map(|x| {
        ones(m.row(x)).find_map(|y| {
            let missing = m.row(y) & !m.row(x);
            (missing != 0).then(|| [x, y, missing.trailing_zeros() as usize])
        })
    }))
}

pub(crate) fn cotransitive(m: &BitMatrix) -> Verdict {
    // (x,y) in m  =>  every z has (x,z) or (z,y) in m
    let n = m.dim();
    let all = full_mask(n);
    let cols = m.transpose();
    Verdict::from_violation(m.pairs().find_map(|(x, y)| {
        let missing = all & !(m.row(x) | cols.row(y));
        (missing != 0).then(|| [x, y, missing.trailing_zeros() as usize])
    }))
}

impl ApartnessRelation {
    fn check_relation(&self, r: &BinaryRelation) -> Result<()> {
        if same_carrier(self.carrier(), r.carrier()) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn classify_relation(&self, alpha: &BinaryRelation) -> Result<RelationClassification> {
        self.check_relation(alpha)?;
        Ok(self.classify_matrix(alpha.matrix()))
    }

    pub(crate) fn classify_matrix(&self, m: &BitMatrix) -> RelationClassification {
        let irreflexive =
            Verdict::from_violation((0..m.dim()).find(|&x| m.get(x, x)).map(|x| [x]));
        let strongly_irreflexive = Verdict::from_violation(
            m.first_outside(self.matrix()).map(|(x, y)| [x, y]),
        );
        let symmetric = symmetric(m);
        let cotransitive = cotransitive(m);
        let weak_co_quasiorder = first_failing(&[&irreflexive, &cotransitive]);
        let co_quasiorder = first_failing(&[&strongly_irreflexive, &cotransitive]);
        let co_equivalence = first_failing(&[&co_quasiorder, &symmetric]);
        RelationClassification {
            inhabited: !m.is_empty(),
            reflexive: reflexive(m),
            irreflexive,
            strongly_irreflexive,
            symmetric,
            transitive: transitive(m),
            cotransitive,
            weak_co_quasiorder,
            co_quasiorder,
            co_equivalence,
        }
    }

    /// `∼α = { (x,y) : ∀(u,v)∈α, x # u ∨ y # v }`.
    pub fn a_complement_relation(&self, alpha: &BinaryRelation) -> Result<BinaryRelation> {
        self.check_relation(alpha)?;
        Ok(alpha.with(self.a_complement_matrix(alpha.matrix())))
    }

    pub(crate) fn a_complement_matrix(&self, m: &BitMatrix) -> BitMatrix {
        let n = self.len();
        let all = full_mask(n);
        // allowed[u] = { y : y # v for every v in uα }
        let allowed: Vec<Option<u64>> = (0..n)
            .map(|u| {
                let row = m.row(u);
                (row != 0).then(|| ones(row).fold(all, |acc, v| acc & self.row(v)))
            })
            .collect();
        let mut out = BitMatrix::empty(n);
        for x in 0..n {
            let near = all & !self.row(x);
            let r = ones(near)
                .filter_map(|u| allowed[u])
                .fold(all, |acc, a| acc & a);
            out.set_row(x, r);
        }
        out
    }

    /// `(a,b) ∈ τ ⇔ a ∈ ∼T ∧ b ∈ T`, for a strongly detachable `T`.
    pub fn coquasiorder_from_sd_subset(&self, t: &Subset) -> Result<BinaryRelation> {
        let k = self.classify_subset(t)?;
        if let Some(w) = &k.is_sd.witness {
            return Err(Error::precondition(
                format!("subset {t} is not strongly detachable"),
                w.render(self.carrier()),
            ));
        }
        Ok(product_relation(
            self.carrier().clone(),
            k.a_complement.mask(),
            t.mask(),
        ))
    }
}

/// `A × B` as a relation.
pub(crate) fn product_relation(carrier: Arc<Carrier>, left: u64, right: u64) -> BinaryRelation {
    let n = carrier.len();
    let mut m = BitMatrix::empty(n);
    for x in ones(left) {
        m.set_row(x, right);
    }
    BinaryRelation::closed(carrier, m)
}

/// `(left class, right class)` of `a`.
pub fn relation_classes(alpha: &BinaryRelation, a: &str) -> Result<(Subset, Subset)> {
    let i = alpha.carrier().index_of(a)?;
    Ok((alpha.left_class(i), alpha.right_class(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rel(ap: &ApartnessRelation, pairs: &[(&str, &str)]) -> BinaryRelation {
        BinaryRelation::from_names(ap.carrier().clone(), pairs).unwrap()
    }

    const SIM_ALPHA: [(&str, &str); 5] = [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b"), ("c", "c")];

    #[test]
    fn c3_a_complement_of_ac() {
        let c3 = fixtures::c3();
        let alpha = rel(&c3, &[("a", "c"), ("c", "a")]);
        assert_eq!(c3.a_complement_relation(&alpha).unwrap(), rel(&c3, &SIM_ALPHA));
    }

    #[test]
    fn c3_a_complement_of_nonsymmetric_alpha() {
        let c3 = fixtures::c3();
        let alpha = rel(&c3, &[("a", "c"), ("c", "a"), ("b", "c")]);
        assert_eq!(c3.a_complement_relation(&alpha).unwrap(), rel(&c3, &SIM_ALPHA));
    }

    #[test]
    fn empty_relation_has_full_a_complement() {
        let c3 = fixtures::c3();
        let e = BinaryRelation::empty(c3.carrier().clone());
        assert_eq!(
            c3.a_complement_relation(&e).unwrap(),
            BinaryRelation::full(c3.carrier().clone())
        );
    }

    #[test]
    fn c3_alpha_is_not_cotransitive() {
        let c3 = fixtures::c3();
        let k = c3
            .classify_relation(&rel(&c3, &[("a", "c"), ("c", "a")]))
            .unwrap();
        assert!(k.strongly_irreflexive.holds);
        assert!(k.symmetric.holds);
        assert!(!k.cotransitive.holds);
        assert_eq!(k.cotransitive.render_witness(c3.carrier()).unwrap(), "(a,c,b)");
    }

    #[test]
    fn tau5_is_a_co_quasiorder() {
        let c5 = fixtures::c5();
        let k = c5.classify_relation(&fixtures::tau5(&c5)).unwrap();
        assert!(k.co_quasiorder.holds);
        assert!(!k.co_equivalence.holds);
        assert!(k.inhabited);
    }

    #[test]
    fn equality_is_not_strongly_irreflexive() {
        let c3 = fixtures::c3();
        let k = c3
            .classify_relation(&BinaryRelation::equality(c3.carrier().clone()))
            .unwrap();
        assert!(!k.strongly_irreflexive.holds);
        assert_eq!(k.strongly_irreflexive.render_witness(c3.carrier()).unwrap(), "(a,a)");
    }

    #[test]
    fn tau5_classes() {
        let c5 = fixtures::c5();
        let tau = fixtures::tau5(&c5);
        let (d_left, _) = relation_classes(&tau, "d").unwrap();
        assert_eq!(d_left.names(), ["a", "b", "c"]);
        let (a_left, a_right) = relation_classes(&tau, "a").unwrap();
        assert!(a_left.is_empty());
        assert_eq!(a_right.names(), ["c", "d", "e"]);
        assert_eq!(relation_classes(&tau, "q").unwrap_err(), Error::UnknownElement("q".into()));
    }

    #[test]
    fn coquasiorder_from_sd_subset_examples() {
        let c5 = fixtures::c5();
        let t = Subset::from_names(c5.carrier().clone(), &["a", "b"]).unwrap();
        let tau = c5.coquasiorder_from_sd_subset(&t).unwrap();
        assert_eq!(
            tau,
            rel(&c5, &[("c", "a"), ("c", "b"), ("d", "a"), ("d", "b"), ("e", "a"), ("e", "b")])
        );
        assert!(c5.classify_relation(&tau).unwrap().co_quasiorder.holds);

        let full = Subset::full(c5.carrier().clone());
        let tau = c5.coquasiorder_from_sd_subset(&full).unwrap();
        assert!(tau.is_empty());
        assert!(c5.classify_relation(&tau).unwrap().co_quasiorder.holds);

        let c3 = fixtures::c3();
        let t = Subset::from_names(c3.carrier().clone(), &["a"]).unwrap();
        match c3.coquasiorder_from_sd_subset(&t) {
            Err(Error::Precondition { witness, .. }) => assert_eq!(witness, "(b)"),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn relations_are_closed_under_equality() {
        let c5 = fixtures::c5_coarse();
        let r = rel(&c5, &[("a", "c")]);
        assert!(r.contains(1, 2));
        assert_eq!(r.len(), 2);
    }
}
