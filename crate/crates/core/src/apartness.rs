//! Sets with apartness: axiom validation and the product apartness on pairs.

use std::sync::Arc;

use crate::bits::{full_mask, BitMatrix};
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::verdict::{first_violation, pairs, quads, Verdict};

/// Per-axiom verdicts for a candidate apartness.
///
/// Witness tuples follow the quantifier order of each axiom: `(x,y)` for
/// Ap1, Ap2 and Ap4; `(x,z,y)` for Ap3; `(x,y,x',y')` for Ap5'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub irreflexive: Verdict,
    pub symmetric: Verdict,
    pub cotransitive: Verdict,
    pub extensional: Verdict,
    pub tight: Verdict,
}

impl AxiomReport {
    /// Ap1, Ap2, Ap3 and Ap5' all hold. Tightness is informational.
    pub fn accepted(&self) -> bool {
        self.required().iter().all(|(_, v)| v.holds)
    }

    pub fn required(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("Ap1", &self.irreflexive),
            ("Ap2", &self.symmetric),
            ("Ap3", &self.cotransitive),
            ("Ap5'", &self.extensional),
        ]
    }

    pub fn all(&self) -> [(&'static str, &Verdict); 5] {
        let [a, b, c, d] = self.required();
        [a, b, c, d, ("Ap4", &self.tight)]
    }
}

/// Evaluates the apartness axioms for a candidate matrix over `carrier`.
pub fn validate_structure(carrier: &Carrier, candidate: &BitMatrix) -> Result<AxiomReport> {
    let n = carrier.len();
    if candidate.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: candidate.dim(),
        });
    }
    let ap = candidate;
    let all = full_mask(n);
    let cols = ap.transpose();

    let irreflexive = Verdict::from_violation(first_violation(pairs(n), |[x, y]| {
        carrier.equal(*x, *y) && ap.get(*x, *y)
    }));
    let symmetric = Verdict::from_violation(first_violation(pairs(n), |[x, y]| {
        ap.get(*x, *y) && !ap.get(*y, *x)
    }));
    // x # z  =>  every y has x # y or y # z
    let cotransitive = Verdict::from_violation(ap.pairs().find_map(|(x, z)| {
        let missing = all & !(ap.row(x) | cols.row(z));
        (missing != 0).then(|| [x, z, missing.trailing_zeros() as usize])
    }));
    let extensional = Verdict::from_violation(first_violation(quads(n), |[x, y, x2, y2]| {
        ap.get(*x, *y) && carrier.equal(*x, *x2) && carrier.equal(*y, *y2) && !ap.get(*x2, *y2)
    }));
    let tight = Verdict::from_violation(first_violation(pairs(n), |[x, y]| {
        !ap.get(*x, *y) && !carrier.equal(*x, *y)
    }));
    Ok(AxiomReport {
        irreflexive,
        symmetric,
        cotransitive,
        extensional,
        tight,
    })
}

/// Convenience wrapper taking identifier pairs; no symmetric closure is
/// applied here.
pub fn validate_structure_pairs<A: AsRef<str>, B: AsRef<str>>(
    carrier: &Carrier,
    pairs: &[(A, B)],
) -> Result<AxiomReport> {
    let m = carrier.matrix_of(pairs)?;
    validate_structure(carrier, &m)
}

/// A validated apartness `#` on a carrier: a set with apartness `(S, =, #)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ApartnessRelation {
    carrier: Arc<Carrier>,
    pairs: BitMatrix,
    tight: bool,
}

impl std::fmt::Debug for ApartnessRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ApartnessRelation")
            .field("carrier", &self.carrier)
            .field("pairs", &self.carrier.render_pairs(&self.pairs))
            .finish()
    }
}

impl ApartnessRelation {
    pub fn new(carrier: Arc<Carrier>, pairs: BitMatrix) -> Result<Self> {
        let report = validate_structure(&carrier, &pairs)?;
        if let Some((name, v)) = report.required().into_iter().find(|(_, v)| !v.holds) {
            let w = v.render_witness(&carrier).unwrap_or_default();
            return Err(Error::axiom(name, w));
        }
        Ok(ApartnessRelation {
            carrier,
            tight: report.tight.holds,
            pairs,
        })
    }

    /// Symmetric closure of the given pairs, then validation.
    pub fn from_pairs<A: AsRef<str>, B: AsRef<str>>(
        carrier: Arc<Carrier>,
        pairs: &[(A, B)],
    ) -> Result<Self> {
        let m = carrier.matrix_of(pairs)?;
        let m = m.union(&m.transpose());
        Self::new(carrier, m)
    }

    /// The largest apartness compatible with the carrier: everything not
    /// equal is apart. Always tight.
    pub fn tight_on(carrier: Arc<Carrier>) -> Self {
        let pairs = carrier.equality().complement();
        ApartnessRelation {
            carrier,
            pairs,
            tight: true,
        }
    }

    /// The empty apartness, valid on any carrier.
    pub fn empty_on(carrier: Arc<Carrier>) -> Self {
        let n = carrier.len();
        let tight = carrier.equality().count() == n * n;
        ApartnessRelation {
            carrier,
            pairs: BitMatrix::empty(n),
            tight,
        }
    }

    /// Skips validation; callers guarantee the axioms.
    pub(crate) fn trusted(carrier: Arc<Carrier>, pairs: BitMatrix) -> Self {
        let n = carrier.len();
        let tight = (0..n).all(|x| pairs.row(x) | carrier.class_mask(x) == full_mask(n));
        ApartnessRelation {
            carrier,
            pairs,
            tight,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn apart(&self, x: usize, y: usize) -> bool {
        self.pairs.get(x, y)
    }

    /// `{ y : x # y }`
    #[inline]
    pub fn row(&self, x: usize) -> u64 {
        self.pairs.row(x)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.pairs
    }

    pub fn is_tight(&self) -> bool {
        self.tight
    }

    /// Weak equality `≈`, the logical complement of `#`.
    pub fn weak_equality(&self) -> BitMatrix {
        self.pairs.complement()
    }

    pub fn report(&self) -> AxiomReport {
        validate_structure(&self.carrier, &self.pairs).expect("dimensions agree by construction")
    }

    /// `x ⋈ Y`: `x` is apart from every member of `Y`.
    #[inline]
    pub fn apart_from_all(&self, x: usize, members: u64) -> bool {
        members & !self.pairs.row(x) == 0
    }

    /// The set of ordered pairs `S × S` with componentwise equality and the
    /// product apartness `(s,t) # (u,v) ⇔ s # u ∨ t # v`. Pair `(x,y)` has
    /// index `x * n + y`.
    pub fn pair_structure(&self) -> Result<ApartnessRelation> {
        let n = self.len();
        let m = n * n;
        if m > crate::bits::MAX_ELEMENTS {
            return Err(Error::SizeBound {
                what: "pair carrier".into(),
                size: m,
                bound: crate::bits::MAX_ELEMENTS,
            });
        }
        let names: Vec<String> = pairs(n)
            .map(|[x, y]| self.carrier.render_tuple(&[x, y]))
            .collect();
        let mut eq = BitMatrix::empty(m);
        let mut ap = BitMatrix::empty(m);
        for [s, t] in pairs(n) {
            for [u, v] in pairs(n) {
                let (p, q) = (s * n + t, u * n + v);
                eq.set(p, q, self.carrier.equal(s, u) && self.carrier.equal(t, v));
                ap.set(p, q, self.apart(s, u) || self.apart(t, v));
            }
        }
        let carrier = Carrier::new(names, eq)?;
        Ok(ApartnessRelation::trusted(carrier, ap))
    }

    /// The a-complement of a singleton, `{ y : y # x }`.
    pub fn apart_from(&self, x: usize) -> u64 {
        self.pairs.row(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn c3_axioms_and_tightness_witness() {
        let c3 = fixtures::c3();
        let r = c3.report();
        assert!(r.accepted());
        assert!(!r.tight.holds);
        assert_eq!(r.tight.render_witness(c3.carrier()).unwrap(), "(a,b)");
    }

    #[test]
    fn singleton_empty_apartness_is_tight() {
        let c = Carrier::discrete(["x"]).unwrap();
        let r = validate_structure(&c, &BitMatrix::empty(1)).unwrap();
        assert!(r.accepted());
        assert!(r.tight.holds);
    }

    #[test]
    fn cotransitivity_witness_is_x_z_y() {
        let c = Carrier::discrete(["a", "b", "c"]).unwrap();
        let r = validate_structure_pairs(&c, &[("a", "c"), ("c", "a")]).unwrap();
        assert!(r.irreflexive.holds && r.symmetric.holds && r.extensional.holds);
        assert_eq!(r.cotransitive.render_witness(&c).unwrap(), "(a,c,b)");
        assert!(!r.accepted());
    }

    #[test]
    fn dimension_mismatch_and_unknown_identifier() {
        let c = Carrier::discrete(["a", "b"]).unwrap();
        assert_eq!(
            validate_structure(&c, &BitMatrix::empty(3)),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            validate_structure_pairs(&c, &[("a", "q")]),
            Err(Error::UnknownElement("q".into()))
        );
    }

    #[test]
    fn extensionality_witness_with_coarse_equality() {
        let c = Carrier::with_equal_pairs(vec!["a".into(), "b".into(), "c".into()], &[("a", "b")])
            .unwrap();
        // a # c but not b # c although a = b
        let r = validate_structure_pairs(&c, &[("a", "c"), ("c", "a")]).unwrap();
        assert!(!r.extensional.holds);
        assert_eq!(r.extensional.render_witness(&c).unwrap(), "(a,c,b,c)");
    }

    #[test]
    fn irreflexivity_is_up_to_equality() {
        let c = Carrier::with_equal_pairs(vec!["a".into(), "b".into()], &[("a", "b")]).unwrap();
        let err = ApartnessRelation::from_pairs(c, &[("a", "b")]).unwrap_err();
        assert_eq!(err, Error::axiom("Ap1", "(a,b)"));
    }

    #[test]
    fn pair_structure_uses_product_apartness() {
        let c3 = fixtures::c3();
        let p = c3.pair_structure().unwrap();
        assert_eq!(p.len(), 9);
        assert!(p.report().accepted());
        // (a,a) # (c,a) because a # c
        assert!(p.apart(0, 2 * 3));
        // (a,a) and (b,b) are not apart
        assert!(!p.apart(0, 4));
    }
}
