//! Distinguished subsets of a semigroup and the lemma on their
//! a-complements.

use crate::bits::has;
use crate::carrier::same_carrier;
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::verdict::{pairs, Verdict};

use super::{ideal_violation, SemigroupTable};

/// Subset flags evaluated from their defining formulas. Every witness is a
/// pair `(a,b)` of factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupSubsetClassification {
    /// `a, b ∈ T ⇒ ab ∈ T`
    pub subsemigroup: Verdict,
    /// `a ∈ T ∨ b ∈ T ⇒ ab ∈ T`
    pub ideal: Verdict,
    /// `ab ∈ T ⇒ a ∈ T ∧ b ∈ T`
    pub convex: Verdict,
    /// `ab ∈ T ⇒ a ∈ T ∨ b ∈ T`
    pub completely_isolated: Verdict,
    /// strongly detachable, witness `(x)`
    pub sd: Verdict,
}

impl SemigroupSubsetClassification {
    pub fn sd_convex(&self) -> bool {
        self.sd.holds && self.convex.holds
    }

    pub fn sd_ideal(&self) -> bool {
        self.sd.holds && self.ideal.holds
    }

    pub fn sd_completely_isolated_ideal(&self) -> bool {
        self.sd.holds && self.ideal.holds && self.completely_isolated.holds
    }

    pub fn flags(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("subsemigroup", &self.subsemigroup),
            ("ideal", &self.ideal),
            ("convex", &self.convex),
            ("completely_isolated", &self.completely_isolated),
            ("sd", &self.sd),
        ]
    }
}

pub(crate) fn classify_mask(sg: &SemigroupTable, t: u64) -> SemigroupSubsetClassification {
    let n = sg.len();
    let inside = |x: usize| has(t, x);
    let subsemigroup = Verdict::from_violation(
        pairs(n).find(|&[a, b]| inside(a) && inside(b) && !inside(sg.mul(a, b))),
    );
    let convex = Verdict::from_violation(
        pairs(n).find(|&[a, b]| inside(sg.mul(a, b)) && !(inside(a) && inside(b))),
    );
    let completely_isolated = Verdict::from_violation(
        pairs(n).find(|&[a, b]| inside(sg.mul(a, b)) && !inside(a) && !inside(b)),
    );
    let ap = sg.apartness();
    let comp = ap.a_complement_mask(t);
    let sd = Verdict::from_violation((0..n).find(|&x| !has(t | comp, x)).map(|x| [x]));
    SemigroupSubsetClassification {
        subsemigroup,
        ideal: Verdict::from_violation(ideal_violation(sg, t)),
        convex,
        completely_isolated,
        sd,
    }
}

impl SemigroupTable {
    pub fn classify_subset(&self, t: &Subset) -> Result<SemigroupSubsetClassification> {
        if !same_carrier(self.carrier(), t.carrier()) {
            return Err(Error::CarrierMismatch);
        }
        Ok(classify_mask(self, t.mask()))
    }
}

/// Outcome of one branch of the complement lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaBranch {
    /// The hypothesis on `T` does not hold; the reason names the failing
    /// property.
    NotApplicable(String),
    /// Hypothesis holds but `∼T` is empty, so there is nothing to conclude.
    VacuousPremise,
    /// Hypothesis holds and the conclusion was evaluated.
    Checked(Verdict),
}

impl LemmaBranch {
    /// False only when the hypotheses hold and the conclusion fails.
    pub fn consistent(&self) -> bool {
        !matches!(self, LemmaBranch::Checked(v) if !v.holds)
    }
}

/// The two branches: for sd-convex `T` with inhabited `∼T`, `∼T` is an
/// ideal; for an sd-completely-isolated ideal `T`, `∼T` is a convex
/// subsemigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementLemmaReport {
    pub a_complement: Subset,
    pub convex_branch: LemmaBranch,
    pub ideal_branch: LemmaBranch,
}

pub fn complement_lemma_check(sg: &SemigroupTable, t: &Subset) -> Result<ComplementLemmaReport> {
    let k = sg.classify_subset(t)?;
    let comp = sg.apartness().a_complement_mask(t.mask());
    let ck = classify_mask(sg, comp);

    let convex_branch = if !k.sd.holds {
        LemmaBranch::NotApplicable("not sd".into())
    } else if !k.convex.holds {
        LemmaBranch::NotApplicable("not convex".into())
    } else if comp == 0 {
        LemmaBranch::VacuousPremise
    } else {
        LemmaBranch::Checked(ck.ideal.clone())
    };

    let ideal_branch = if !k.sd.holds {
        LemmaBranch::NotApplicable("not sd".into())
    } else if !k.ideal.holds {
        LemmaBranch::NotApplicable("not an ideal".into())
    } else if !k.completely_isolated.holds {
        LemmaBranch::NotApplicable("not completely isolated".into())
    } else if !ck.subsemigroup.holds {
        LemmaBranch::Checked(ck.subsemigroup.clone())
    } else {
        LemmaBranch::Checked(ck.convex.clone())
    };

    Ok(ComplementLemmaReport {
        a_complement: t.with_mask(comp),
        convex_branch,
        ideal_branch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn subset(sg: &SemigroupTable, names: &[&str]) -> Subset {
        Subset::from_names(sg.carrier().clone(), names).unwrap()
    }

    #[test]
    fn sl3_singleton_a() {
        let sg = fixtures::sl3();
        let k = sg.classify_subset(&subset(&sg, &["a"])).unwrap();
        assert!(k.convex.holds);
        assert!(k.subsemigroup.holds);
        assert!(!k.ideal.holds);
        // the only product landing in {a} is a·a, and a ∈ {a}
        assert!(k.completely_isolated.holds);
        assert!(k.sd.holds);
    }

    #[test]
    fn sl3_singleton_c() {
        let sg = fixtures::sl3();
        let k = sg.classify_subset(&subset(&sg, &["c"])).unwrap();
        assert!(k.ideal.holds);
        assert!(!k.completely_isolated.holds);
        assert_eq!(k.completely_isolated.render_witness(sg.carrier()).unwrap(), "(a,b)");
        assert!(!k.convex.holds);
    }

    #[test]
    fn full_carrier_has_every_flag() {
        let sg = fixtures::sg5();
        let k = sg.classify_subset(&subset(&sg, &["a", "b", "c", "d", "e"])).unwrap();
        assert!(k.flags().iter().all(|(_, v)| v.holds));
    }

    #[test]
    fn complement_lemma_on_sl3() {
        let sg = fixtures::sl3();
        let r = complement_lemma_check(&sg, &subset(&sg, &["a"])).unwrap();
        assert_eq!(r.a_complement.names(), ["b", "c"]);
        assert_eq!(r.convex_branch, LemmaBranch::Checked(Verdict::HOLDS));
        assert_eq!(r.ideal_branch, LemmaBranch::NotApplicable("not an ideal".into()));

        let r = complement_lemma_check(&sg, &subset(&sg, &["c"])).unwrap();
        assert_eq!(
            r.ideal_branch,
            LemmaBranch::NotApplicable("not completely isolated".into())
        );
    }

    #[test]
    fn complement_lemma_with_empty_complement() {
        let sg = fixtures::sl3();
        let r = complement_lemma_check(&sg, &subset(&sg, &["a", "b", "c"])).unwrap();
        assert_eq!(r.convex_branch, LemmaBranch::VacuousPremise);
        // S is a completely isolated ideal; ∼S = ∅ is vacuously a convex
        // subsemigroup
        assert_eq!(r.ideal_branch, LemmaBranch::Checked(Verdict::HOLDS));
    }
}
