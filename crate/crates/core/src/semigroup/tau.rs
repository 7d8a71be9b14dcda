//! Co-quasiorders on semigroups: complement positivity, the two
//! cm-properties and the theorems relating them to the classes `aτ`, `τa`.

use crate::bits::BitMatrix;
use crate::carrier::same_carrier;
use crate::error::{Error, Result};
use crate::relation::{product_relation, BinaryRelation};
use crate::subset::Subset;
use crate::verdict::{pairs, triples, Verdict};

use super::subsets::classify_mask;
use super::SemigroupTable;

/// Witnesses: `(a,b)` for complement positivity, `(a,b,c)` for both
/// cm-properties. For the complement cm-property the pairs involved are
/// `(a,c)` and `(b,c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauPropertyReport {
    /// `(a,ab), (a,ba) ∈ ∼τ`
    pub complement_positive: Verdict,
    /// `(ab,c) ∈ τ ⇒ (a,c) ∈ τ ∨ (b,c) ∈ τ`
    pub constructive_cm: Verdict,
    /// `(a,c), (b,c) ∈ ∼τ ⇒ (ab,c) ∈ ∼τ`
    pub complement_cm: Verdict,
}

impl TauPropertyReport {
    pub fn flags(&self) -> [(&'static str, &Verdict); 3] {
        [
            ("complement_positive", &self.complement_positive),
            ("constructive_cm", &self.constructive_cm),
            ("complement_cm", &self.complement_cm),
        ]
    }
}

impl SemigroupTable {
    fn check_coquasiorder(&self, tau: &BinaryRelation) -> Result<()> {
        if !same_carrier(self.carrier(), tau.carrier()) {
            return Err(Error::CarrierMismatch);
        }
        let k = self.apartness().classify_matrix(tau.matrix());
        match &k.co_quasiorder.witness {
            Some(w) => Err(Error::precondition(
                "relation is not a co-quasiorder",
                w.render(self.carrier()),
            )),
            None => Ok(()),
        }
    }

    pub fn check_tau_properties(&self, tau: &BinaryRelation) -> Result<TauPropertyReport> {
        self.check_coquasiorder(tau)?;
        let comp = self.apartness().a_complement_matrix(tau.matrix());
        Ok(tau_properties(self, tau.matrix(), &comp))
    }

    /// Evaluates the theorems on complement positive co-quasiorders.
    pub fn verify_positive_theorems(&self, tau: &BinaryRelation) -> Result<PositiveTheoremReport> {
        self.check_coquasiorder(tau)?;
        Ok(positive_theorems(self, tau.matrix()))
    }
}

pub(crate) fn tau_properties(sg: &SemigroupTable, t: &BitMatrix, comp: &BitMatrix) -> TauPropertyReport {
    let n = sg.len();
    let complement_positive = Verdict::from_violation(pairs(n).find(|&[a, b]| {
        !comp.get(a, sg.mul(a, b)) || !comp.get(a, sg.mul(b, a))
    }));
    let constructive_cm = Verdict::from_violation(triples(n).find(|&[a, b, c]| {
        t.get(sg.mul(a, b), c) && !t.get(a, c) && !t.get(b, c)
    }));
    let complement_cm = Verdict::from_violation(triples(n).find(|&[a, b, c]| {
        comp.get(a, c) && comp.get(b, c) && !comp.get(sg.mul(a, b), c)
    }));
    TauPropertyReport {
        complement_positive,
        constructive_cm,
        complement_cm,
    }
}

/// Which construction of a complement positive co-quasiorder to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositiveVariant {
    /// `K` sd-convex: `(a,b) ∈ τ ⇔ a ∈ ∼K ∧ b ∈ K`
    Convex,
    /// `J` sd-ideal with `∼J` inhabited: `(a,b) ∈ τ ⇔ a ∈ J ∧ b ∈ ∼J`
    Ideal,
}

pub fn positive_coquasiorder_from_subset(
    sg: &SemigroupTable,
    t: &Subset,
    variant: PositiveVariant,
) -> Result<BinaryRelation> {
    let k = sg.classify_subset(t)?;
    let c = sg.carrier();
    let gate = |name: &str, v: &Verdict| -> Result<()> {
        match &v.witness {
            Some(w) => Err(Error::precondition(
                format!("subset {t} is not {name}"),
                w.render(c),
            )),
            None => Ok(()),
        }
    };
    gate("strongly detachable", &k.sd)?;
    let comp = sg.apartness().a_complement_mask(t.mask());
    match variant {
        PositiveVariant::Convex => {
            gate("convex", &k.convex)?;
            Ok(product_relation(c.clone(), comp, t.mask()))
        }
        PositiveVariant::Ideal => {
            gate("an ideal", &k.ideal)?;
            if comp == 0 {
                return Err(Error::precondition(
                    format!("subset {t} is not proper: its a-complement is empty"),
                    "()",
                ));
            }
            Ok(product_relation(c.clone(), t.mask(), comp))
        }
    }
}

/// Per-theorem verdicts. Each `consistent` flag is false exactly when
/// conditions that should be equivalent disagree, which would indicate a
/// kernel bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveTheoremReport {
    pub properties: TauPropertyReport,
    /// complement positive ⇒ `τ(ab) ⊆ τa ∩ τb`, witness `(a,b)`
    pub t1: Verdict,
    /// (i) complement positive, (ii) `aτ ∪ bτ ⊆ (ab)τ`,
    /// (iii) `τ(ab) ⊆ τa ∩ τb`, (iv) `aτ` sd-convex with `a ⋈ aτ`,
    /// (v) `τa` sd-ideal with `a ⋈ τa`
    pub t2: [Verdict; 5],
    pub t2_consistent: bool,
    /// (i) constructive cm, (ii) `(ab)τ = aτ ∪ bτ`,
    /// (iii) `τa` sd-completely-isolated ideal with `a ⋈ τa`.
    /// Their agreement is only required under complement positivity.
    pub t3: [Verdict; 3],
    pub t3_consistent: bool,
    /// complement positive ∧ constructive cm ⇒ complement cm
    pub t4: Verdict,
}

impl PositiveTheoremReport {
    pub fn holds(&self) -> bool {
        self.t1.holds && self.t2_consistent && self.t3_consistent && self.t4.holds
    }
}

fn all_agree(vs: &[Verdict]) -> bool {
    vs.iter().all(|v| v.holds == vs[0].holds)
}

pub(crate) fn positive_theorems(sg: &SemigroupTable, t: &BitMatrix) -> PositiveTheoremReport {
    let n = sg.len();
    let ap = sg.apartness();
    let comp = ap.a_complement_matrix(t);
    let props = tau_properties(sg, t, &comp);
    let cols = t.transpose();
    let left = |a: usize| t.row(a);
    let right = |a: usize| cols.row(a);
    let cp = props.complement_positive.holds;

    // τ(ab) ⊆ τa ∩ τb
    let right_shrinks = Verdict::from_violation(pairs(n).find(|&[a, b]| {
        right(sg.mul(a, b)) & !(right(a) & right(b)) != 0
    }));
    // aτ ∪ bτ ⊆ (ab)τ
    let left_grows = Verdict::from_violation(pairs(n).find(|&[a, b]| {
        (left(a) | left(b)) & !left(sg.mul(a, b)) != 0
    }));
    let left_convex = Verdict::from_violation((0..n).find(|&a| {
        let k = classify_mask(sg, left(a));
        !(k.sd_convex() && ap.apart_from_all(a, left(a)))
    }).map(|a| [a]));
    let right_ideal = Verdict::from_violation((0..n).find(|&a| {
        let k = classify_mask(sg, right(a));
        !(k.sd_ideal() && ap.apart_from_all(a, right(a)))
    }).map(|a| [a]));
    let t1 = if cp { right_shrinks.clone() } else { Verdict::HOLDS };
    let t2 = [
        props.complement_positive.clone(),
        left_grows,
        right_shrinks,
        left_convex,
        right_ideal,
    ];

    let left_union = Verdict::from_violation(pairs(n).find(|&[a, b]| {
        left(sg.mul(a, b)) != left(a) | left(b)
    }));
    let right_ci_ideal = Verdict::from_violation((0..n).find(|&a| {
        let k = classify_mask(sg, right(a));
        !(k.sd_completely_isolated_ideal() && ap.apart_from_all(a, right(a)))
    }).map(|a| [a]));
    let t3 = [props.constructive_cm.clone(), left_union, right_ci_ideal];

    let t4 = if cp && props.constructive_cm.holds {
        props.complement_cm.clone()
    } else {
        Verdict::HOLDS
    };

    PositiveTheoremReport {
        t2_consistent: all_agree(&t2),
        t3_consistent: !cp || all_agree(&t3),
        properties: props,
        t1,
        t2,
        t3,
        t4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sg5_tau5_is_not_complement_positive() {
        let sg = fixtures::sg5();
        let tau = fixtures::tau5(sg.apartness());
        let r = sg.check_tau_properties(&tau).unwrap();
        assert!(!r.complement_positive.holds);
        assert_eq!(r.complement_positive.render_witness(sg.carrier()).unwrap(), "(e,a)");
        assert_eq!(sg.mul(4, 0), 3);
    }

    #[test]
    fn sl3_tau3_properties() {
        let sg = fixtures::sl3();
        let tau = fixtures::tau3(&sg);
        let r = sg.check_tau_properties(&tau).unwrap();
        let c = sg.carrier();
        assert!(r.complement_positive.holds);
        assert_eq!(r.constructive_cm.render_witness(c).unwrap(), "(a,b,a)");
        assert_eq!(r.complement_cm.render_witness(c).unwrap(), "(a,b,a)");
    }

    #[test]
    fn empty_tau_has_every_property() {
        let sg = fixtures::sl3();
        let tau = BinaryRelation::empty(sg.carrier().clone());
        let r = sg.check_tau_properties(&tau).unwrap();
        assert!(r.flags().iter().all(|(_, v)| v.holds));
        assert!(sg.verify_positive_theorems(&tau).unwrap().holds());
    }

    #[test]
    fn non_coquasiorder_is_rejected() {
        let sg = fixtures::sl3();
        let eq = BinaryRelation::equality(sg.carrier().clone());
        assert!(matches!(
            sg.check_tau_properties(&eq),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn positive_constructions_on_sl3() {
        let sg = fixtures::sl3();
        let c = sg.carrier().clone();
        let a = Subset::from_names(c.clone(), &["a"]).unwrap();
        let tau = positive_coquasiorder_from_subset(&sg, &a, PositiveVariant::Convex).unwrap();
        assert_eq!(tau, BinaryRelation::from_names(c.clone(), &[("b", "a"), ("c", "a")]).unwrap());
        assert!(sg.check_tau_properties(&tau).unwrap().complement_positive.holds);

        let cc = Subset::from_names(c.clone(), &["c"]).unwrap();
        let tau = positive_coquasiorder_from_subset(&sg, &cc, PositiveVariant::Ideal).unwrap();
        assert_eq!(tau, BinaryRelation::from_names(c.clone(), &[("c", "a"), ("c", "b")]).unwrap());
        assert!(sg.check_tau_properties(&tau).unwrap().complement_positive.holds);

        match positive_coquasiorder_from_subset(&sg, &cc, PositiveVariant::Convex) {
            Err(Error::Precondition { witness, .. }) => assert_eq!(witness, "(a,b)"),
            other => panic!("unexpected {other:?}"),
        }
        let full = Subset::full(c);
        assert!(positive_coquasiorder_from_subset(&sg, &full, PositiveVariant::Ideal).is_err());
    }

    #[test]
    fn sl3_tau3_theorems() {
        let sg = fixtures::sl3();
        let r = sg.verify_positive_theorems(&fixtures::tau3(&sg)).unwrap();
        assert!(r.holds());
        assert!(r.t2.iter().all(|v| v.holds));
        assert!(r.t3.iter().all(|v| !v.holds));
        assert_eq!(fixtures::tau3(&sg).right_class(0).names(), ["c"]);
    }
}
