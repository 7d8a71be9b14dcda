//! Quotients `S/ε` carrying the apartness `[x] # [y] ⇔ (x,y) ∈ κ` for an
//! equivalence `ε` and a co-equivalence `κ` with `ε ∩ κ = ∅`.

use crate::apartness::ApartnessRelation;
use crate::bits::{has, ones, BitMatrix};
use crate::carrier::{same_carrier, Carrier};
use crate::error::{Error, Result};
use crate::morphism::{analyze_mapping, Mapping};
use crate::relation::{reflexive, symmetric, transitive, BinaryRelation, RelationClassification};
use crate::semigroup::SemigroupTable;
use crate::verdict::{pairs, quads, Verdict};

/// Verdicts of [`check_defines_apartness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinesApartness {
    /// `ε ∩ κ = ∅`, witness: first common pair `(x,y)`.
    pub disjoint: Verdict,
    /// Representative independence: `x ε a ∧ y ε b ⇒ ((x,y) ∈ κ ⇔ (a,b) ∈ κ)`,
    /// witness `(x,y,a,b)`. Only evaluated when `disjoint` holds.
    pub representative_independent: Option<Verdict>,
}

impl DefinesApartness {
    pub fn holds(&self) -> bool {
        self.disjoint.holds
            && self
                .representative_independent
                .as_ref()
                .is_some_and(|v| v.holds)
    }
}

fn require(what: &str, v: &Verdict, c: &Carrier) -> Result<()> {
    match &v.witness {
        Some(w) => Err(Error::precondition(what, w.render(c))),
        None if !v.holds => Err(Error::precondition(what, "()")),
        None => Ok(()),
    }
}

/// Reflexivity, symmetry and transitivity of `m` as a single verdict.
pub(crate) fn equivalence_verdict(m: &BitMatrix) -> Verdict {
    [reflexive(m), symmetric(m), transitive(m)]
        .into_iter()
        .find(|v| !v.holds)
        .unwrap_or(Verdict::HOLDS)
}

fn check_same(ap: &ApartnessRelation, r: &BinaryRelation) -> Result<()> {
    if same_carrier(ap.carrier(), r.carrier()) {
        Ok(())
    } else {
        Err(Error::CarrierMismatch)
    }
}

impl ApartnessRelation {
    /// Whether `κ` defines an apartness on `S/ε`.
    pub fn check_defines_apartness(
        &self,
        epsilon: &BinaryRelation,
        kappa: &BinaryRelation,
    ) -> Result<DefinesApartness> {
        check_same(self, epsilon)?;
        check_same(self, kappa)?;
        let c = self.carrier();
        require("epsilon is not an equivalence", &equivalence_verdict(epsilon.matrix()), c)?;
        let k = self.classify_matrix(kappa.matrix());
        require("kappa is not a co-equivalence", &k.co_equivalence, c)?;
        Ok(defines_apartness(epsilon.matrix(), kappa.matrix()))
    }
}

pub(crate) fn defines_apartness(e: &BitMatrix, k: &BitMatrix) -> DefinesApartness {
    let disjoint = Verdict::from_violation(e.intersection(k).pairs().next().map(|(x, y)| [x, y]));
    let representative_independent = disjoint.holds.then(|| {
        Verdict::from_violation(quads(e.dim()).find(|&[x, y, a, b]| {
            e.get(x, a) && e.get(y, b) && k.get(x, y) != k.get(a, b)
        }))
    });
    DefinesApartness {
        disjoint,
        representative_independent,
    }
}

/// Co-equivalence flags plus co-compatibility
/// `(ax,by) ∈ κ ⇒ (a,b) ∈ κ ∨ (x,y) ∈ κ`, witness `(a,b,x,y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocongruenceReport {
    pub classification: RelationClassification,
    pub co_compatible: Verdict,
    pub co_congruence: Verdict,
}

pub fn check_cocongruence(sg: &SemigroupTable, kappa: &BinaryRelation) -> Result<CocongruenceReport> {
    check_same(sg.apartness(), kappa)?;
    Ok(cocongruence(sg, kappa.matrix()))
}

pub(crate) fn co_compatible(sg: &SemigroupTable, k: &BitMatrix) -> Verdict {
    Verdict::from_violation(quads(sg.len()).find(|&[a, b, x, y]| {
        k.get(sg.mul(a, x), sg.mul(b, y)) && !k.get(a, b) && !k.get(x, y)
    }))
}

pub(crate) fn cocongruence(sg: &SemigroupTable, k: &BitMatrix) -> CocongruenceReport {
    let classification = sg.apartness().classify_matrix(k);
    let co_compatible = co_compatible(sg, k);
    let co_congruence = if classification.co_equivalence.holds {
        co_compatible.clone()
    } else {
        classification.co_equivalence.clone()
    };
    CocongruenceReport {
        classification,
        co_compatible,
        co_congruence,
    }
}

/// `x ε y ∧ u ε v ⇒ xu ε yv`, witness `(x,y,u,v)`.
pub(crate) fn compatible(sg: &SemigroupTable, e: &BitMatrix) -> Verdict {
    Verdict::from_violation(quads(sg.len()).find(|&[x, y, u, v]| {
        e.get(x, y) && e.get(u, v) && !e.get(sg.mul(x, u), sg.mul(y, v))
    }))
}

/// The quotient structure together with the projection and the checks run
/// while building it.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    base: ApartnessRelation,
    epsilon: BinaryRelation,
    kappa: BinaryRelation,
    classes: Vec<u64>,
    class_of: Vec<usize>,
    quotient: ApartnessRelation,
    table: Option<SemigroupTable>,
    projection: Mapping,
    checks: Vec<(String, Verdict)>,
}

impl QuotientPresentation {
    pub fn base(&self) -> &ApartnessRelation {
        &self.base
    }

    pub fn epsilon(&self) -> &BinaryRelation {
        &self.epsilon
    }

    pub fn kappa(&self) -> &BinaryRelation {
        &self.kappa
    }

    /// Class masks over the base carrier, ordered by least member.
    pub fn classes(&self) -> &[u64] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Least member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.trailing_zeros() as usize).collect()
    }

    pub fn quotient(&self) -> &ApartnessRelation {
        &self.quotient
    }

    pub fn table(&self) -> Option<&SemigroupTable> {
        self.table.as_ref()
    }

    pub fn projection(&self) -> &Mapping {
        &self.projection
    }

    pub fn checks(&self) -> &[(String, Verdict)] {
        &self.checks
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.holds)
    }
}

/// Builds `S/ε` with the apartness induced by `κ`. With a table, `ε` must be
/// compatible and `κ` a co-congruence; the quotient then carries
/// `[x][y] = [xy]`.
pub fn build_quotient(
    base: &ApartnessRelation,
    epsilon: &BinaryRelation,
    kappa: &BinaryRelation,
    table: Option<&SemigroupTable>,
) -> Result<QuotientPresentation> {
    let d = base.check_defines_apartness(epsilon, kappa)?;
    let c = base.carrier();
    require("epsilon and kappa intersect", &d.disjoint, c)?;
    let indep = d.representative_independent.expect("evaluated when disjoint");
    if let Some(sg) = table {
        if !same_carrier(sg.carrier(), c) {
            return Err(Error::CarrierMismatch);
        }
        require("epsilon is not compatible", &compatible(sg, epsilon.matrix()), c)?;
        require(
            "kappa is not a co-congruence",
            &cocongruence(sg, kappa.matrix()).co_congruence,
            c,
        )?;
    }
    let mut checks = vec![("representative independence".to_string(), indep)];

    let e = epsilon.matrix();
    let n = base.len();
    let mut classes = Vec::new();
    let mut class_of = vec![0; n];
    let mut seen = 0u64;
    for x in 0..n {
        if !has(seen, x) {
            let cls = e.row(x);
            for y in ones(cls) {
                class_of[y] = classes.len();
            }
            seen |= cls;
            classes.push(cls);
        }
    }
    let reps: Vec<usize> = classes.iter().map(|c| c.trailing_zeros() as usize).collect();
    let names: Vec<String> = reps.iter().map(|&r| format!("[{}]", c.name(r))).collect();
    let m = classes.len();
    let qc = Carrier::discrete(names)?;
    let mut qa = BitMatrix::empty(m);
    for [i, j] in pairs(m) {
        qa.set(i, j, kappa.contains(reps[i], reps[j]));
    }
    let quotient = ApartnessRelation::new(qc, qa)?;

    let qtable = match table {
        Some(sg) => {
            let well_defined = Verdict::from_violation(pairs(n).find_map(|[x, y]| {
                let want = class_of[sg.mul(reps[class_of[x]], reps[class_of[y]])];
                (class_of[sg.mul(x, y)] != want).then_some([x, y])
            }));
            checks.push(("quotient product well-defined".into(), well_defined));
            let entries: Vec<usize> = pairs(m)
                .map(|[i, j]| class_of[sg.mul(reps[i], reps[j])])
                .collect();
            Some(SemigroupTable::new(quotient.clone(), entries)?)
        }
        None => None,
    };

    let projection = Mapping::new(base.clone(), quotient.clone(), class_of.clone())?;
    let pa = analyze_mapping(&projection);
    checks.push(("projection onto".into(), pa.onto.clone()));
    checks.push(("projection strongly extensional".into(), pa.strongly_extensional.clone()));
    if let (Some(sg), Some(qt)) = (table, qtable.as_ref()) {
        checks.push(("projection homomorphism".into(), projection.homomorphism(sg, qt)?));
    }

    Ok(QuotientPresentation {
        base: base.clone(),
        epsilon: epsilon.clone(),
        kappa: kappa.clone(),
        classes,
        class_of,
        quotient,
        table: qtable,
        projection,
        checks,
    })
}

/// `S/∼κ` for a co-equivalence (co-congruence with a table) `κ`. Also checks
/// that `∼κ = ¬κ` and that `∼κ` is an equivalence (congruence).
pub fn coequivalence_quotient(
    base: &ApartnessRelation,
    kappa: &BinaryRelation,
    table: Option<&SemigroupTable>,
) -> Result<QuotientPresentation> {
    check_same(base, kappa)?;
    let c = base.carrier();
    let k = base.classify_matrix(kappa.matrix());
    require("kappa is not a co-equivalence", &k.co_equivalence, c)?;
    if let Some(sg) = table {
        require(
            "kappa is not a co-congruence",
            &cocongruence(sg, kappa.matrix()).co_congruence,
            c,
        )?;
    }
    let eps = base.a_complement_relation(kappa)?;
    let logical = kappa.logical_complement();
    let same = Verdict::from_violation(
        eps.matrix()
            .union(logical.matrix())
            .difference(&eps.matrix().intersection(logical.matrix()))
            .pairs()
            .next()
            .map(|(x, y)| [x, y]),
    );
    let equivalence = equivalence_verdict(eps.matrix());
    let congruence = table.map(|sg| compatible(sg, eps.matrix()));
    let mut q = build_quotient(base, &eps, kappa, table)?;
    let mut pre = vec![
        ("a-complement equals logical complement".to_string(), same),
        ("a-complement is an equivalence".to_string(), equivalence),
    ];
    if let Some(v) = congruence {
        pre.push(("a-complement is a congruence".to_string(), v));
    }
    pre.append(&mut q.checks);
    q.checks = pre;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn as_relation(ap: &ApartnessRelation, m: &BitMatrix) -> BinaryRelation {
        BinaryRelation::new(ap.carrier().clone(), m.clone()).unwrap()
    }

    #[test]
    fn c5_weak_equality_and_apartness() {
        let c5 = fixtures::c5();
        let eps = as_relation(&c5, &c5.weak_equality());
        let kappa = as_relation(&c5, c5.matrix());
        let d = c5.check_defines_apartness(&eps, &kappa).unwrap();
        assert!(d.holds());
    }

    #[test]
    fn equality_is_disjoint_from_any_coequivalence() {
        let c3 = fixtures::c3();
        let eps = BinaryRelation::equality(c3.carrier().clone());
        let kappa = as_relation(&c3, c3.matrix());
        assert!(c3.check_defines_apartness(&eps, &kappa).unwrap().holds());
    }

    #[test]
    fn full_epsilon_meets_kappa() {
        let c3 = fixtures::c3();
        let eps = BinaryRelation::full(c3.carrier().clone());
        let kappa = as_relation(&c3, c3.matrix());
        let d = c3.check_defines_apartness(&eps, &kappa).unwrap();
        assert_eq!(d.disjoint.render_witness(c3.carrier()).unwrap(), "(a,c)");
        assert!(d.representative_independent.is_none());
        assert!(matches!(
            build_quotient(&c3, &eps, &kappa, None),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn sg5_kappa_is_a_cocongruence() {
        let sg = fixtures::sg5();
        let kappa = as_relation(sg.apartness(), sg.apartness().matrix());
        let r = check_cocongruence(&sg, &kappa).unwrap();
        assert!(r.co_congruence.holds);
        let empty = BinaryRelation::empty(sg.carrier().clone());
        assert!(check_cocongruence(&sg, &empty).unwrap().co_congruence.holds);
    }

    #[test]
    fn sl3_two_pair_kappa_is_not_cotransitive() {
        let sg = fixtures::sl3();
        let kappa =
            BinaryRelation::from_names(sg.carrier().clone(), &[("a", "b"), ("b", "a")]).unwrap();
        let r = check_cocongruence(&sg, &kappa).unwrap();
        assert!(!r.co_congruence.holds);
        assert_eq!(
            r.classification.cotransitive.render_witness(sg.carrier()).unwrap(),
            "(a,b,c)"
        );
    }

    #[test]
    fn sg5_quotient_is_a_four_element_semigroup() {
        let sg = fixtures::sg5();
        let ap = sg.apartness();
        let eps = as_relation(ap, &ap.weak_equality());
        let kappa = as_relation(ap, ap.matrix());
        let q = build_quotient(ap, &eps, &kappa, Some(&sg)).unwrap();
        assert!(q.holds(), "{:?}", q.checks());
        assert_eq!(q.quotient().carrier().names(), ["[a]", "[c]", "[d]", "[e]"]);
        let qt = q.table().unwrap();
        assert!(qt.report().accepted());
        assert!(q.quotient().is_tight());
        let pa = analyze_mapping(q.projection());
        assert!(pa.onto.holds && pa.strongly_extensional.holds && !pa.one_one.holds);
    }

    #[test]
    fn identity_quotient_reproduces_the_base_report() {
        let c3 = fixtures::c3();
        let eps = BinaryRelation::equality(c3.carrier().clone());
        let kappa = as_relation(&c3, c3.matrix());
        let q = build_quotient(&c3, &eps, &kappa, None).unwrap();
        assert_eq!(q.quotient().report(), c3.report());
    }

    #[test]
    fn c3_coequivalence_quotient() {
        let c3 = fixtures::c3();
        let kappa = as_relation(&c3, c3.matrix());
        let q = coequivalence_quotient(&c3, &kappa, None).unwrap();
        assert!(q.holds());
        assert_eq!(q.classes(), [0b011, 0b100]);
        assert!(q.quotient().apart(0, 1));
    }

    #[test]
    fn empty_kappa_gives_one_class() {
        let c3 = fixtures::c3();
        let q = coequivalence_quotient(&c3, &BinaryRelation::empty(c3.carrier().clone()), None)
            .unwrap();
        assert_eq!(q.quotient().len(), 1);
        assert!(q.quotient().matrix().is_empty());
    }

    #[test]
    fn sg5_coequivalence_quotient_matches_build() {
        let sg = fixtures::sg5();
        let ap = sg.apartness();
        let kappa = as_relation(ap, ap.matrix());
        let q = coequivalence_quotient(ap, &kappa, Some(&sg)).unwrap();
        assert!(q.holds());
        assert_eq!(q.quotient().len(), 4);
    }
}
