//! Mappings between sets with apartness, their kernels and co-kernels, and
//! the two isomorphism theorems.

use crate::apartness::ApartnessRelation;
use crate::bits::{has, BitMatrix};
use crate::carrier::same_carrier;
use crate::error::{Error, Result};
use crate::quotient::{build_quotient, QuotientPresentation};
use crate::relation::BinaryRelation;
use crate::semigroup::SemigroupTable;
use crate::verdict::{pairs, Verdict};

/// An extensional function `f : S → T`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mapping {
    dom: ApartnessRelation,
    cod: ApartnessRelation,
    graph: Vec<usize>,
}

impl std::fmt::Debug for Mapping {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .graph
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}↦{}", self.dom.carrier().name(x), self.cod.carrier().name(y)))
            .collect();
        write!(f, "Mapping[{}]", parts.join(", "))
    }
}

impl Mapping {
    pub fn new(dom: ApartnessRelation, cod: ApartnessRelation, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != dom.len() {
            return Err(Error::DimensionMismatch {
                expected: dom.len(),
                found: graph.len(),
            });
        }
        if let Some(&bad) = graph.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        let dc = dom.carrier();
        if let Some([x, y]) = pairs(dom.len())
            .find(|&[x, y]| dc.equal(x, y) && !cod.carrier().equal(graph[x], graph[y]))
        {
            return Err(Error::axiom(
                "mapping extensionality",
                dc.render_tuple(&[x, y]),
            ));
        }
        Ok(Mapping { dom, cod, graph })
    }

    /// Builds a mapping from `(x, f(x))` identifier pairs; every domain
    /// element must be assigned.
    pub fn from_names<A: AsRef<str>, B: AsRef<str>>(
        dom: ApartnessRelation,
        cod: ApartnessRelation,
        assignments: &[(A, B)],
    ) -> Result<Self> {
        let mut graph = vec![usize::MAX; dom.len()];
        for (x, y) in assignments {
            let i = dom.carrier().index_of(x.as_ref())?;
            graph[i] = cod.carrier().index_of(y.as_ref())?;
        }
        if let Some(x) = graph.iter().position(|&y| y == usize::MAX) {
            return Err(Error::precondition(
                "mapping is not total",
                dom.carrier().render_tuple(&[x]),
            ));
        }
        Self::new(dom, cod, graph)
    }

    pub fn identity(s: &ApartnessRelation) -> Self {
        Mapping {
            dom: s.clone(),
            cod: s.clone(),
            graph: (0..s.len()).collect(),
        }
    }

    pub fn dom(&self) -> &ApartnessRelation {
        &self.dom
    }

    pub fn cod(&self) -> &ApartnessRelation {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// `ker f = { (x,y) : f(x) = f(y) }`
    pub fn kernel(&self) -> BinaryRelation {
        let n = self.dom.len();
        let cc = self.cod.carrier();
        let mut m = BitMatrix::empty(n);
        for [x, y] in pairs(n) {
            m.set(x, y, cc.equal(self.graph[x], self.graph[y]));
        }
        BinaryRelation::closed(self.dom.carrier().clone(), m)
    }

    /// `coker f = { (x,y) : f(x) # f(y) }`
    pub fn cokernel(&self) -> BinaryRelation {
        let n = self.dom.len();
        let mut m = BitMatrix::empty(n);
        for [x, y] in pairs(n) {
            m.set(x, y, self.cod.apart(self.graph[x], self.graph[y]));
        }
        BinaryRelation::closed(self.dom.carrier().clone(), m)
    }

    /// `f(xy) = f(x) f(y)`, witness `(x,y)`.
    pub fn homomorphism(&self, dom: &SemigroupTable, cod: &SemigroupTable) -> Result<Verdict> {
        if !same_carrier(dom.carrier(), self.dom.carrier())
            || !same_carrier(cod.carrier(), self.cod.carrier())
        {
            return Err(Error::CarrierMismatch);
        }
        let cc = self.cod.carrier();
        Ok(Verdict::from_violation(pairs(self.dom.len()).find(|&[x, y]| {
            !cc.equal(
                self.graph[dom.mul(x, y)],
                cod.mul(self.graph[x], self.graph[y]),
            )
        })))
    }
}

/// Properties of a mapping. Witnesses: `(y)` for onto (a codomain element
/// not hit), `(x,y)` for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingAnalysis {
    pub onto: Verdict,
    /// `f(x) = f(y) ⇒ x = y`
    pub one_one: Verdict,
    /// `f(x) # f(y) ⇒ x # y`
    pub strongly_extensional: Verdict,
    /// `x # y ⇒ f(x) # f(y)`
    pub a_injective: Verdict,
    /// onto, one-one, a-injective and se
    pub apartness_bijection: Verdict,
    pub kernel: BinaryRelation,
    pub cokernel: BinaryRelation,
}

impl MappingAnalysis {
    pub fn flags(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("onto", &self.onto),
            ("one_one", &self.one_one),
            ("strongly_extensional", &self.strongly_extensional),
            ("a_injective", &self.a_injective),
            ("apartness_bijection", &self.apartness_bijection),
        ]
    }
}

pub fn analyze_mapping(f: &Mapping) -> MappingAnalysis {
    let n = f.dom.len();
    let dc = f.dom.carrier();
    let cc = f.cod.carrier();
    let g = &f.graph;
    let image = cc.close_mask(g.iter().fold(0u64, |acc, &y| acc | 1 << y));
    let onto = Verdict::from_violation((0..f.cod.len()).find(|&y| !has(image, y)).map(|y| [y]));
    let one_one = Verdict::from_violation(
        pairs(n).find(|&[x, y]| cc.equal(g[x], g[y]) && !dc.equal(x, y)),
    );
    let strongly_extensional = Verdict::from_violation(
        pairs(n).find(|&[x, y]| f.cod.apart(g[x], g[y]) && !f.dom.apart(x, y)),
    );
    let a_injective = Verdict::from_violation(
        pairs(n).find(|&[x, y]| f.dom.apart(x, y) && !f.cod.apart(g[x], g[y])),
    );
    let apartness_bijection = [&onto, &one_one, &a_injective, &strongly_extensional]
        .into_iter()
        .find(|v| !v.holds)
        .cloned()
        .unwrap_or(Verdict::HOLDS);
    MappingAnalysis {
        onto,
        one_one,
        strongly_extensional,
        a_injective,
        apartness_bijection,
        kernel: f.kernel(),
        cokernel: f.cokernel(),
    }
}

/// `f = θ ∘ π` with `π` onto the quotient by `ker f`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub quotient: QuotientPresentation,
    pub theta: Mapping,
    /// Claims of the theorem; each must hold.
    pub checks: Vec<(String, Verdict)>,
    /// Informational verdicts whose truth depends on the input.
    pub properties: Vec<(String, Verdict)>,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.holds)
    }
}

fn witness_of(v: &Verdict, f: &Mapping) -> String {
    v.render_witness(f.dom.carrier()).unwrap_or_default()
}

/// `θ([x]) = f(x)` on the quotient by `ker f`, after checking that the value
/// does not depend on the representative.
fn induced_theta(f: &Mapping, q: &QuotientPresentation) -> Result<(Mapping, Verdict)> {
    let cc = f.cod.carrier();
    let well_defined = Verdict::from_violation(pairs(f.dom.len()).find(|&[x, y]| {
        q.class_of(x) == q.class_of(y) && !cc.equal(f.apply(x), f.apply(y))
    }));
    let graph: Vec<usize> = q.representatives().iter().map(|&r| f.apply(r)).collect();
    let theta = Mapping::new(q.quotient().clone(), f.cod.clone(), graph)?;
    Ok((theta, well_defined))
}

fn factorizes(f: &Mapping, q: &QuotientPresentation, theta: &Mapping) -> Verdict {
    let cc = f.cod.carrier();
    Verdict::from_violation(
        (0..f.dom.len())
            .find(|&x| !cc.equal(f.apply(x), theta.apply(q.class_of(x))))
            .map(|x| [x]),
    )
}

/// First isomorphism theorem. With `tables = Some((dom, cod))` the mapping
/// must also be a homomorphism and the quotient carries the induced
/// multiplication.
pub fn first_isomorphism(
    f: &Mapping,
    tables: Option<(&SemigroupTable, &SemigroupTable)>,
) -> Result<Decomposition> {
    let a = analyze_mapping(f);
    if !a.strongly_extensional.holds {
        return Err(Error::precondition(
            "mapping is not strongly extensional",
            witness_of(&a.strongly_extensional, f),
        ));
    }
    let mut checks = Vec::new();
    if let Some((dt, ct)) = tables {
        let hom = f.homomorphism(dt, ct)?;
        if !hom.holds {
            return Err(Error::precondition(
                "mapping is not a homomorphism",
                witness_of(&hom, f),
            ));
        }
    }
    let coker = a.cokernel.clone();
    let ck = f.dom.classify_matrix(coker.matrix());
    checks.push(("coker f is a co-equivalence".to_string(), ck.co_equivalence.clone()));
    if let Some((dt, _)) = tables {
        let cc = crate::quotient::check_cocongruence(dt, &coker)?;
        checks.push(("coker f is a co-congruence".to_string(), cc.co_congruence));
    }
    let q = build_quotient(f.dom(), &a.kernel, &coker, tables.map(|t| t.0))?;
    let (theta, well_defined) = induced_theta(f, &q)?;
    checks.push(("theta well-defined".into(), well_defined));
    let ta = analyze_mapping(&theta);
    checks.push(("theta one-one".into(), ta.one_one.clone()));
    checks.push(("theta a-injective".into(), ta.a_injective.clone()));
    checks.push(("theta strongly extensional".into(), ta.strongly_extensional.clone()));
    checks.push(("f = theta . pi".into(), factorizes(f, &q, &theta)));
    if a.onto.holds {
        checks.push(("theta apartness bijection".into(), ta.apartness_bijection.clone()));
    }
    if let Some((_, ct)) = tables {
        let qt = q.table().expect("quotient of a semigroup carries a table");
        checks.push(("theta homomorphism".into(), theta.homomorphism(qt, ct)?));
    }
    let properties = vec![("f onto".to_string(), a.onto.clone())];
    Ok(Decomposition {
        quotient: q,
        theta,
        checks,
        properties,
    })
}

/// Second isomorphism theorem: `S/ker f` with the apartness defined by a
/// co-equivalence `κ` disjoint from `ker f`. Both iff-clauses are checked by
/// evaluating each side independently.
pub fn second_isomorphism(f: &Mapping, kappa: &BinaryRelation) -> Result<Decomposition> {
    if !same_carrier(kappa.carrier(), f.dom.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    let k = f.dom.classify_matrix(kappa.matrix());
    if let Some(w) = &k.co_equivalence.witness {
        return Err(Error::precondition(
            "kappa is not a co-equivalence",
            w.render(f.dom.carrier()),
        ));
    }
    let a = analyze_mapping(f);
    if let Some((x, y)) = kappa.matrix().intersection(a.kernel.matrix()).pairs().next() {
        return Err(Error::precondition(
            "kappa meets ker f",
            f.dom.carrier().render_tuple(&[x, y]),
        ));
    }
    let q = build_quotient(f.dom(), &a.kernel, kappa, None)?;
    let (theta, well_defined) = induced_theta(f, &q)?;
    let ta = analyze_mapping(&theta);
    let pa = analyze_mapping(q.projection());

    let coker_in_kappa = Verdict::from_violation(
        a.cokernel.matrix().first_outside(kappa.matrix()).map(|(x, y)| [x, y]),
    );
    let kappa_in_coker = Verdict::from_violation(
        kappa.matrix().first_outside(a.cokernel.matrix()).map(|(x, y)| [x, y]),
    );
    let checks = vec![
        ("pi onto".to_string(), pa.onto.clone()),
        ("pi strongly extensional".to_string(), pa.strongly_extensional.clone()),
        ("theta well-defined".to_string(), well_defined),
        ("theta one-one".to_string(), ta.one_one.clone()),
        ("f = theta . pi".to_string(), factorizes(f, &q, &theta)),
        (
            "theta se iff coker f within kappa".to_string(),
            Verdict::bare(ta.strongly_extensional.holds == coker_in_kappa.holds),
        ),
        (
            "theta a-injective iff kappa within coker f".to_string(),
            Verdict::bare(ta.a_injective.holds == kappa_in_coker.holds),
        ),
    ];
    let properties = vec![
        ("theta strongly extensional".to_string(), ta.strongly_extensional.clone()),
        ("coker f within kappa".to_string(), coker_in_kappa),
        ("theta a-injective".to_string(), ta.a_injective.clone()),
        ("kappa within coker f".to_string(), kappa_in_coker),
    ];
    Ok(Decomposition {
        quotient: q,
        theta,
        checks,
        properties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn collapse_ab(s: &ApartnessRelation) -> Mapping {
        Mapping::from_names(s.clone(), s.clone(), &[("a", "a"), ("b", "a"), ("c", "c")]).unwrap()
    }

    #[test]
    fn identity_on_c3() {
        let c3 = fixtures::c3();
        let id = Mapping::identity(&c3);
        let a = analyze_mapping(&id);
        assert!(a.flags().iter().all(|(_, v)| v.holds));
        assert_eq!(a.kernel, BinaryRelation::equality(c3.carrier().clone()));
        assert_eq!(a.cokernel.matrix(), c3.matrix());
        let d = first_isomorphism(&id, None).unwrap();
        assert!(d.holds());
        assert_eq!(d.quotient.quotient().len(), 3);
    }

    #[test]
    fn constant_map_is_se_but_not_a_injective() {
        let c3 = fixtures::c3();
        let f = Mapping::new(c3.clone(), c3.clone(), vec![0, 0, 0]).unwrap();
        let a = analyze_mapping(&f);
        assert!(a.strongly_extensional.holds);
        assert!(a.cokernel.is_empty());
        assert_eq!(a.a_injective.render_witness(c3.carrier()).unwrap(), "(a,c)");
    }

    #[test]
    fn collapse_is_not_an_sl3_homomorphism() {
        let sg = fixtures::sl3();
        let f = collapse_ab(sg.apartness());
        match first_isomorphism(&f, Some((&sg, &sg))) {
            Err(Error::Precondition { witness, .. }) => assert_eq!(witness, "(a,b)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn collapse_on_sl3_is_se_but_not_a_injective() {
        let sg = fixtures::sl3();
        let a = analyze_mapping(&collapse_ab(sg.apartness()));
        assert!(a.strongly_extensional.holds);
        assert!(!a.a_injective.holds);
    }

    #[test]
    fn second_isomorphism_on_c3() {
        let c3 = fixtures::c3();
        let f = collapse_ab(&c3);
        let kappa = BinaryRelation::new(c3.carrier().clone(), c3.matrix().clone()).unwrap();
        assert_eq!(f.cokernel(), kappa);
        let d = second_isomorphism(&f, &kappa).unwrap();
        assert!(d.holds());
        assert!(d.properties.iter().all(|(_, v)| v.holds));
        assert_eq!(d.quotient.quotient().len(), 2);
    }

    #[test]
    fn second_isomorphism_with_empty_kappa() {
        let c3 = fixtures::c3();
        let f = Mapping::identity(&c3);
        let d = second_isomorphism(&f, &BinaryRelation::empty(c3.carrier().clone())).unwrap();
        assert!(d.holds());
        assert!(d.quotient.quotient().matrix().is_empty());
        // coker f = # is not inside κ = ∅, so θ is not se; a-injectivity is vacuous
        assert!(!d.properties[0].1.holds);
        assert!(d.properties[2].1.holds);
    }

    #[test]
    fn mapping_must_be_total_and_extensional() {
        let c3 = fixtures::c3();
        assert!(matches!(
            Mapping::from_names(c3.clone(), c3.clone(), &[("a", "a")]),
            Err(Error::Precondition { .. })
        ));
        let coarse = fixtures::c5_coarse();
        let err = Mapping::new(coarse.clone(), coarse.clone(), vec![0, 2, 2, 3, 4]).unwrap_err();
        assert_eq!(err, Error::axiom("mapping extensionality", "(a,b)"));
    }
}
