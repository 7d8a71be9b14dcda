//! The theorem suite: every invariant of the kernel, evaluated over every
//! catalog entry and every relation, subset and mapping at its scale.
//!
//! Work is split into independent units (one per structure, semigroup,
//! mapping domain and homomorphism domain). Units run in parallel and their
//! partial reports are merged in unit order, so the result does not depend
//! on the number of workers.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apartness::ApartnessRelation;
use crate::bits::{full_mask, ones, BitMatrix};
use crate::carrier::Carrier;
use crate::cayley::cayley_embedding;
use crate::error::{Error, Result};
use crate::morphism::{analyze_mapping, first_isomorphism, second_isomorphism, Mapping};
use crate::quotient::{build_quotient, co_compatible, coequivalence_quotient, compatible, defines_apartness};
use crate::relation::{product_relation, reflexive, transitive, BinaryRelation};
use crate::semigroup::{
    classical_lemma_mask, classical_matrix, classify_mask, complement_lemma_check, division_relation,
    positive_quasiorders, positive_theorems, tau_properties, SemigroupTable,
};
use crate::subset::Subset;
use crate::verdict::Verdict;

use super::catalog::{Catalog, Entry, Rejected, MAPPING_BOUND, RELATION_BOUND, SEMIGROUP_BOUND};
use super::generate::{co_quasiorders, equivalences, mappings, preorders, relations, subsets};

/// Failure witnesses kept per theorem; the counts are always exact.
pub const FAILURE_CAP: usize = 20;

/// Existential statements the suite must find an instance of.
const CONVERSE_EXAMPLE: &str = "relation: transitive a-complement without co-transitivity";

pub const OUT_OF_SCOPE: [&str; 3] = [
    "Counterexamples that reduce statements to LPO, LLPO or MP concern the real line and are not executed.",
    "Every finite decidable model satisfies the constant domain principle, so the class lemma and the five condition equivalence are checked as plain equivalences.",
    "The sd and qd conditions coincide on every finite subset; the suite records this as an observation about finite models, not as a constructive theorem.",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailWitness {
    pub theorem: String,
    pub structure: String,
    pub object: String,
    pub witness: String,
}

/// How much was covered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub structures: u64,
    pub semigroups: u64,
    pub subsets: u64,
    pub relations: u64,
    pub co_quasiorders: u64,
    pub quotients: u64,
    pub mappings: u64,
    pub homomorphisms: u64,
}

impl Coverage {
    fn add(&mut self, o: &Coverage) {
        self.structures += o.structures;
        self.semigroups += o.semigroups;
        self.subsets += o.subsets;
        self.relations += o.relations;
        self.co_quasiorders += o.co_quasiorders;
        self.quotients += o.quotients;
        self.mappings += o.mappings;
        self.homomorphisms += o.homomorphisms;
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub theorems: BTreeMap<String, Tally>,
    pub failures: Vec<FailWitness>,
    /// Instances found for existential statements.
    pub examples: BTreeMap<String, String>,
    pub rejected: Vec<Rejected>,
    pub coverage: Coverage,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall_time: Option<Duration>,
}

impl PartialEq for SuiteReport {
    fn eq(&self, o: &Self) -> bool {
        self.theorems == o.theorems
            && self.failures == o.failures
            && self.examples == o.examples
            && self.rejected == o.rejected
            && self.coverage == o.coverage
            && self.notes == o.notes
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.theorems.values().all(|t| t.failed == 0)
    }

    pub fn checks(&self) -> u64 {
        self.theorems.values().map(|t| t.checked).sum()
    }

    pub fn failed(&self) -> u64 {
        self.theorems.values().map(|t| t.failed).sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
}

#[derive(Default)]
struct Acc {
    theorems: BTreeMap<&'static str, Tally>,
    failures: Vec<FailWitness>,
    kept: BTreeMap<&'static str, usize>,
    examples: BTreeMap<&'static str, String>,
    coverage: Coverage,
}

impl Acc {
    fn record(&mut self, th: &'static str, ok: bool, fail: impl FnOnce() -> (String, String, String)) {
        let t = self.theorems.entry(th).or_default();
        t.checked += 1;
        if !ok {
            t.failed += 1;
            let kept = self.kept.entry(th).or_default();
            if *kept < FAILURE_CAP {
                *kept += 1;
                let (structure, object, witness) = fail();
                self.failures.push(FailWitness {
                    theorem: th.to_string(),
                    structure,
                    object,
                    witness,
                });
            }
        }
    }

    fn merge(&mut self, o: Acc) {
        for (k, t) in o.theorems {
            let e = self.theorems.entry(k).or_default();
            e.checked += t.checked;
            e.failed += t.failed;
        }
        for f in o.failures {
            let th = self.theorems.keys().find(|k| **k == f.theorem).copied();
            let kept = self.kept.entry(th.expect("tallied")).or_default();
            if *kept < FAILURE_CAP {
                *kept += 1;
                self.failures.push(f);
            }
        }
        for (k, v) in o.examples {
            self.examples.entry(k).or_insert(v);
        }
        self.coverage.add(&o.coverage);
    }
}

/// Context for recording checks against one named structure.
struct Ctx<'a> {
    acc: &'a mut Acc,
    name: &'a str,
    carrier: &'a Carrier,
}

impl Ctx<'_> {
    fn check(&mut self, th: &'static str, ok: bool, object: impl FnOnce() -> String) {
        let name = self.name;
        self.acc.record(th, ok, || (name.to_string(), object(), String::new()));
    }

    fn verdict(&mut self, th: &'static str, v: &Verdict, object: impl FnOnce() -> String) {
        let (name, c) = (self.name, self.carrier);
        self.acc.record(th, v.holds, || {
            (name.to_string(), object(), v.render_witness(c).unwrap_or_default())
        });
    }

    fn result(&mut self, th: &'static str, r: Result<bool>, object: impl FnOnce() -> String) {
        let name = self.name;
        match r {
            Ok(ok) => self.acc.record(th, ok, || (name.to_string(), object(), String::new())),
            Err(e) => self.acc.record(th, false, || (name.to_string(), object(), e.to_string())),
        }
    }
}

fn closed(c: &std::sync::Arc<Carrier>, m: &BitMatrix) -> BinaryRelation {
    BinaryRelation::closed(c.clone(), m.clone())
}

/// Equivalences containing the equality, i.e. the extensional ones.
fn extensional_equivalences(c: &Carrier) -> Vec<BitMatrix> {
    equivalences(c.len())
        .into_iter()
        .filter(|e| c.equality().is_subset_of(e))
        .collect()
}

fn structure_unit(e: &Entry<ApartnessRelation>) -> Acc {
    let mut acc = Acc::default();
    let ap = &e.value;
    let c = ap.carrier();
    let n = ap.len();
    let all = full_mask(n);
    acc.coverage.structures += 1;
    let mut x = Ctx {
        acc: &mut acc,
        name: &e.name,
        carrier: c,
    };

    let rep = ap.report();
    x.check("structure: Ap1, Ap2, Ap3 and Ap5' hold", rep.accepted(), || "apartness".into());
    let tight = ap.weak_equality().is_subset_of(c.equality());
    x.check("structure: Ap4 verdict matches tightness", rep.tight.holds == tight, || "apartness".into());

    for s in subsets(c) {
        x.acc.coverage.subsets += 1;
        let k = ap.classify_subset_mask(s);
        let show = || c.render_mask(s);
        x.check(
            "subset: a-complement within logical complement",
            k.a_complement.is_subset_of(&k.logical_complement),
            show,
        );
        x.check("subset: sd implies qd", !k.is_sd.holds || k.is_qd.holds, show);
        x.check(
            "subset: qd implies equal complements",
            !k.is_qd.holds || k.complements_equal.holds,
            show,
        );
        x.check("subset: sd and qd coincide on finite carriers", k.is_sd.holds == k.is_qd.holds, show);
        x.verdict("subset: detachable", &k.is_d, show);
        if k.is_sd.holds {
            let tau = product_relation(c.clone(), k.a_complement.mask(), s);
            x.verdict(
                "subset: sd subset yields a co-quasiorder",
                &ap.classify_matrix(tau.matrix()).co_quasiorder,
                show,
            );
        }
    }

    let cqs = co_quasiorders(ap);
    if n <= RELATION_BOUND {
        let mut flagged = 0usize;
        for m in relations(c) {
            x.acc.coverage.relations += 1;
            let k = ap.classify_matrix(&m);
            let comp = ap.a_complement_matrix(&m);
            let show = || c.render_pairs(&m);
            x.check(
                "relation: strongly irreflexive iff a-complement reflexive",
                k.strongly_irreflexive.holds == reflexive(&comp).holds,
                show,
            );
            x.check(
                "relation: reflexive implies a-complement strongly irreflexive",
                !k.reflexive.holds || comp.is_subset_of(ap.matrix()),
                show,
            );
            x.check(
                "relation: symmetric implies a-complement symmetric",
                !k.symmetric.holds || comp == comp.transpose(),
                show,
            );
            let comp_transitive = transitive(&comp).holds;
            x.check(
                "relation: co-transitive implies a-complement transitive",
                !k.cotransitive.holds || comp_transitive,
                show,
            );
            x.check(
                "relation: co-quasiorder and co-equivalence flags",
                k.co_quasiorder.holds == (k.strongly_irreflexive.holds && k.cotransitive.holds)
                    && k.co_equivalence.holds == (k.co_quasiorder.holds && k.symmetric.holds)
                    && k.weak_co_quasiorder.holds == (k.irreflexive.holds && k.cotransitive.holds),
                show,
            );
            if !k.cotransitive.holds && comp_transitive {
                x.acc
                    .examples
                    .entry(CONVERSE_EXAMPLE)
                    .or_insert_with(|| format!("{}: {}", e.name, c.render_pairs(&m)));
            }
            flagged += k.co_quasiorder.holds as usize;
        }
        x.check(
            "co-quasiorder: generator agrees with classification",
            flagged == cqs.len(),
            || format!("{} generated, {flagged} classified", cqs.len()),
        );
    }

    let pair = ap.pair_structure().ok();
    let eqs = extensional_equivalences(c);
    for t in &cqs {
        x.acc.coverage.co_quasiorders += 1;
        let show = || c.render_pairs(t);
        let comp = ap.a_complement_matrix(t);
        x.check(
            "co-quasiorder: a-complement equals logical complement",
            comp == t.complement(),
            show,
        );
        if let Some(pc) = &pair {
            x.verdict(
                "co-quasiorder: qd subset of the pair carrier",
                &pc.classify_subset_mask(t.to_flat()).is_qd,
                show,
            );
        }
        let cols = t.transpose();
        let covers = t.pairs().all(|(a, b)| t.row(a) | cols.row(b) == all);
        x.check("co-quasiorder: classes of a related pair cover the carrier", covers, show);
        let classes_ok = (0..n).all(|a| {
            [t.row(a), cols.row(a)].into_iter().all(|cls| {
                ap.classify_subset_mask(cls).is_sd.holds && ap.apart_from_all(a, cls)
            })
        });
        x.check("co-quasiorder: classes are sd and apart from their element", classes_ok, show);

        if *t == t.transpose() {
            let kappa = closed(c, t);
            x.result(
                "co-equivalence: quotient by the a-complement",
                coequivalence_quotient(ap, &kappa, None).map(|q| q.holds() && q.quotient().report().accepted()),
                show,
            );
            for eps in &eqs {
                let d = defines_apartness(eps, t);
                // κ defines an apartness on S/ε iff it is representative
                // independent and irreflexive on classes
                let irreflexive = eps.intersection(t).is_empty();
                let defines = irreflexive && rep_independent(eps, t);
                let show = || format!("epsilon {} kappa {}", c.render_pairs(eps), c.render_pairs(t));
                x.check("quotient: kappa defines an apartness iff disjoint from epsilon", d.holds() == defines && d.disjoint.holds == defines, show);
                if d.disjoint.holds {
                    x.acc.coverage.quotients += 1;
                    x.result(
                        "quotient: induced structure verified",
                        build_quotient(ap, &closed(c, eps), &kappa, None)
                            .map(|q| q.holds() && q.quotient().report().accepted()),
                        show,
                    );
                }
            }
        }
    }

    let same = build_quotient(ap, &BinaryRelation::equality(c.clone()), &closed(c, ap.matrix()), None).map(|q| {
        let a = q.quotient().report();
        let holds = |r: &crate::apartness::AxiomReport| -> Vec<bool> { r.all().iter().map(|(_, v)| v.holds).collect() };
        holds(&a) == holds(&rep)
    });
    x.result("quotient: identity quotient keeps the axiom report", same, || "epsilon = equality".into());
    acc
}

/// `x ε a ∧ y ε b ⇒ ((x,y) ∈ κ ⇔ (a,b) ∈ κ)`, by plain loops.
fn rep_independent(e: &BitMatrix, k: &BitMatrix) -> bool {
    let n = e.dim();
    (0..n).all(|x| {
        (0..n).all(|y| {
            ones(e.row(x)).all(|a| ones(e.row(y)).all(|b| k.get(x, y) == k.get(a, b)))
        })
    })
}

fn semigroup_unit(e: &Entry<SemigroupTable>) -> Acc {
    let mut acc = Acc::default();
    let sg = &e.value;
    let ap = sg.apartness();
    let c = ap.carrier();
    let n = sg.len();
    acc.coverage.semigroups += 1;
    let mut x = Ctx {
        acc: &mut acc,
        name: &e.name,
        carrier: c,
    };

    x.check("semigroup: (A), (S) and extensionality hold", sg.report().accepted(), || "table".into());
    x.result(
        "semigroup: adjoined identity",
        sg.with_identity().map(|s1| {
            let t = &s1.extended;
            let one = s1.identity;
            (0..=n).all(|v| t.mul(one, v) == v && t.mul(v, one) == v)
                && (0..n).all(|v| t.apartness().apart(one, v))
                && t.report().accepted()
                && t.apartness().report().accepted()
        }),
        || "S with identity".into(),
    );

    for s in subsets(c) {
        let show = || c.render_mask(s);
        let k = classify_mask(sg, s);
        x.check(
            "semigroup subset: complement lemma",
            complement_lemma_check(sg, &Subset::new(c.clone(), s))
                .map(|r| r.convex_branch.consistent() && r.ideal_branch.consistent())
                .unwrap_or(false),
            show,
        );
        x.check("semigroup subset: classical complement lemma", classical_lemma_mask(sg, s).consistent(), show);
        let comp = ap.a_complement_mask(s);
        if k.sd_convex() {
            let t = product_relation(c.clone(), comp, s);
            let ok = ap.classify_matrix(t.matrix()).co_quasiorder.holds
                && tau_properties(sg, t.matrix(), &ap.a_complement_matrix(t.matrix()))
                    .complement_positive
                    .holds;
            x.check("semigroup subset: convex construction is complement positive", ok, show);
        }
        if k.sd_ideal() && comp != 0 {
            let t = product_relation(c.clone(), s, comp);
            let ok = ap.classify_matrix(t.matrix()).co_quasiorder.holds
                && tau_properties(sg, t.matrix(), &ap.a_complement_matrix(t.matrix()))
                    .complement_positive
                    .holds;
            x.check("semigroup subset: ideal construction is complement positive", ok, show);
        }
    }

    let tight = ap.is_tight();
    let cqs = co_quasiorders(ap);
    let mut cocongruences = Vec::new();
    for t in &cqs {
        let show = || c.render_pairs(t);
        let r = positive_theorems(sg, t);
        x.verdict("positive co-quasiorder: right classes shrink under products", &r.t1, show);
        x.check("positive co-quasiorder: five conditions agree", r.t2_consistent, show);
        x.check("positive co-quasiorder: three cm conditions agree", r.t3_consistent, show);
        x.verdict("positive co-quasiorder: complement cm-property follows", &r.t4, show);
        if tight {
            let rho = t.complement();
            let cr = classical_matrix(sg, &rho);
            x.check("classical duality: complement is a quasiorder", cr.quasiorder(), show);
            x.check(
                "classical duality: positivity matches complement positivity",
                cr.positive.holds == r.properties.complement_positive.holds,
                show,
            );
            x.check(
                "classical duality: cm-property matches complement cm-property",
                cr.cm.holds == r.properties.complement_cm.holds,
                show,
            );
        }
        if *t == t.transpose() && co_compatible(sg, t).holds {
            cocongruences.push(t.clone());
        }
    }

    for q in preorders(n).into_iter().filter(|q| c.equality().is_subset_of(q)) {
        let cr = classical_matrix(sg, &q);
        x.check("classical: characterizations of positive quasiorders agree", cr.consistent, || c.render_pairs(&q));
    }
    if n <= SEMIGROUP_BOUND {
        let d = division_relation(sg);
        let all = positive_quasiorders(sg);
        let least = all.contains(d.matrix()) && all.iter().all(|m| d.matrix().is_subset_of(m));
        x.check("classical: division is the least positive quasiorder", least, || c.render_pairs(d.matrix()));
    }

    let congruences: Vec<BitMatrix> = extensional_equivalences(c)
        .into_iter()
        .filter(|e| compatible(sg, e).holds)
        .collect();
    for k in &cocongruences {
        let kappa = closed(c, k);
        let show = || c.render_pairs(k);
        x.result(
            "co-congruence: quotient by the a-complement",
            coequivalence_quotient(ap, &kappa, Some(sg)).map(|q| q.holds() && q.table().is_some()),
            show,
        );
        for eps in congruences.iter().filter(|e| e.intersection(k).is_empty()) {
            x.acc.coverage.quotients += 1;
            x.result(
                "quotient: semigroup quotient verified",
                build_quotient(ap, &closed(c, eps), &kappa, Some(sg)).map(|q| q.holds()),
                || format!("epsilon {} kappa {}", c.render_pairs(eps), c.render_pairs(k)),
            );
        }
    }

    x.result("cayley: embedding verified", cayley_embedding(sg).map(|e| e.holds()), || "left translations".into());
    acc
}

fn render_graph(f: &Mapping) -> String {
    let dc = f.dom().carrier();
    let cc = f.cod().carrier();
    let parts: Vec<String> = f
        .graph()
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{}->{}", dc.name(x), cc.name(y)))
        .collect();
    parts.join(" ")
}

fn mapping_unit(dom: &Entry<ApartnessRelation>, cods: &[&Entry<ApartnessRelation>]) -> Acc {
    let mut acc = Acc::default();
    let dap = &dom.value;
    let dc = dap.carrier();
    let co_eqs: Vec<BitMatrix> = co_quasiorders(dap)
        .into_iter()
        .filter(|t| *t == t.transpose())
        .collect();
    for cod in cods {
        let name = format!("{} -> {}", dom.name, cod.name);
        let mut x = Ctx {
            acc: &mut acc,
            name: &name,
            carrier: dc,
        };
        let classical = dc.is_diagonal() && dap.is_tight() && cod.value.carrier().is_diagonal() && cod.value.is_tight();
        for g in mappings(dc, cod.value.carrier()) {
            x.acc.coverage.mappings += 1;
            let f = match Mapping::new(dap.clone(), cod.value.clone(), g) {
                Ok(f) => f,
                Err(e) => {
                    x.result("mapping: generated graph is extensional", Err(e), String::new);
                    continue;
                }
            };
            let show = || render_graph(&f);
            let a = analyze_mapping(&f);
            x.check(
                "mapping: kernel and cokernel are disjoint",
                a.kernel.matrix().intersection(a.cokernel.matrix()).is_empty(),
                show,
            );
            let coker = dap.classify_matrix(a.cokernel.matrix());
            x.check(
                "mapping: se iff cokernel strongly irreflexive",
                a.strongly_extensional.holds == coker.strongly_irreflexive.holds,
                show,
            );
            if a.strongly_extensional.holds {
                x.verdict("mapping: cokernel of an se-mapping is a co-equivalence", &coker.co_equivalence, show);
                let d = first_isomorphism(&f, None);
                if classical {
                    let ok = d.as_ref().is_ok_and(|d| {
                        (0..dap.len()).all(|v| {
                            let cls: u64 = (0..dap.len())
                                .filter(|&w| f.apply(w) == f.apply(v))
                                .fold(0, |m, w| m | 1 << w);
                            d.quotient.classes()[d.quotient.class_of(v)] == cls
                                && d.theta.apply(d.quotient.class_of(v)) == f.apply(v)
                        })
                    });
                    x.check("first isomorphism: classical reduction", ok, show);
                }
                x.result("first isomorphism: decomposition verified", d.map(|d| d.holds()), show);
            }
            for k in &co_eqs {
                if !k.intersection(a.kernel.matrix()).is_empty() {
                    continue;
                }
                x.result(
                    "second isomorphism: decomposition verified",
                    second_isomorphism(&f, &closed(dc, k)).map(|d| d.holds()),
                    || format!("{} kappa {}", render_graph(&f), dc.render_pairs(k)),
                );
            }
        }
    }
    acc
}

fn homomorphism_unit(dom: &Entry<SemigroupTable>, cods: &[&Entry<SemigroupTable>]) -> Acc {
    let mut acc = Acc::default();
    let ds = &dom.value;
    let dap = ds.apartness();
    let dc = dap.carrier();
    let n = ds.len();
    for cod in cods {
        let cs = &cod.value;
        let cc = cs.carrier();
        let name = format!("{} -> {}", dom.name, cod.name);
        let mut x = Ctx {
            acc: &mut acc,
            name: &name,
            carrier: dc,
        };
        for g in mappings(dc, cc) {
            let hom = (0..n).all(|a| (0..n).all(|b| cc.equal(g[ds.mul(a, b)], cs.mul(g[a], g[b]))));
            let se = (0..n).all(|a| (0..n).all(|b| !cs.apartness().apart(g[a], g[b]) || dap.apart(a, b)));
            if !(hom && se) {
                continue;
            }
            x.acc.coverage.homomorphisms += 1;
            let f = match Mapping::new(dap.clone(), cs.apartness().clone(), g) {
                Ok(f) => f,
                Err(e) => {
                    x.result("homomorphism: generated graph is extensional", Err(e), String::new);
                    continue;
                }
            };
            let show = || render_graph(&f);
            let coker = f.cokernel();
            let cr = crate::quotient::cocongruence(ds, coker.matrix());
            x.verdict("homomorphism: cokernel is a co-congruence", &cr.co_congruence, show);
            x.result(
                "first isomorphism for semigroups: decomposition verified",
                first_isomorphism(&f, Some((ds, cs))).map(|d| d.holds()),
                show,
            );
        }
    }
    acc
}

enum Unit<'a> {
    Structure(&'a Entry<ApartnessRelation>),
    Semigroup(&'a Entry<SemigroupTable>),
    Mappings(&'a Entry<ApartnessRelation>),
    Homomorphisms(&'a Entry<SemigroupTable>),
}

pub fn theorem_suite(catalog: &Catalog, options: SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let small: Vec<&Entry<ApartnessRelation>> = catalog
        .structures
        .iter()
        .filter(|e| e.value.len() <= MAPPING_BOUND)
        .collect();
    let small_sg: Vec<&Entry<SemigroupTable>> = catalog
        .semigroups
        .iter()
        .filter(|e| e.value.len() <= SEMIGROUP_BOUND)
        .collect();
    let mut units: Vec<Unit> = Vec::new();
    units.extend(catalog.structures.iter().map(Unit::Structure));
    units.extend(catalog.semigroups.iter().map(Unit::Semigroup));
    units.extend(small.iter().map(|e| Unit::Mappings(e)));
    units.extend(small_sg.iter().map(|e| Unit::Homomorphisms(e)));

    let run = |u: &Unit| match u {
        Unit::Structure(e) => structure_unit(e),
        Unit::Semigroup(e) => semigroup_unit(e),
        Unit::Mappings(e) => mapping_unit(e, &small),
        Unit::Homomorphisms(e) => homomorphism_unit(e, &small_sg),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::precondition("worker pool", e.to_string()))?;
    let parts: Vec<Acc> = pool.install(|| units.par_iter().map(run).collect());

    let mut acc = Acc::default();
    for p in parts {
        acc.merge(p);
    }
    let found = acc.examples.contains_key(CONVERSE_EXAMPLE);
    let needs_example = catalog.structures.iter().any(|e| e.value.len() <= RELATION_BOUND);
    if needs_example {
        acc.record(CONVERSE_EXAMPLE, found, || {
            ("catalog".into(), String::new(), "no instance found".into())
        });
    }

    Ok(SuiteReport {
        theorems: acc.theorems.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        failures: acc.failures,
        examples: acc.examples.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        rejected: catalog.rejected.clone(),
        coverage: acc.coverage,
        notes: OUT_OF_SCOPE.iter().map(|s| s.to_string()).collect(),
        wall_time: Some(start.elapsed()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::catalog::{CatalogConfig, Provenance};
    use crate::fixtures;

    fn small_catalog() -> Catalog {
        Catalog::build(CatalogConfig {
            max_structure: 3,
            max_semigroup: 2,
            fixtures: false,
            tight_only: false,
        })
        .unwrap()
    }

    #[test]
    fn small_suite_passes() {
        let r = theorem_suite(&small_catalog(), SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{:#?}", r.failures);
        assert!(r.examples.contains_key(CONVERSE_EXAMPLE));
        assert!(r.checks() > 1000);
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let cat = small_catalog();
        let a = theorem_suite(&cat, SuiteOptions { workers: 1 }).unwrap();
        let b = theorem_suite(&cat, SuiteOptions { workers: 4 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn corrupted_fixture_is_a_rejection_not_a_failure() {
        let mut cat = small_catalog();
        cat.add_semigroup_candidate("broken", Provenance::User, fixtures::sl3().apartness().clone(), vec![1, 2, 0, 1, 2, 0, 1, 2, 0]);
        let r = theorem_suite(&cat, SuiteOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.rejected.len(), 1);
        assert_eq!(r.rejected[0].name, "broken");
    }

    #[test]
    fn converse_example_is_the_c3_relation() {
        let mut cat = Catalog::default();
        cat.add_structure("C3", Provenance::Fixture, fixtures::c3());
        let r = theorem_suite(&cat, SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{:#?}", r.failures);
        // the first such relation in generation order
        let ex = &r.examples[CONVERSE_EXAMPLE];
        assert!(ex.starts_with("C3: "), "{ex}");
    }

    #[test]
    fn failures_are_reported() {
        let mut acc = Acc::default();
        for i in 0..30 {
            acc.record("t", i % 2 == 0, || ("s".into(), i.to_string(), String::new()));
        }
        assert_eq!(acc.theorems["t"], Tally { checked: 30, failed: 15 });
        assert_eq!(acc.failures.len(), 15);
        let mut merged = Acc::default();
        merged.merge(acc);
        let mut more = Acc::default();
        for _ in 0..10 {
            more.record("t", false, || ("s".into(), String::new(), String::new()));
        }
        merged.merge(more);
        assert_eq!(merged.failures.len(), FAILURE_CAP);
        assert_eq!(merged.theorems["t"].failed, 25);
    }
}
