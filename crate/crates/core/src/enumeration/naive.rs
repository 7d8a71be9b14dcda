//! An independent oracle: every predicate rewritten as plain quantifier
//! loops over element indices, compared against the bitset kernel on a
//! seeded random sample of catalog objects.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apartness::ApartnessRelation;
use crate::bits::{has, BitMatrix};
use crate::carrier::Carrier;
use crate::quotient::co_compatible;
use crate::semigroup::{classify_mask, tau_properties, validate_semigroup, SemigroupTable};
use crate::verdict::Verdict;

use super::catalog::{Catalog, RELATION_BOUND};
use super::generate::{apartnesses, co_quasiorders, relations, subsets, tables};

pub const ORACLE_SEED: u64 = 0x5eed_a9a7_0001;
/// Fraction of relations and subsets sampled per structure.
pub const ORACLE_RATE: f64 = 0.01;
/// Largest carrier on which generators are compared with brute force.
const GENERATOR_BOUND: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: u64,
    pub rate: f64,
    /// Objects compared, by kind.
    pub sampled: BTreeMap<String, u64>,
    pub disagreements: Vec<String>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.sampled.values().sum()
    }
}

type Tuple = Option<Vec<usize>>;

fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(k as u32);
    (0..total).map(move |mut i| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    })
}

fn first(n: usize, k: usize, bad: impl Fn(&[usize]) -> bool) -> Tuple {
    tuples(n, k).find(|t| bad(t))
}

fn witness(v: &Verdict) -> Tuple {
    v.witness.as_ref().map(|w| w.0.clone())
}

struct Naive<'a> {
    c: &'a Carrier,
    ap: &'a BitMatrix,
}

impl Naive<'_> {
    fn n(&self) -> usize {
        self.c.len()
    }

    fn apart(&self, x: usize, y: usize) -> bool {
        self.ap.get(x, y)
    }

    fn axioms(&self) -> [bool; 5] {
        let n = self.n();
        let c = self.c;
        [
            first(n, 2, |t| c.equal(t[0], t[1]) && self.apart(t[0], t[1])).is_none(),
            first(n, 2, |t| self.apart(t[0], t[1]) && !self.apart(t[1], t[0])).is_none(),
            first(n, 3, |t| {
                self.apart(t[0], t[1]) && !self.apart(t[0], t[2]) && !self.apart(t[2], t[1])
            })
            .is_none(),
            first(n, 3, |t| {
                c.equal(t[0], t[1]) && self.apart(t[1], t[2]) && !self.apart(t[0], t[2])
            })
            .is_none(),
            first(n, 2, |t| !self.apart(t[0], t[1]) && !c.equal(t[0], t[1])).is_none(),
        ]
    }

    fn accepted(&self) -> bool {
        self.axioms()[..4].iter().all(|&b| b)
    }

    /// `(x,y) ∈ ∼α ⇔ ∀(u,v) ∈ α, x # u ∨ y # v`
    fn a_complement(&self, m: &BitMatrix) -> BitMatrix {
        let n = self.n();
        let mut out = BitMatrix::empty(n);
        for x in 0..n {
            for y in 0..n {
                let ok = first(n, 2, |t| m.get(t[0], t[1]) && !self.apart(x, t[0]) && !self.apart(y, t[1]))
                    .is_none();
                out.set(x, y, ok);
            }
        }
        out
    }

    fn a_complement_mask(&self, s: u64) -> u64 {
        let n = self.n();
        (0..n)
            .filter(|&x| (0..n).all(|y| !has(s, y) || self.apart(x, y)))
            .fold(0, |m, x| m | 1 << x)
    }

    /// reflexive, irreflexive, strongly irreflexive, symmetric, transitive,
    /// cotransitive, each as its first violating tuple
    fn relation_flags(&self, m: &BitMatrix) -> [Tuple; 6] {
        let n = self.n();
        [
            first(n, 1, |t| !m.get(t[0], t[0])),
            first(n, 1, |t| m.get(t[0], t[0])),
            first(n, 2, |t| m.get(t[0], t[1]) && !self.apart(t[0], t[1])),
            first(n, 2, |t| m.get(t[0], t[1]) && !m.get(t[1], t[0])),
            first(n, 3, |t| m.get(t[0], t[1]) && m.get(t[1], t[2]) && !m.get(t[0], t[2])),
            first(n, 3, |t| m.get(t[0], t[1]) && !m.get(t[0], t[2]) && !m.get(t[2], t[1])),
        ]
    }
}

struct NaiveTable<'a> {
    base: Naive<'a>,
    t: &'a [usize],
}

impl NaiveTable<'_> {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a * self.base.n() + b]
    }

    /// associative, strongly extensional, extensional
    fn axioms(&self) -> [bool; 3] {
        let n = self.base.n();
        let c = self.base.c;
        [
            first(n, 3, |t| !c.equal(self.mul(self.mul(t[0], t[1]), t[2]), self.mul(t[0], self.mul(t[1], t[2]))))
                .is_none(),
            first(n, 4, |t| {
                self.base.apart(self.mul(t[0], t[2]), self.mul(t[1], t[3]))
                    && !self.base.apart(t[0], t[1])
                    && !self.base.apart(t[2], t[3])
            })
            .is_none(),
            first(n, 4, |t| {
                c.equal(t[0], t[2]) && c.equal(t[1], t[3]) && !c.equal(self.mul(t[0], t[1]), self.mul(t[2], t[3]))
            })
            .is_none(),
        ]
    }

    /// subsemigroup, ideal, convex, completely isolated, sd
    fn subset_flags(&self, s: u64) -> [bool; 5] {
        let n = self.base.n();
        let inn = |x: usize| has(s, x);
        let comp = self.base.a_complement_mask(s);
        [
            first(n, 2, |t| inn(t[0]) && inn(t[1]) && !inn(self.mul(t[0], t[1]))).is_none(),
            first(n, 2, |t| (inn(t[0]) || inn(t[1])) && !inn(self.mul(t[0], t[1]))).is_none(),
            first(n, 2, |t| inn(self.mul(t[0], t[1])) && !(inn(t[0]) && inn(t[1]))).is_none(),
            first(n, 2, |t| inn(self.mul(t[0], t[1])) && !inn(t[0]) && !inn(t[1])).is_none(),
            (0..n).all(|x| inn(x) || has(comp, x)),
        ]
    }

    /// complement positive, constructive cm, complement cm
    fn tau(&self, m: &BitMatrix) -> [bool; 3] {
        let n = self.base.n();
        let comp = self.base.a_complement(m);
        [
            first(n, 2, |t| !comp.get(t[0], self.mul(t[0], t[1])) || !comp.get(t[0], self.mul(t[1], t[0]))).is_none(),
            first(n, 3, |t| m.get(self.mul(t[0], t[1]), t[2]) && !m.get(t[0], t[2]) && !m.get(t[1], t[2])).is_none(),
            first(n, 3, |t| comp.get(t[0], t[2]) && comp.get(t[1], t[2]) && !comp.get(self.mul(t[0], t[1]), t[2]))
                .is_none(),
        ]
    }

    fn co_compatible(&self, m: &BitMatrix) -> bool {
        first(self.base.n(), 4, |t| {
            m.get(self.mul(t[0], t[2]), self.mul(t[1], t[3])) && !m.get(t[0], t[1]) && !m.get(t[2], t[3])
        })
        .is_none()
    }
}

#[derive(Default)]
struct Part {
    sampled: BTreeMap<&'static str, u64>,
    disagreements: Vec<String>,
}

impl Part {
    fn compare(&mut self, kind: &'static str, agree: bool, what: impl FnOnce() -> String) {
        *self.sampled.entry(kind).or_default() += 1;
        if !agree {
            self.disagreements.push(format!("{kind}: {}", what()));
        }
    }
}

fn unit_rng(seed: u64, unit: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (unit as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn structure_part(name: &str, ap: &ApartnessRelation, rng: &mut ChaCha8Rng, rate: f64) -> Part {
    let mut p = Part::default();
    let c = ap.carrier();
    let nv = Naive { c, ap: ap.matrix() };
    let rep = ap.report();
    let kernel: Vec<bool> = rep.all().iter().map(|(_, v)| v.holds).collect();
    p.compare("apartness axioms", kernel == nv.axioms(), || name.to_string());

    // the first object of each family is always taken
    let n = c.len();
    let sample: Vec<BitMatrix> = if n <= RELATION_BOUND {
        relations(c)
            .enumerate()
            .filter(|(i, _)| *i == 0 || rng.gen_bool(rate))
            .map(|(_, m)| m)
            .collect()
    } else {
        // too many to walk: draw random closed relations instead
        let draws = ((rate * (1u64 << (RELATION_BOUND * RELATION_BOUND)) as f64) as usize).max(1);
        (0..draws)
            .map(|_| c.close_matrix(&BitMatrix::from_flat(n, rng.gen::<u64>() & ((1u64 << (n * n)) - 1))))
            .collect()
    };
    for m in sample {
        let k = ap.classify_matrix(&m);
        let ours = [&k.reflexive, &k.irreflexive, &k.strongly_irreflexive, &k.symmetric, &k.transitive, &k.cotransitive]
            .map(witness);
        let show = || format!("{name} {}", c.render_pairs(&m));
        p.compare("relation flags", ours == nv.relation_flags(&m), show);
        p.compare("relation a-complement", ap.a_complement_matrix(&m) == nv.a_complement(&m), show);
    }
    for (i, s) in subsets(c).enumerate() {
        if i != 0 && !rng.gen_bool(rate) {
            continue;
        }
        let k = ap.classify_subset_mask(s);
        let comp = nv.a_complement_mask(s);
        let logical = c.all() & !s;
        let qd = (0..n).all(|x| has(s, x) || (0..n).all(|y| !has(s, y) || nv.apart(x, y)));
        let ok = k.a_complement.mask() == comp
            && k.logical_complement.mask() == logical
            && k.is_sd.holds == (0..n).all(|x| has(s | comp, x))
            && k.is_qd.holds == qd
            && k.complements_equal.holds == (comp == logical);
        p.compare("subset flags", ok, || format!("{name} {}", c.render_mask(s)));
    }
    if c.len() <= GENERATOR_BOUND {
        let brute: Vec<BitMatrix> = relations(c)
            .filter(|m| {
                let f = nv.relation_flags(m);
                f[2].is_none() && f[5].is_none()
            })
            .collect();
        p.compare("co-quasiorder generator", co_quasiorders(ap) == brute, || name.to_string());
    }
    p
}

fn semigroup_part(name: &str, sg: &SemigroupTable, rng: &mut ChaCha8Rng, rate: f64) -> Part {
    let mut p = Part::default();
    let ap = sg.apartness();
    let c = ap.carrier();
    let nt = NaiveTable {
        base: Naive { c, ap: ap.matrix() },
        t: sg.entries(),
    };
    let r = sg.report();
    let kernel = [r.associative.holds, r.strongly_extensional.holds, r.extensional.holds];
    p.compare("semigroup axioms", kernel == nt.axioms(), || name.to_string());
    for (i, s) in subsets(c).enumerate() {
        if i != 0 && !rng.gen_bool(rate.max(0.25)) {
            continue;
        }
        let k = classify_mask(sg, s);
        let ours = [&k.subsemigroup, &k.ideal, &k.convex, &k.completely_isolated, &k.sd].map(|v| v.holds);
        p.compare("semigroup subset flags", ours == nt.subset_flags(s), || {
            format!("{name} {}", c.render_mask(s))
        });
    }
    for (i, t) in co_quasiorders(ap).iter().enumerate() {
        if i != 0 && !rng.gen_bool(rate.max(0.25)) {
            continue;
        }
        let k = tau_properties(sg, t, &ap.a_complement_matrix(t));
        let ours = [&k.complement_positive, &k.constructive_cm, &k.complement_cm].map(|v| v.holds);
        let show = || format!("{name} {}", c.render_pairs(t));
        p.compare("co-quasiorder properties", ours == nt.tau(t), show);
        p.compare("co-compatibility", co_compatible(sg, t).holds == nt.co_compatible(t), show);
    }
    p
}

/// Compares generated structure and table lists against brute-force
/// filtering of every candidate.
fn generator_part(n: usize) -> Part {
    let mut p = Part::default();
    for c in super::generate::carriers(n) {
        let brute: Vec<BitMatrix> = (0..1u64 << (n * n))
            .map(|bits| BitMatrix::from_flat(n, bits))
            .filter(|m| Naive { c: &c, ap: m }.accepted())
            .collect();
        let ours: Vec<BitMatrix> = apartnesses(&c).iter().map(|a| a.matrix().clone()).collect();
        let mut sorted = brute.clone();
        sorted.sort_by_key(|m| m.to_flat());
        p.compare("apartness generator", ours == sorted, || {
            format!("{n} elements, {} classes", c.classes().len())
        });
        for ap in apartnesses(&c) {
            let total = n.pow((n * n) as u32);
            let brute: Vec<Vec<usize>> = (0..total)
                .map(|mut i| {
                    let mut t = vec![0; n * n];
                    for slot in t.iter_mut().rev() {
                        *slot = i % n;
                        i /= n;
                    }
                    t
                })
                .filter(|t| t.iter().all(|&v| (0..v).all(|u| !c.equal(u, v))))
                .filter(|t| {
                    let nt = NaiveTable {
                        base: Naive { c: &c, ap: ap.matrix() },
                        t,
                    };
                    nt.axioms().iter().all(|&b| b)
                })
                .collect();
            let ours: Vec<Vec<usize>> = tables(&ap).iter().map(|t| t.entries().to_vec()).collect();
            let kernel_ok = brute.iter().all(|t| validate_semigroup(&ap, t).is_ok_and(|r| r.accepted()));
            p.compare("table generator", ours == brute && kernel_ok, || {
                format!("{n} elements, apartness {}", c.render_pairs(ap.matrix()))
            });
        }
    }
    p
}

/// Runs the oracle over the catalog. Identical seeds give identical
/// samples regardless of thread count.
pub fn oracle_agreement(catalog: &Catalog, seed: u64, rate: f64) -> OracleReport {
    enum Job<'a> {
        S(&'a str, &'a ApartnessRelation),
        T(&'a str, &'a SemigroupTable),
        G(usize),
    }
    let mut jobs: Vec<Job> = Vec::new();
    jobs.extend(catalog.structures.iter().map(|e| Job::S(&e.name, &e.value)));
    jobs.extend(catalog.semigroups.iter().map(|e| Job::T(&e.name, &e.value)));
    jobs.extend((1..=GENERATOR_BOUND).map(Job::G));
    let rate = rate.clamp(0.0, 1.0);
    let parts: Vec<Part> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, j)| {
            let mut rng = unit_rng(seed, i);
            match j {
                Job::S(name, ap) => structure_part(name, ap, &mut rng, rate),
                Job::T(name, sg) => semigroup_part(name, sg, &mut rng, rate),
                Job::G(n) => generator_part(*n),
            }
        })
        .collect();
    let mut report = OracleReport {
        seed,
        rate,
        sampled: BTreeMap::new(),
        disagreements: Vec::new(),
    };
    for p in parts {
        for (k, v) in p.sampled {
            *report.sampled.entry(k.to_string()).or_default() += v;
        }
        report.disagreements.extend(p.disagreements);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::catalog::CatalogConfig;

    #[test]
    fn tuples_are_lexicographic() {
        let t: Vec<Vec<usize>> = tuples(2, 2).collect();
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn oracle_agrees_on_small_catalog() {
        let cat = Catalog::build(CatalogConfig {
            max_structure: 3,
            max_semigroup: 2,
            ..CatalogConfig::default()
        })
        .unwrap();
        let r = oracle_agreement(&cat, ORACLE_SEED, 0.2);
        assert!(r.agrees(), "{:?}", r.disagreements);
        assert!(r.sampled["relation flags"] > 10);
        assert_eq!(r, oracle_agreement(&cat, ORACLE_SEED, 0.2));
    }

    #[test]
    fn oracle_catches_a_wrong_answer() {
        // the naive loops must disagree with a deliberately wrong claim
        let ap = crate::fixtures::c3();
        let nv = Naive { c: ap.carrier(), ap: ap.matrix() };
        let m = BitMatrix::from_pairs(3, [(0, 1)]);
        let f = nv.relation_flags(&m);
        assert_eq!(f[3], Some(vec![0, 1]));
        assert_ne!(nv.a_complement(&m), BitMatrix::empty(3));
    }
}
