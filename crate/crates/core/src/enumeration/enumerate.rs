//! Filtered enumeration over a base structure and the counterexample search
//! for implications between atoms.

use serde::{Deserialize, Serialize};

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupTable;

use super::atoms::{check_scope, parse_conjunction, render_conjunction, Kind, Literal, RelationFacts, SubsetFacts};
use super::catalog::{generated_structures, RELATION_BOUND, SEMIGROUP_BOUND};
use super::generate::{apartnesses, relations, subsets, tables};

/// Largest base accepted by [`enumerate`] for each kind.
pub fn hard_bound(kind: Kind) -> usize {
    match kind {
        Kind::Apartness => 8,
        Kind::Relation => RELATION_BOUND,
        Kind::Subset => 16,
        Kind::Semigroup => SEMIGROUP_BOUND,
    }
}

/// A structure to enumerate over, optionally with a multiplication.
#[derive(Debug, Clone)]
pub struct Base {
    pub ap: ApartnessRelation,
    pub table: Option<SemigroupTable>,
}

impl Base {
    pub fn structure(ap: ApartnessRelation) -> Self {
        Base { ap, table: None }
    }

    pub fn semigroup(t: SemigroupTable) -> Self {
        Base {
            ap: t.apartness().clone(),
            table: Some(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Apartness(BitMatrix),
    Relation(BitMatrix),
    Subset(u64),
    Semigroup(Vec<usize>),
}

impl Object {
    pub fn render(&self, c: &Carrier) -> String {
        match self {
            Object::Apartness(m) | Object::Relation(m) => c.render_pairs(m),
            Object::Subset(s) => c.render_mask(*s),
            Object::Semigroup(t) => render_table(c, t),
        }
    }
}

/// Rows separated by `;`, products within a row by spaces.
pub fn render_table(c: &Carrier, t: &[usize]) -> String {
    let n = c.len();
    let rows: Vec<String> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| c.name(t[a * n + b]))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    rows.join("; ")
}

/// One line description of a structure.
pub fn describe_structure(ap: &ApartnessRelation) -> String {
    let c = ap.carrier();
    let classes: Vec<String> = c.classes().into_iter().map(|m| c.render_mask(m)).collect();
    format!(
        "elements {}; equality classes {}; apartness {}",
        c.render_mask(c.all()),
        classes.join(","),
        c.render_pairs(ap.matrix())
    )
}

fn check_bound(kind: Kind, n: usize) -> Result<()> {
    let bound = hard_bound(kind);
    if n > bound {
        return Err(Error::SizeBound {
            what: format!("{} enumeration base", kind.as_str()),
            size: n,
            bound,
        });
    }
    Ok(())
}

/// Deterministic stream of the objects of `kind` over `base` that satisfy
/// every literal of `filter`. For `apartness`, `tight` refers to the
/// candidate; for the other kinds it refers to the base.
pub fn enumerate_stream<'a>(
    kind: Kind,
    base: &'a Base,
    filter: &'a [Literal],
) -> Result<Box<dyn Iterator<Item = Object> + 'a>> {
    check_bound(kind, base.ap.len())?;
    check_scope(filter, kind, base.table.is_some())?;
    let ap = &base.ap;
    let sg = base.table.as_ref();
    Ok(match kind {
        Kind::Apartness => Box::new(
            apartnesses(ap.carrier())
                .into_iter()
                .filter(move |cand| filter.iter().all(|l| cand.is_tight() == l.positive))
                .map(|cand| Object::Apartness(cand.matrix().clone())),
        ),
        Kind::Relation => Box::new(
            relations(ap.carrier())
                .filter(move |m| RelationFacts::new(ap, sg, m).satisfies(filter))
                .map(Object::Relation),
        ),
        Kind::Subset => Box::new(
            subsets(ap.carrier())
                .filter(move |&s| SubsetFacts::new(ap, sg, s).satisfies(filter))
                .map(Object::Subset),
        ),
        Kind::Semigroup => {
            let tight = ap.is_tight();
            let keep = filter.iter().all(|l| tight == l.positive);
            Box::new(
                tables(ap)
                    .into_iter()
                    .filter(move |_| keep)
                    .map(|t| Object::Semigroup(t.entries().to_vec())),
            )
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub kind: Kind,
    pub filter: Vec<Literal>,
    pub count: u64,
    pub items: Vec<Object>,
}

pub fn enumerate(kind: Kind, base: &Base, filter: &[Literal]) -> Result<Enumeration> {
    let items: Vec<Object> = enumerate_stream(kind, base, filter)?.collect();
    Ok(Enumeration {
        kind,
        filter: filter.to_vec(),
        count: items.len() as u64,
        items,
    })
}

/// `hypothesis ⇒ conclusion` over relations or subsets. Without a
/// conclusion the search looks for any object satisfying the hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationQuery {
    pub hypothesis: Vec<Literal>,
    pub conclusion: Option<Literal>,
    pub scope: Kind,
    pub max_size: usize,
}

impl ImplicationQuery {
    /// Parses `HYP => CONC` (also `⇒` or `->`), or a bare conjunction.
    pub fn parse(text: &str, scope: Kind, max_size: usize) -> Result<Self> {
        let split = ["=>", "⇒", "->"].iter().find_map(|arrow| text.split_once(arrow));
        let (hypothesis, conclusion) = match split {
            Some((h, c)) => {
                let c = parse_conjunction(c)?;
                if c.len() != 1 {
                    return Err(Error::UnknownAtom(format!(
                        "conclusion must be a single literal, found `{}`",
                        render_conjunction(&c)
                    )));
                }
                (parse_conjunction(h)?, Some(c[0]))
            }
            None => (parse_conjunction(text)?, None),
        };
        Ok(ImplicationQuery {
            hypothesis,
            conclusion,
            scope,
            max_size,
        })
    }

    pub fn render(&self) -> String {
        match &self.conclusion {
            Some(c) => format!("{} => {c}", render_conjunction(&self.hypothesis)),
            None => render_conjunction(&self.hypothesis),
        }
    }

    fn literals(&self) -> Vec<Literal> {
        let mut ls = self.hypothesis.clone();
        if let Some(c) = self.conclusion {
            ls.push(Literal {
                atom: c.atom,
                positive: !c.positive,
            });
        }
        ls
    }

    pub fn needs_table(&self) -> bool {
        self.literals().iter().any(|l| l.atom.needs_table())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum SearchOutcome {
    Witness {
        structure: String,
        description: String,
        object: String,
    },
    /// No object satisfies the search literals on any structure up to the
    /// given size.
    Exhausted {
        up_to: usize,
        structures: u64,
    },
}

fn search_one(base: &Base, kind: Kind, ls: &[Literal]) -> Option<String> {
    let ap = &base.ap;
    let sg = base.table.as_ref();
    match kind {
        Kind::Relation => relations(ap.carrier())
            .find(|m| RelationFacts::new(ap, sg, m).satisfies(ls))
            .map(|m| ap.carrier().render_pairs(&m)),
        Kind::Subset => subsets(ap.carrier())
            .find(|&s| SubsetFacts::new(ap, sg, s).satisfies(ls))
            .map(|s| ap.carrier().render_mask(s)),
        _ => None,
    }
}

/// First object (in generation order) satisfying the hypothesis but not the
/// conclusion. With a base only that structure is searched; otherwise every
/// generated structure (or semigroup, when an atom needs a table) of size
/// `1..=max_size`.
pub fn counterexample_search(q: &ImplicationQuery, base: Option<&Base>) -> Result<SearchOutcome> {
    if !matches!(q.scope, Kind::Relation | Kind::Subset) {
        return Err(Error::AtomScope {
            atom: q.render(),
            scope: q.scope.as_str().into(),
        });
    }
    let ls = q.literals();
    let table = q.needs_table();
    if let Some(b) = base {
        check_bound(q.scope, b.ap.len())?;
        check_scope(&ls, q.scope, b.table.is_some())?;
        return Ok(match search_one(b, q.scope, &ls) {
            Some(object) => SearchOutcome::Witness {
                structure: "base".into(),
                description: describe_structure(&b.ap),
                object,
            },
            None => SearchOutcome::Exhausted {
                up_to: b.ap.len(),
                structures: 1,
            },
        });
    }
    check_scope(&ls, q.scope, table)?;
    let bound = if table { SEMIGROUP_BOUND } else { RELATION_BOUND };
    if q.max_size > bound {
        return Err(Error::SizeBound {
            what: "counterexample search".into(),
            size: q.max_size,
            bound,
        });
    }
    let mut searched = 0u64;
    for n in 1..=q.max_size {
        for (name, ap) in generated_structures(n) {
            let bases: Vec<(String, Base)> = if table {
                tables(&ap)
                    .into_iter()
                    .enumerate()
                    .map(|(k, t)| (format!("{name}.t{k}"), Base::semigroup(t)))
                    .collect()
            } else {
                vec![(name, Base::structure(ap))]
            };
            for (name, b) in bases {
                searched += 1;
                if let Some(object) = search_one(&b, q.scope, &ls) {
                    let mut description = describe_structure(&b.ap);
                    if let Some(t) = &b.table {
                        description.push_str("; table ");
                        description.push_str(&render_table(b.ap.carrier(), t.entries()));
                    }
                    return Ok(SearchOutcome::Witness {
                        structure: name,
                        description,
                        object,
                    });
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        up_to: q.max_size,
        structures: searched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apartness::validate_structure;
    use crate::fixtures;
    use crate::enumeration::generate::carriers;

    fn lits(s: &str) -> Vec<Literal> {
        parse_conjunction(s).unwrap()
    }

    #[test]
    fn co_quasiorders_on_c3() {
        let base = Base::structure(fixtures::c3());
        let e = enumerate(Kind::Relation, &base, &lits("co_quasiorder")).unwrap();
        // oracle: filter all 2^9 matrices through the classification
        let oracle = (0..1u64 << 9)
            .filter(|&b| {
                fixtures::c3()
                    .classify_matrix(&BitMatrix::from_flat(3, b))
                    .co_quasiorder
                    .holds
            })
            .count();
        assert_eq!(e.count, oracle as u64);
        assert_eq!(e.count, 4);
    }

    #[test]
    fn apartnesses_on_two_points() {
        let c = carriers(2).remove(0);
        let base = Base::structure(ApartnessRelation::empty_on(c.clone()));
        let e = enumerate(Kind::Apartness, &base, &[]).unwrap();
        let oracle = (0..16u64)
            .filter(|&b| validate_structure(&c, &BitMatrix::from_flat(2, b)).unwrap().accepted())
            .count();
        assert_eq!(e.count, 2);
        assert_eq!(oracle, 2);
        let rendered: Vec<String> = e.items.iter().map(|o| o.render(&c)).collect();
        assert_eq!(rendered, ["{}", "{(a,b),(b,a)}"]);
    }

    #[test]
    fn sd_subsets_of_c5() {
        let ap = fixtures::c5();
        let base = Base::structure(ap.clone());
        let e = enumerate(Kind::Subset, &base, &lits("sd")).unwrap();
        let c = ap.carrier();
        let ab = c.mask_of(&["a", "b"]).unwrap();
        let a = c.mask_of(&["a"]).unwrap();
        assert!(e.items.contains(&Object::Subset(ab)));
        assert!(!e.items.contains(&Object::Subset(a)));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let base = Base::structure(fixtures::c3());
        let a = enumerate(Kind::Relation, &base, &lits("cotransitive")).unwrap();
        let b = enumerate(Kind::Relation, &base, &lits("cotransitive")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn size_bound_is_an_error() {
        let base = Base::structure(fixtures::c5());
        let err = enumerate(Kind::Relation, &base, &[]).unwrap_err();
        assert!(matches!(err, Error::SizeBound { size: 5, bound: 4, .. }));
        let err = enumerate(Kind::Semigroup, &Base::structure(fixtures::c5()), &[]).unwrap_err();
        assert!(matches!(err, Error::SizeBound { size: 5, bound: 3, .. }));
    }

    #[test]
    fn semigroups_over_sl3_structure() {
        let base = Base::structure(fixtures::sl3().apartness().clone());
        let e = enumerate(Kind::Semigroup, &base, &lits("tight")).unwrap();
        assert_eq!(e.count, 113);
    }

    #[test]
    fn non_cotransitive_witness_on_c3() {
        let q = ImplicationQuery::parse("strongly_irreflexive & symmetric & !cotransitive", Kind::Relation, 3).unwrap();
        let base = Base::structure(fixtures::c3());
        let out = counterexample_search(&q, Some(&base)).unwrap();
        match out {
            SearchOutcome::Witness { object, .. } => assert_eq!(object, "{(a,c),(c,a)}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn implication_form_finds_the_same_witness() {
        let q = ImplicationQuery::parse("strongly_irreflexive & symmetric => cotransitive", Kind::Relation, 3).unwrap();
        let out = counterexample_search(&q, Some(&Base::structure(fixtures::c3()))).unwrap();
        assert!(matches!(out, SearchOutcome::Witness { ref object, .. } if object == "{(a,c),(c,a)}"));
        assert_eq!(q.render(), "strongly_irreflexive & symmetric => cotransitive");
    }

    #[test]
    fn sd_implies_qd_is_exhausted() {
        let q = ImplicationQuery::parse("sd => qd", Kind::Subset, 4).unwrap();
        let out = counterexample_search(&q, None).unwrap();
        assert_eq!(out, SearchOutcome::Exhausted { up_to: 4, structures: 76 });
    }

    #[test]
    fn qd_implies_sd_is_exhausted_at_finite_scale() {
        let q = ImplicationQuery::parse("qd & !sd", Kind::Subset, 4).unwrap();
        assert!(matches!(counterexample_search(&q, None).unwrap(), SearchOutcome::Exhausted { up_to: 4, .. }));
    }

    #[test]
    fn unknown_atom_in_query() {
        let err = ImplicationQuery::parse("sd => decidable", Kind::Subset, 3).unwrap_err();
        assert_eq!(err, Error::UnknownAtom("decidable".into()));
    }

    #[test]
    fn semigroup_atoms_search_semigroups() {
        // a complement positive co-quasiorder without the constructive cm-property
        let q = ImplicationQuery::parse(
            "co_quasiorder & complement_positive => constructive_cm",
            Kind::Relation,
            3,
        )
        .unwrap();
        match counterexample_search(&q, None).unwrap() {
            SearchOutcome::Witness { description, .. } => assert!(description.contains("table")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn search_size_bound() {
        let q = ImplicationQuery::parse("sd => qd", Kind::Subset, 5).unwrap();
        assert!(matches!(counterexample_search(&q, None), Err(Error::SizeBound { .. })));
    }
}
