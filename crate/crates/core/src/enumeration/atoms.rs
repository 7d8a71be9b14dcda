//! The property vocabulary used by filters and implication queries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::quotient::co_compatible;
use crate::relation::RelationClassification;
use crate::semigroup::{classify_mask, tau_properties, SemigroupSubsetClassification, SemigroupTable, TauPropertyReport};
use crate::subset::SubsetClassification;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    Irreflexive,
    StronglyIrreflexive,
    Cotransitive,
    Symmetric,
    CoQuasiorder,
    CoEquivalence,
    CoCongruence,
    ComplementPositive,
    ConstructiveCm,
    ComplementCm,
    Sd,
    Qd,
    Convex,
    Ideal,
    CompletelyIsolated,
    Subsemigroup,
    Tight,
}

/// What an atom can be asked of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Apartness,
    Relation,
    Subset,
    Semigroup,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Apartness => "apartness",
            Kind::Relation => "relation",
            Kind::Subset => "subset",
            Kind::Semigroup => "semigroup",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "apartness" => Ok(Kind::Apartness),
            "relation" => Ok(Kind::Relation),
            "subset" => Ok(Kind::Subset),
            "semigroup" => Ok(Kind::Semigroup),
            other => Err(Error::UnknownAtom(format!("kind {other}"))),
        }
    }
}

impl Atom {
    pub const ALL: [Atom; 17] = [
        Atom::Irreflexive,
        Atom::StronglyIrreflexive,
        Atom::Cotransitive,
        Atom::Symmetric,
        Atom::CoQuasiorder,
        Atom::CoEquivalence,
        Atom::CoCongruence,
        Atom::ComplementPositive,
        Atom::ConstructiveCm,
        Atom::ComplementCm,
        Atom::Sd,
        Atom::Qd,
        Atom::Convex,
        Atom::Ideal,
        Atom::CompletelyIsolated,
        Atom::Subsemigroup,
        Atom::Tight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::Irreflexive => "irreflexive",
            Atom::StronglyIrreflexive => "strongly_irreflexive",
            Atom::Cotransitive => "cotransitive",
            Atom::Symmetric => "symmetric",
            Atom::CoQuasiorder => "co_quasiorder",
            Atom::CoEquivalence => "co_equivalence",
            Atom::CoCongruence => "co_congruence",
            Atom::ComplementPositive => "complement_positive",
            Atom::ConstructiveCm => "constructive_cm",
            Atom::ComplementCm => "complement_cm",
            Atom::Sd => "sd",
            Atom::Qd => "qd",
            Atom::Convex => "convex",
            Atom::Ideal => "ideal",
            Atom::CompletelyIsolated => "completely_isolated",
            Atom::Subsemigroup => "subsemigroup",
            Atom::Tight => "tight",
        }
    }

    pub fn parse(s: &str) -> Result<Atom> {
        Atom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAtom(s.to_string()))
    }

    /// `tight` is a property of the base structure and applies everywhere.
    pub fn applies_to(self, kind: Kind) -> bool {
        use Atom::*;
        match self {
            Tight => true,
            Irreflexive | StronglyIrreflexive | Cotransitive | Symmetric | CoQuasiorder
            | CoEquivalence | CoCongruence | ComplementPositive | ConstructiveCm
            | ComplementCm => kind == Kind::Relation,
            Sd | Qd | Convex | Ideal | CompletelyIsolated | Subsemigroup => kind == Kind::Subset,
        }
    }

    pub fn needs_table(self) -> bool {
        use Atom::*;
        matches!(
            self,
            CoCongruence | ComplementPositive | ConstructiveCm | ComplementCm | Convex | Ideal
                | CompletelyIsolated | Subsemigroup
        )
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An atom or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn parse(s: &str) -> Result<Literal> {
        let s = s.trim();
        let (positive, rest) = if let Some(r) = s.strip_prefix('!').or_else(|| s.strip_prefix('¬')) {
            (false, r)
        } else if let Some(r) = s.strip_prefix("not ") {
            (false, r)
        } else {
            (true, s)
        };
        Ok(Literal {
            atom: Atom::parse(rest.trim())?,
            positive,
        })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        f.write_str(self.atom.name())
    }
}

/// Parses a conjunction such as `co_quasiorder & !symmetric`. Literals are
/// separated by `&`, `,` or `∧`; an empty string is the empty conjunction.
pub fn parse_conjunction(s: &str) -> Result<Vec<Literal>> {
    s.split(['&', ',', '∧'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(Literal::parse)
        .collect()
}

pub fn render_conjunction(ls: &[Literal]) -> String {
    if ls.is_empty() {
        return "true".into();
    }
    ls.iter().map(Literal::to_string).collect::<Vec<_>>().join(" & ")
}

/// Checks that every literal applies to `kind` and that a table is present
/// when required.
pub fn check_scope(ls: &[Literal], kind: Kind, has_table: bool) -> Result<()> {
    for l in ls {
        if !l.atom.applies_to(kind) {
            return Err(Error::AtomScope {
                atom: l.atom.name().into(),
                scope: kind.as_str().into(),
            });
        }
        if l.atom.needs_table() && !has_table {
            return Err(Error::AtomScope {
                atom: l.atom.name().into(),
                scope: format!("{} without a semigroup table", kind.as_str()),
            });
        }
    }
    Ok(())
}

/// Lazily computed facts about one relation.
pub(crate) struct RelationFacts<'a> {
    ap: &'a ApartnessRelation,
    sg: Option<&'a SemigroupTable>,
    m: &'a BitMatrix,
    class: Option<RelationClassification>,
    tau: Option<TauPropertyReport>,
}

impl<'a> RelationFacts<'a> {
    pub(crate) fn new(ap: &'a ApartnessRelation, sg: Option<&'a SemigroupTable>, m: &'a BitMatrix) -> Self {
        RelationFacts {
            ap,
            sg,
            m,
            class: None,
            tau: None,
        }
    }

    fn class(&mut self) -> &RelationClassification {
        let (ap, m) = (self.ap, self.m);
        self.class.get_or_insert_with(|| ap.classify_matrix(m))
    }

    fn tau(&mut self) -> &TauPropertyReport {
        let (ap, m) = (self.ap, self.m);
        let sg = self.sg.expect("scope checked");
        self.tau.get_or_insert_with(|| {
            let comp = ap.a_complement_matrix(m);
            tau_properties(sg, m, &comp)
        })
    }

    /// The τ-properties are evaluated from their formulas for any relation,
    /// not only for co-quasiorders.
    pub(crate) fn atom(&mut self, a: Atom) -> bool {
        match a {
            Atom::Irreflexive => self.class().irreflexive.holds,
            Atom::StronglyIrreflexive => self.class().strongly_irreflexive.holds,
            Atom::Cotransitive => self.class().cotransitive.holds,
            Atom::Symmetric => self.class().symmetric.holds,
            Atom::CoQuasiorder => self.class().co_quasiorder.holds,
            Atom::CoEquivalence => self.class().co_equivalence.holds,
            Atom::CoCongruence => {
                let sg = self.sg.expect("scope checked");
                let m = self.m;
                self.class().co_equivalence.holds && co_compatible(sg, m).holds
            }
            Atom::ComplementPositive => self.tau().complement_positive.holds,
            Atom::ConstructiveCm => self.tau().constructive_cm.holds,
            Atom::ComplementCm => self.tau().complement_cm.holds,
            Atom::Tight => self.ap.is_tight(),
            _ => unreachable!("scope checked"),
        }
    }

    pub(crate) fn satisfies(&mut self, ls: &[Literal]) -> bool {
        ls.iter().all(|l| self.atom(l.atom) == l.positive)
    }
}

/// Lazily computed facts about one subset.
pub(crate) struct SubsetFacts<'a> {
    ap: &'a ApartnessRelation,
    sg: Option<&'a SemigroupTable>,
    mask: u64,
    class: Option<SubsetClassification>,
    sgc: Option<SemigroupSubsetClassification>,
}

impl<'a> SubsetFacts<'a> {
    pub(crate) fn new(ap: &'a ApartnessRelation, sg: Option<&'a SemigroupTable>, mask: u64) -> Self {
        SubsetFacts {
            ap,
            sg,
            mask,
            class: None,
            sgc: None,
        }
    }

    fn class(&mut self) -> &SubsetClassification {
        let (ap, mask) = (self.ap, self.mask);
        self.class.get_or_insert_with(|| ap.classify_subset_mask(mask))
    }

    fn sgc(&mut self) -> &SemigroupSubsetClassification {
        let (sg, mask) = (self.sg.expect("scope checked"), self.mask);
        self.sgc.get_or_insert_with(|| classify_mask(sg, mask))
    }

    pub(crate) fn atom(&mut self, a: Atom) -> bool {
        match a {
            Atom::Sd => self.class().is_sd.holds,
            Atom::Qd => self.class().is_qd.holds,
            Atom::Convex => self.sgc().convex.holds,
            Atom::Ideal => self.sgc().ideal.holds,
            Atom::CompletelyIsolated => self.sgc().completely_isolated.holds,
            Atom::Subsemigroup => self.sgc().subsemigroup.holds,
            Atom::Tight => self.ap.is_tight(),
            _ => unreachable!("scope checked"),
        }
    }

    pub(crate) fn satisfies(&mut self, ls: &[Literal]) -> bool {
        ls.iter().all(|l| self.atom(l.atom) == l.positive)
    }
}
