//! Semigroups with apartness.

mod classical;
mod subsets;
mod tau;

use std::sync::Arc;

pub use classical::{
    classical_lemma_check, classical_oracle, division_relation, ClassicalLemmaReport,
    ClassicalReport,
};
pub use subsets::{
    complement_lemma_check, ComplementLemmaReport, LemmaBranch, SemigroupSubsetClassification,
};
pub(crate) use classical::{classical_lemma_mask, classical_matrix, positive_quasiorders};
pub(crate) use subsets::classify_mask;
pub(crate) use tau::{positive_theorems, tau_properties};
pub use tau::{
    positive_coquasiorder_from_subset, PositiveTheoremReport, PositiveVariant, TauPropertyReport,
};

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::verdict::{first_violation, quads, triples, Verdict};

/// Verdicts for the semigroup axioms.
///
/// Witnesses: `(a,b,c)` for associativity, `(a,b,x,y)` for strong
/// extensionality `a·x # b·y ⇒ a # b ∨ x # y`, and `(a,b,a',b')` for
/// extensionality of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupReport {
    pub associative: Verdict,
    pub strongly_extensional: Verdict,
    pub extensional: Verdict,
}

impl SemigroupReport {
    pub fn accepted(&self) -> bool {
        self.checks().iter().all(|(_, v)| v.holds)
    }

    pub fn checks(&self) -> [(&'static str, &Verdict); 3] {
        [
            ("(A)", &self.associative),
            ("(S)", &self.strongly_extensional),
            ("extensional", &self.extensional),
        ]
    }
}

/// Checks table shape and evaluates the axioms. `entries` is row-major:
/// `entries[a * n + b]` is the product `ab`.
pub fn validate_semigroup(ap: &ApartnessRelation, entries: &[usize]) -> Result<SemigroupReport> {
    let n = ap.len();
    if entries.len() != n * n {
        return Err(Error::MalformedTable(format!(
            "expected {} entries for {n} elements, found {}",
            n * n,
            entries.len()
        )));
    }
    if let Some(i) = entries.iter().position(|&e| e >= n) {
        return Err(Error::MalformedTable(format!(
            "entry at row {}, column {} is not an element index",
            i / n,
            i % n
        )));
    }
    Ok(evaluate(ap, entries))
}

fn evaluate(ap: &ApartnessRelation, t: &[usize]) -> SemigroupReport {
    let n = ap.len();
    let c = ap.carrier();
    let mul = |a: usize, b: usize| t[a * n + b];
    let extensional = if c.is_diagonal() {
        Verdict::HOLDS
    } else {
        Verdict::from_violation(first_violation(quads(n), |[a, b, a2, b2]| {
            c.equal(*a, *a2) && c.equal(*b, *b2) && !c.equal(mul(*a, *b), mul(*a2, *b2))
        }))
    };
    let associative = Verdict::from_violation(first_violation(triples(n), |[a, b, x]| {
        !c.equal(mul(mul(*a, *b), *x), mul(*a, mul(*b, *x)))
    }));
    let strongly_extensional = Verdict::from_violation(first_violation(quads(n), |[a, b, x, y]| {
        ap.apart(mul(*a, *x), mul(*b, *y)) && !ap.apart(*a, *b) && !ap.apart(*x, *y)
    }));
    SemigroupReport {
        associative,
        strongly_extensional,
        extensional,
    }
}

/// A validated semigroup with apartness `(S, =, #, ·)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    ap: ApartnessRelation,
    table: Vec<usize>,
}

impl std::fmt::Debug for SemigroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.len();
        let rows: Vec<String> = (0..n)
            .map(|a| {
                let r: Vec<&str> = (0..n).map(|b| self.carrier().name(self.mul(a, b))).collect();
                format!("{}: {}", self.carrier().name(a), r.join(" "))
            })
            .collect();
        f.debug_struct("SemigroupTable")
            .field("apartness", &self.ap)
            .field("table", &rows)
            .finish()
    }
}

impl SemigroupTable {
    pub fn new(ap: ApartnessRelation, entries: Vec<usize>) -> Result<Self> {
        let report = validate_semigroup(&ap, &entries)?;
        if let Some((name, v)) = report.checks().into_iter().find(|(_, v)| !v.holds) {
            let w = v.render_witness(ap.carrier()).unwrap_or_default();
            return Err(Error::axiom(name, w));
        }
        Ok(SemigroupTable { ap, table: entries })
    }

    /// Skips validation; callers guarantee the axioms.
    pub(crate) fn trusted(ap: ApartnessRelation, table: Vec<usize>) -> Self {
        SemigroupTable { ap, table }
    }

    pub fn apartness(&self) -> &ApartnessRelation {
        &self.ap
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.ap.carrier()
    }

    pub fn len(&self) -> usize {
        self.ap.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn entries(&self) -> &[usize] {
        &self.table
    }

    pub fn report(&self) -> SemigroupReport {
        evaluate(&self.ap, &self.table)
    }

    /// `{ ab : a ∈ A, b ∈ B }` closed under equality.
    pub fn product_mask(&self, left: u64, right: u64) -> u64 {
        let mut out = 0u64;
        for a in crate::bits::ones(left) {
            for b in crate::bits::ones(right) {
                out |= 1 << self.mul(a, b);
            }
        }
        self.carrier().close_mask(out)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.carrier().equal(self.mul(a, b), self.mul(b, a))))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.len()).all(|a| self.carrier().equal(self.mul(a, a), a))
    }

    /// `S¹`: a fresh identity named `1` (primed until unused) that is apart
    /// from every element of `S`.
    pub fn with_identity(&self) -> Result<AdjoinedIdentity> {
        let n = self.len();
        let base = self.carrier();
        let mut name = String::from("1");
        while base.index_of(&name).is_ok() {
            name.push('\'');
        }
        let mut names = base.names().to_vec();
        names.push(name);
        let m = n + 1;
        let mut eq = BitMatrix::empty(m);
        let mut ap = BitMatrix::empty(m);
        for x in 0..n {
            eq.set_row(x, base.class_mask(x));
            ap.set_row(x, self.ap.row(x) | 1 << n);
        }
        eq.set(n, n, true);
        ap.set_row(n, crate::bits::full_mask(n));
        let carrier = Carrier::new(names, eq)?;
        let ap = ApartnessRelation::new(carrier, ap)?;
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                table.push(match (x == n, y == n) {
                    (true, _) => y,
                    (_, true) => x,
                    _ => self.mul(x, y),
                });
            }
        }
        Ok(AdjoinedIdentity {
            extended: SemigroupTable::new(ap, table)?,
            identity: n,
        })
    }
}

/// `S¹ = S ∪ {1}`. Elements of `S` keep their indices; the identity is the
/// last index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjoinedIdentity {
    pub extended: SemigroupTable,
    pub identity: usize,
}

/// First `(a,b)` with `a ∈ T` or `b ∈ T` but `ab ∉ T`.
pub(crate) fn ideal_violation(sg: &SemigroupTable, t: u64) -> Option<[usize; 2]> {
    let n = sg.len();
    crate::verdict::pairs(n).find(|&[a, b]| {
        (crate::bits::has(t, a) || crate::bits::has(t, b)) && !crate::bits::has(t, sg.mul(a, b))
    })
}
