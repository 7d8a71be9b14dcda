//! Finite element universes with an explicit equality.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::{full_mask, has, ones, BitMatrix, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::verdict::{first_violation, pairs, triples, Verdict};

/// A finite set `S` given by its element identifiers and an equality
/// relation, which may be any equivalence (not only the diagonal).
///
/// Element identifiers are distinct as raw tokens; whether two of them denote
/// equal elements is decided solely by the equality matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
    equality: BitMatrix,
    index: HashMap<String, usize>,
}

impl std::fmt::Debug for Carrier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Carrier")
            .field("elements", &self.names)
            .field("classes", &self.classes_rendered())
            .finish()
    }
}

impl Carrier {
    /// Carrier with diagonal equality.
    pub fn discrete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        Self::new(names, BitMatrix::identity(n.min(MAX_ELEMENTS)))
    }

    /// Carrier with an explicit equality matrix, which must be an
    /// equivalence.
    pub fn new(names: Vec<String>, equality: BitMatrix) -> Result<Arc<Self>> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::CarrierTooLarge(n));
        }
        if equality.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: equality.dim(),
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let carrier = Carrier {
            names,
            equality,
            index,
        };
        let report = carrier.equality_report();
        for (what, v) in [
            ("equality reflexivity", &report.reflexive),
            ("equality symmetry", &report.symmetric),
            ("equality transitivity", &report.transitive),
        ] {
            if let Some(w) = &v.witness {
                return Err(Error::axiom(what, w.render(&carrier)));
            }
        }
        Ok(Arc::new(carrier))
    }

    /// Carrier with equality given by named pairs; reflexive and symmetric
    /// closure is applied, transitivity is validated.
    pub fn with_equal_pairs(
        names: Vec<String>,
        equal: &[(impl AsRef<str>, impl AsRef<str>)],
    ) -> Result<Arc<Self>> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(Error::CarrierTooLarge(n));
        }
        let lookup: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut eq = BitMatrix::identity(n);
        for (a, b) in equal {
            let ia = *lookup
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let ib = *lookup
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            eq.set(ia, ib, true);
            eq.set(ib, ia, true);
        }
        Self::new(names, eq)
    }

    fn equality_report(&self) -> EqualityReport {
        let n = self.len();
        let e = &self.equality;
        EqualityReport {
            reflexive: Verdict::from_violation(first_violation((0..n).map(|x| [x]), |[x]| {
                !e.get(*x, *x)
            })),
            symmetric: Verdict::from_violation(first_violation(pairs(n), |[x, y]| {
                e.get(*x, *y) && !e.get(*y, *x)
            })),
            transitive: Verdict::from_violation(first_violation(triples(n), |[x, y, z]| {
                e.get(*x, *y) && e.get(*y, *z) && !e.get(*x, *z)
            })),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn equal(&self, x: usize, y: usize) -> bool {
        self.equality.get(x, y)
    }

    /// Equality class of `x` as a mask.
    #[inline]
    pub fn class_mask(&self, x: usize) -> u64 {
        self.equality.row(x)
    }

    pub fn equality(&self) -> &BitMatrix {
        &self.equality
    }

    pub fn all(&self) -> u64 {
        full_mask(self.len())
    }

    pub fn is_diagonal(&self) -> bool {
        self.equality == BitMatrix::identity(self.len())
    }

    /// Closes a mask under equality.
    pub fn close_mask(&self, mask: u64) -> u64 {
        ones(mask).fold(0, |acc, x| acc | self.equality.row(x))
    }

    /// Closes a relation under equality in both coordinates.
    pub fn close_matrix(&self, m: &BitMatrix) -> BitMatrix {
        let e = &self.equality;
        e.compose(m).compose(e)
    }

    pub fn is_closed_mask(&self, mask: u64) -> bool {
        self.close_mask(mask) == mask
    }

    pub fn is_closed_matrix(&self, m: &BitMatrix) -> bool {
        (0..self.len()).all(|x| self.close_mask(m.row(x)) == m.row(x))
            && (0..self.len()).all(|x| {
                let cls = self.equality.row(x);
                ones(cls).all(|x2| m.row(x2) == m.row(x))
            })
    }

    /// Equality classes ordered by least member, each as a mask.
    pub fn classes(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for x in 0..self.len() {
            if !has(seen, x) {
                let c = self.equality.row(x);
                seen |= c;
                out.push(c);
            }
        }
        out
    }

    pub fn render_tuple(&self, t: &[usize]) -> String {
        let parts: Vec<&str> = t.iter().map(|&i| self.name(i)).collect();
        format!("({})", parts.join(","))
    }

    pub fn render_mask(&self, mask: u64) -> String {
        let parts: Vec<&str> = ones(mask).map(|i| self.name(i)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn render_pairs(&self, m: &BitMatrix) -> String {
        let parts: Vec<String> = m.pairs().map(|(i, j)| self.render_tuple(&[i, j])).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn classes_rendered(&self) -> Vec<String> {
        self.classes().into_iter().map(|c| self.render_mask(c)).collect()
    }

    /// Parses a list of identifiers into a mask.
    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<u64> {
        names
            .iter()
            .try_fold(0u64, |acc, s| Ok(acc | 1 << self.index_of(s.as_ref())?))
    }

    /// Parses a list of identifier pairs into a matrix.
    pub fn matrix_of<A: AsRef<str>, B: AsRef<str>>(&self, pairs: &[(A, B)]) -> Result<BitMatrix> {
        let mut m = BitMatrix::empty(self.len());
        for (a, b) in pairs {
            m.set(self.index_of(a.as_ref())?, self.index_of(b.as_ref())?, true);
        }
        Ok(m)
    }
}

struct EqualityReport {
    reflexive: Verdict,
    symmetric: Verdict,
    transitive: Verdict,
}

/// Identity check first; the full comparison only runs for distinct
/// allocations.
pub fn same_carrier(a: &Arc<Carrier>, b: &Arc<Carrier>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(
            Carrier::discrete(["a", "a"]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            Carrier::discrete(Vec::<String>::new()).unwrap_err(),
            Error::EmptyCarrier
        );
    }

    #[test]
    fn equality_must_be_transitive() {
        let mut eq = BitMatrix::identity(3);
        for (x, y) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            eq.set(x, y, true);
        }
        let err = Carrier::new(vec!["a".into(), "b".into(), "c".into()], eq).unwrap_err();
        assert_eq!(
            err,
            Error::axiom("equality transitivity", "(a,b,c)".to_string())
        );
    }

    #[test]
    fn classes_are_ordered_by_least_member() {
        let c = Carrier::with_equal_pairs(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("b", "d")],
        )
        .unwrap();
        assert_eq!(c.classes(), vec![0b0001, 0b1010, 0b0100]);
        assert_eq!(c.close_mask(0b1000), 0b1010);
        assert!(!c.is_diagonal());
    }

    #[test]
    fn unknown_names_are_reported() {
        let c = Carrier::discrete(["a", "b"]).unwrap();
        assert_eq!(c.mask_of(&["a", "z"]), Err(Error::UnknownElement("z".into())));
    }
}
