//! Structures and semigroups the theorem suite runs over.

use serde::{Deserialize, Serialize};

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::semigroup::SemigroupTable;

use super::generate::{apartnesses, carriers, letters, tables};

/// Largest carrier whose relations are enumerated exhaustively.
pub const RELATION_BOUND: usize = 4;
/// Largest carrier whose semigroup tables are enumerated exhaustively.
pub const SEMIGROUP_BOUND: usize = 3;
/// Largest domain and codomain for exhaustive mapping checks.
pub const MAPPING_BOUND: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Generated,
    Fixture,
    User,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Generated => "generated",
            Provenance::Fixture => "fixture",
            Provenance::User => "user",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry<T> {
    pub name: String,
    pub provenance: Provenance,
    pub value: T,
}

/// A candidate that failed its validator and was left out of the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejected {
    pub name: String,
    pub provenance: Provenance,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogConfig {
    /// Generated structures have `1..=max_structure` elements.
    pub max_structure: usize,
    /// Generated semigroups have `1..=max_semigroup` elements.
    pub max_semigroup: usize,
    pub fixtures: bool,
    pub tight_only: bool,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig {
            max_structure: RELATION_BOUND,
            max_semigroup: SEMIGROUP_BOUND,
            fixtures: true,
            tight_only: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub structures: Vec<Entry<ApartnessRelation>>,
    pub semigroups: Vec<Entry<SemigroupTable>>,
    pub rejected: Vec<Rejected>,
}

fn bound(what: &str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::SizeBound {
            what: what.into(),
            size,
            bound,
        })
    } else {
        Ok(())
    }
}

/// Generated structures of size `n` with their names, in generation order.
pub fn generated_structures(n: usize) -> Vec<(String, ApartnessRelation)> {
    let mut out = Vec::new();
    for (i, c) in carriers(n).iter().enumerate() {
        for (j, ap) in apartnesses(c).into_iter().enumerate() {
            out.push((format!("n{n}.e{i}.a{j}"), ap));
        }
    }
    out
}

impl Catalog {
    pub fn build(config: CatalogConfig) -> Result<Catalog> {
        bound("generated structure", config.max_structure, RELATION_BOUND)?;
        bound("generated semigroup", config.max_semigroup, SEMIGROUP_BOUND)?;
        let mut cat = Catalog::default();
        for n in 1..=config.max_structure {
            for (name, ap) in generated_structures(n) {
                if n <= config.max_semigroup {
                    for (k, t) in tables(&ap).into_iter().enumerate() {
                        cat.semigroups.push(Entry {
                            name: format!("{name}.t{k}"),
                            provenance: Provenance::Generated,
                            value: t,
                        });
                    }
                }
                cat.structures.push(Entry {
                    name,
                    provenance: Provenance::Generated,
                    value: ap,
                });
            }
        }
        if config.fixtures {
            cat.add_fixtures();
        }
        if config.tight_only {
            cat = cat.restrict_tight();
        }
        Ok(cat)
    }

    pub fn add_structure(&mut self, name: impl Into<String>, provenance: Provenance, ap: ApartnessRelation) {
        self.structures.push(Entry {
            name: name.into(),
            provenance,
            value: ap,
        });
    }

    /// Validates a candidate table and either adds it or records the
    /// rejection.
    pub fn add_semigroup_candidate(
        &mut self,
        name: impl Into<String>,
        provenance: Provenance,
        ap: ApartnessRelation,
        entries: Vec<usize>,
    ) -> bool {
        let name = name.into();
        match SemigroupTable::new(ap, entries) {
            Ok(t) => {
                self.semigroups.push(Entry {
                    name,
                    provenance,
                    value: t,
                });
                true
            }
            Err(e) => {
                self.rejected.push(Rejected {
                    name,
                    provenance,
                    reason: e.to_string(),
                });
                false
            }
        }
    }

    pub fn add_semigroup(&mut self, name: impl Into<String>, provenance: Provenance, t: SemigroupTable) {
        self.semigroups.push(Entry {
            name: name.into(),
            provenance,
            value: t,
        });
    }

    fn add_fixtures(&mut self) {
        let f = Provenance::Fixture;
        self.add_structure("C3", f, fixtures::c3());
        self.add_structure("C5", f, fixtures::c5());
        self.add_structure("C5 (a=b)", f, fixtures::c5_coarse());
        for (name, ap, rows) in curated() {
            let entries = rows_to_entries(&rows);
            self.add_semigroup_candidate(name, f, ap, entries);
        }
        let sl3 = fixtures::sl3();
        match sl3.with_identity() {
            Ok(s1) => self.add_semigroup("SL3 with identity", f, s1.extended),
            Err(e) => self.rejected.push(Rejected {
                name: "SL3 with identity".into(),
                provenance: f,
                reason: e.to_string(),
            }),
        }
    }

    pub fn restrict_tight(self) -> Catalog {
        Catalog {
            structures: self.structures.into_iter().filter(|e| e.value.is_tight()).collect(),
            semigroups: self
                .semigroups
                .into_iter()
                .filter(|e| e.value.apartness().is_tight())
                .collect(),
            rejected: self.rejected,
        }
    }
}

fn rows_to_entries(rows: &[&str]) -> Vec<usize> {
    rows.iter()
        .flat_map(|r| r.bytes().map(|b| (b - b'a') as usize))
        .collect()
}

fn tight(n: usize) -> ApartnessRelation {
    ApartnessRelation::tight_on(Carrier::discrete(letters(n)).expect("valid carrier"))
}

/// Worked examples plus a few four element semigroups covering a group, a
/// band and a non-diagonal equality.
fn curated() -> Vec<(&'static str, ApartnessRelation, Vec<&'static str>)> {
    // a = b, and d apart from the rest
    let coarse4 = {
        let c = Carrier::with_equal_pairs(letters(4), &[("a", "b")]).expect("valid carrier");
        let mut m = BitMatrix::empty(4);
        for x in 0..3 {
            m.set(x, 3, true);
            m.set(3, x, true);
        }
        ApartnessRelation::new(c, m).expect("valid apartness")
    };
    vec![
        ("SG5", fixtures::c5(), fixtures::SG5_ROWS.to_vec()),
        ("SL3", tight(3), fixtures::SL3_ROWS.to_vec()),
        ("left zero 2", tight(2), vec!["aa", "bb"]),
        ("Z4", tight(4), vec!["abcd", "bcda", "cdab", "dabc"]),
        ("rectangular band 2x2", tight(4), vec!["abab", "abab", "cdcd", "cdcd"]),
        ("left zero 4 (a=b)", coarse4, vec!["aaaa", "bbbb", "cccc", "dddd"]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let cfg = CatalogConfig {
            max_structure: 3,
            ..CatalogConfig::default()
        };
        let a = Catalog::build(cfg).unwrap();
        let b = Catalog::build(cfg).unwrap();
        let names = |c: &Catalog| -> Vec<String> {
            c.structures.iter().map(|e| e.name.clone()).chain(c.semigroups.iter().map(|e| e.name.clone())).collect()
        };
        assert_eq!(names(&a), names(&b));
        assert!(a.rejected.is_empty());
    }

    #[test]
    fn structure_counts() {
        // pairs of partitions π ≤ σ of an n-set
        let counts: Vec<usize> = (1..=4).map(|n| generated_structures(n).len()).collect();
        assert_eq!(counts, [1, 3, 12, 60]);
    }

    #[test]
    fn fixtures_are_accepted() {
        let cat = Catalog::build(CatalogConfig {
            max_structure: 1,
            max_semigroup: 1,
            ..CatalogConfig::default()
        })
        .unwrap();
        assert!(cat.rejected.is_empty(), "{:?}", cat.rejected);
        let fixture_names: Vec<&str> = cat
            .semigroups
            .iter()
            .filter(|e| e.provenance == Provenance::Fixture)
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(fixture_names.len(), 7);
        assert!(fixture_names.contains(&"Z4"));
    }

    #[test]
    fn corrupted_fixture_is_rejected() {
        let mut cat = Catalog::default();
        // x·y = y + 1 (mod 3) is not associative
        let ok = cat.add_semigroup_candidate("broken", Provenance::User, tight(3), vec![1, 2, 0, 1, 2, 0, 1, 2, 0]);
        assert!(!ok);
        assert_eq!(cat.rejected.len(), 1);
        assert!(cat.rejected[0].reason.contains("(A)"));
    }

    #[test]
    fn size_bounds_are_refused() {
        let err = Catalog::build(CatalogConfig {
            max_semigroup: 4,
            ..CatalogConfig::default()
        })
        .unwrap_err();
        assert!(matches!(err, Error::SizeBound { bound: 3, .. }));
    }
}
