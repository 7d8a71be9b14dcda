//! The JSON structure document: elements, equality, apartness, an optional
//! multiplication table, and named relations and subsets.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::morphism::Mapping;
use crate::relation::BinaryRelation;
use crate::semigroup::SemigroupTable;
use crate::subset::Subset;

pub const FORMAT: u64 = 1;

pub type Pair = (String, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub format: u64,
    pub elements: Vec<String>,
    /// Defaults to the diagonal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<Vec<Pair>>,
    #[serde(default)]
    pub apartness: Vec<Pair>,
    /// `table[a][b]` is the product `ab`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub relations: BTreeMap<String, Vec<Pair>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subsets: BTreeMap<String, Vec<String>>,
}

/// A mapping from the input structure into `codomain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingDocument {
    pub format: u64,
    pub codomain: StructureDocument,
    pub map: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct Header {
    format: Option<serde_json::Value>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses JSON text with a top-level `format` field, checking the version
/// before the body so that a future format is not reported as a field error.
fn parse_versioned<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let header: Header = serde_json::from_str(text).map_err(syntax)?;
    match header.format {
        Some(serde_json::Value::Number(n)) if n.as_u64() == Some(FORMAT) => {}
        Some(serde_json::Value::Number(n)) => {
            return Err(Error::UnsupportedFormat(n.as_u64().unwrap_or(0)))
        }
        Some(_) => return Err(Error::Usage("`format` must be the integer 1".into())),
        None => return Err(Error::Usage("document lacks the top-level `format` field".into())),
    }
    serde_json::from_str(text).map_err(syntax)
}

fn bytes_to_str(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Syntax {
        line: 0,
        column: e.valid_up_to(),
        message: "document is not valid UTF-8".into(),
    })
}

/// A document with identifiers resolved and closures applied but no axiom
/// validated yet. `check` reports on this form so that an invalid structure
/// yields verdicts rather than a single error.
#[derive(Debug, Clone)]
pub struct RawStructure {
    pub carrier: Arc<Carrier>,
    pub apartness: BitMatrix,
    pub table: Option<Vec<usize>>,
    pub relations: BTreeMap<String, BitMatrix>,
    pub subsets: BTreeMap<String, u64>,
}

/// A fully validated structure.
#[derive(Debug, Clone)]
pub struct Structure {
    pub apartness: ApartnessRelation,
    pub table: Option<SemigroupTable>,
    pub relations: BTreeMap<String, BinaryRelation>,
    pub subsets: BTreeMap<String, Subset>,
}

impl StructureDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        parse_versioned(text)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::from_json(bytes_to_str(bytes)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn load(&self) -> Result<RawStructure> {
        let n = self.elements.len();
        let mut eq = BitMatrix::identity(n.min(crate::bits::MAX_ELEMENTS));
        if let Some(pairs) = &self.equality {
            // names are resolved against a provisional discrete carrier
            let probe = Carrier::discrete(self.elements.clone())?;
            let m = probe.matrix_of(pairs)?;
            eq = eq.union(&m).union(&m.transpose());
        }
        let carrier = Carrier::new(self.elements.clone(), eq)?;
        let ap = carrier.matrix_of(&self.apartness)?;
        let apartness = ap.union(&ap.transpose());

        let table = match &self.table {
            None => None,
            Some(rows) => Some(resolve_table(&carrier, rows)?),
        };
        let mut relations = BTreeMap::new();
        for (name, pairs) in &self.relations {
            relations.insert(name.clone(), carrier.matrix_of(pairs)?);
        }
        let mut subsets = BTreeMap::new();
        for (name, members) in &self.subsets {
            subsets.insert(name.clone(), carrier.mask_of(members)?);
        }
        Ok(RawStructure {
            carrier,
            apartness,
            table,
            relations,
            subsets,
        })
    }

    pub fn parse(&self) -> Result<Structure> {
        self.load()?.validate()
    }

    /// The canonical document of a structure: pairs listed once with the
    /// smaller index first, equality omitted when diagonal.
    pub fn from_structure(s: &Structure) -> Self {
        let ap = &s.apartness;
        let c = ap.carrier();
        let once = |m: &BitMatrix| -> Vec<Pair> {
            m.pairs()
                .filter(|(x, y)| x < y)
                .map(|(x, y)| (c.name(x).to_string(), c.name(y).to_string()))
                .collect()
        };
        let table = s.table.as_ref().map(|t| {
            (0..t.len())
                .map(|a| {
                    let row = (0..t.len())
                        .map(|b| (c.name(b).to_string(), c.name(t.mul(a, b)).to_string()))
                        .collect();
                    (c.name(a).to_string(), row)
                })
                .collect()
        });
        StructureDocument {
            format: FORMAT,
            elements: c.names().to_vec(),
            equality: (!c.is_diagonal()).then(|| once(c.equality())),
            apartness: once(ap.matrix()),
            table,
            relations: s.relations.iter().map(|(k, r)| (k.clone(), r.name_pairs())).collect(),
            subsets: s.subsets.iter().map(|(k, y)| (k.clone(), y.names())).collect(),
        }
    }
}

fn resolve_table(c: &Carrier, rows: &BTreeMap<String, BTreeMap<String, String>>) -> Result<Vec<usize>> {
    let n = c.len();
    for (row, cols) in rows {
        c.index_of(row)?;
        for (col, v) in cols {
            c.index_of(col)?;
            c.index_of(v)?;
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        let row = rows
            .get(c.name(a))
            .ok_or_else(|| Error::MalformedTable(format!("missing row `{}`", c.name(a))))?;
        for b in 0..n {
            let v = row.get(c.name(b)).ok_or_else(|| {
                Error::MalformedTable(format!("missing product for row `{}`, column `{}`", c.name(a), c.name(b)))
            })?;
            entries.push(c.index_of(v)?);
        }
    }
    Ok(entries)
}

impl RawStructure {
    pub fn validate(self) -> Result<Structure> {
        let apartness = ApartnessRelation::new(self.carrier.clone(), self.apartness)?;
        let table = match self.table {
            None => None,
            Some(entries) => Some(SemigroupTable::new(apartness.clone(), entries)?),
        };
        let mut relations = BTreeMap::new();
        for (name, m) in self.relations {
            relations.insert(name, BinaryRelation::new(self.carrier.clone(), m)?);
        }
        let mut subsets = BTreeMap::new();
        for (name, mask) in self.subsets {
            let closed = self.carrier.close_mask(mask);
            if closed != mask {
                let x = (closed & !mask).trailing_zeros() as usize;
                return Err(Error::axiom(
                    format!("subset `{name}` closed under equality"),
                    self.carrier.render_tuple(&[x]),
                ));
            }
            subsets.insert(name, Subset::new(self.carrier.clone(), mask));
        }
        Ok(Structure {
            apartness,
            table,
            relations,
            subsets,
        })
    }
}

/// Parses and validates a structure document.
pub fn parse_structure(bytes: &[u8]) -> Result<Structure> {
    StructureDocument::from_bytes(bytes)?.parse()
}

impl Structure {
    pub fn carrier(&self) -> &Arc<Carrier> {
        self.apartness.carrier()
    }

    pub fn bare(apartness: ApartnessRelation, table: Option<SemigroupTable>) -> Self {
        Structure {
            apartness,
            table,
            relations: BTreeMap::new(),
            subsets: BTreeMap::new(),
        }
    }

    pub fn relation(&self, name: &str) -> Result<&BinaryRelation> {
        self.relations.get(name).ok_or_else(|| Error::UnknownName {
            kind: "relation".into(),
            name: name.into(),
        })
    }

    pub fn subset(&self, name: &str) -> Result<&Subset> {
        self.subsets.get(name).ok_or_else(|| Error::UnknownName {
            kind: "subset".into(),
            name: name.into(),
        })
    }

    pub fn to_document(&self) -> StructureDocument {
        StructureDocument::from_structure(self)
    }

    /// SHA-256 of the canonical document.
    pub fn digest(&self) -> String {
        digest(self.to_document().to_json().as_bytes())
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    let hex: String = h.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl MappingDocument {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        parse_versioned(bytes_to_str(bytes)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// The codomain structure and the mapping from `dom`.
    pub fn resolve(&self, dom: &ApartnessRelation) -> Result<(Structure, Mapping)> {
        let cod = self.codomain.parse()?;
        let pairs: Vec<(&str, &str)> = self.map.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        let f = Mapping::from_names(dom.clone(), cod.apartness.clone(), &pairs)?;
        Ok((cod, f))
    }
}
