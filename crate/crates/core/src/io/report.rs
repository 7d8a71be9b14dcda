//! Command reports and their two renderings.
//!
//! The machine rendering is pretty JSON and parses back to an identical
//! report. The text rendering puts each verdict on its own line:
//!
//! ```text
//! PASS  Ap1
//! FAIL  Ap4  witness (a,b)
//! prop  complement_positive = true
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

use super::document::FORMAT;

const WITNESS: &str = "  witness ";
const DETAIL: &str = "  detail ";

/// A claim that must hold; any failed check makes the exit status 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An informational verdict, such as whether a relation is symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Property {
    pub name: String,
    pub value: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub format: u64,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub properties: Vec<Property>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One verdict line as recovered from either rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictLine {
    pub check: bool,
    pub name: String,
    pub value: bool,
    pub witness: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            format: FORMAT,
            command: command.into(),
            digest: None,
            checks: Vec::new(),
            properties: Vec::new(),
            data: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness,
            detail,
        });
    }

    pub fn check_verdict(&mut self, name: impl Into<String>, v: &Verdict, c: &Carrier) {
        self.check(name, v.holds, v.render_witness(c), None);
    }

    pub fn property(&mut self, name: impl Into<String>, v: &Verdict, c: &Carrier) {
        self.properties.push(Property {
            name: name.into(),
            value: v.holds,
            witness: v.render_witness(c),
        });
    }

    pub fn flag(&mut self, name: impl Into<String>, value: bool) {
        self.properties.push(Property {
            name: name.into(),
            value,
            witness: None,
        });
    }

    pub fn datum(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.data
            .insert(key.into(), serde_json::to_value(value).expect("report data serializes"));
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_machine(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(d) = &self.digest {
            out.push_str(&format!("digest: {d}\n"));
        }
        for c in &self.checks {
            out.push_str(if c.passed { "PASS  " } else { "FAIL  " });
            out.push_str(&c.name);
            if let Some(w) = &c.witness {
                out.push_str(WITNESS);
                out.push_str(w);
            }
            if let Some(d) = &c.detail {
                out.push_str(DETAIL);
                out.push_str(d);
            }
            out.push('\n');
        }
        for p in &self.properties {
            out.push_str(&format!("prop  {} = {}", p.name, p.value));
            if let Some(w) = &p.witness {
                out.push_str(WITNESS);
                out.push_str(w);
            }
            out.push('\n');
        }
        for (k, v) in &self.data {
            let rendered = match v {
                Value::String(s) if !s.contains('\n') => s.clone(),
                Value::String(s) => format!("\n{}", s.trim_end()),
                v => serde_json::to_string(v).expect("values serialize"),
            };
            out.push_str(&format!("data  {k}: {rendered}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note  {n}\n"));
        }
        let (ok, total) = (self.checks.iter().filter(|c| c.passed).count(), self.checks.len());
        out.push_str(&format!("result: {}, {ok} of {total} checks passed\n", if self.passed() { "ok" } else { "FAILED" }));
        out
    }

    pub fn verdict_lines(&self) -> Vec<VerdictLine> {
        let checks = self.checks.iter().map(|c| VerdictLine {
            check: true,
            name: c.name.clone(),
            value: c.passed,
            witness: c.witness.clone(),
        });
        let props = self.properties.iter().map(|p| VerdictLine {
            check: false,
            name: p.name.clone(),
            value: p.value,
            witness: p.witness.clone(),
        });
        checks.chain(props).collect()
    }
}

fn split_witness(rest: &str) -> (&str, Option<String>) {
    let rest = rest.split(DETAIL).next().unwrap_or(rest);
    match rest.split_once(WITNESS) {
        Some((name, w)) => (name, Some(w.to_string())),
        None => (rest, None),
    }
}

/// Recovers the verdict lines from a text rendering.
pub fn parse_text_verdicts(text: &str) -> Vec<VerdictLine> {
    let mut out = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("PASS  ").or_else(|| line.strip_prefix("FAIL  ")) {
            let (name, witness) = split_witness(rest);
            out.push(VerdictLine {
                check: true,
                name: name.to_string(),
                value: line.starts_with("PASS"),
                witness,
            });
        } else if let Some(rest) = line.strip_prefix("prop  ") {
            let (head, witness) = split_witness(rest);
            if let Some((name, value)) = head.rsplit_once(" = ") {
                out.push(VerdictLine {
                    check: false,
                    name: name.to_string(),
                    value: value == "true",
                    witness,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("apw check c3.json");
        r.digest = Some("sha256:00".into());
        r.check("Ap1", true, None, None);
        r.check("Ap3", false, Some("(a,c,b)".into()), Some("co-transitivity".into()));
        r.flag("tight", false);
        r.properties.push(Property {
            name: "constructive_cm".into(),
            value: false,
            witness: Some("(a,b,a)".into()),
        });
        r.datum("classes", vec!["{a,b}", "{c}"]);
        r.datum("document", "{\n  \"format\": 1\n}\n");
        r.notes.push("a note".into());
        r
    }

    #[test]
    fn machine_round_trip() {
        let r = sample();
        assert_eq!(Report::from_machine(&r.to_machine()).unwrap(), r);
    }

    #[test]
    fn text_and_machine_carry_the_same_verdicts() {
        let r = sample();
        assert_eq!(parse_text_verdicts(&r.to_text()), r.verdict_lines());
        let back = Report::from_machine(&r.to_machine()).unwrap();
        assert_eq!(parse_text_verdicts(&r.to_text()), back.verdict_lines());
    }

    #[test]
    fn exit_code_follows_checks() {
        let mut r = sample();
        assert_eq!(r.exit_code(), 1);
        r.checks.retain(|c| c.passed);
        assert_eq!(r.exit_code(), 0);
        assert!(r.to_text().contains("result: ok, 1 of 1 checks passed"));
    }
}
