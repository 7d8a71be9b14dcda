//! Worked example structures used throughout the tests and the theorem
//! suite.
//!
//! * `C3`: `{a,b,c}`, diagonal equality, `# = {(a,c),(b,c)}` (symmetrised).
//! * `C5`: `{a,..,e}`, diagonal equality, `#` = everything outside
//!   `Δ ∪ {(a,b),(b,a)}`.
//! * `SG5`: a five element semigroup over `C5`.
//! * `SL3`: the three element semilattice `a·a=a`, `b·b=b`, all other
//!   products `c`, with tight apartness.

use std::sync::Arc;

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::carrier::Carrier;
use crate::relation::BinaryRelation;
use crate::semigroup::SemigroupTable;

fn abc(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn c3() -> ApartnessRelation {
    let carrier = Carrier::discrete(abc(3)).expect("valid carrier");
    ApartnessRelation::from_pairs(carrier, &[("a", "c"), ("b", "c")]).expect("valid apartness")
}

fn c5_on(carrier: Arc<Carrier>) -> ApartnessRelation {
    let mut k = BitMatrix::identity(5);
    k.set(0, 1, true);
    k.set(1, 0, true);
    ApartnessRelation::new(carrier, k.complement()).expect("valid apartness")
}

pub fn c5() -> ApartnessRelation {
    c5_on(Carrier::discrete(abc(5)).expect("valid carrier"))
}

/// `C5` with `a = b` added to the equality; the apartness is unchanged.
pub fn c5_coarse() -> ApartnessRelation {
    c5_on(Carrier::with_equal_pairs(abc(5), &[("a", "b")]).expect("valid carrier"))
}

pub const TAU5: [(&str, &str); 9] = [
    ("c", "a"),
    ("c", "b"),
    ("d", "a"),
    ("d", "b"),
    ("d", "c"),
    ("e", "a"),
    ("e", "b"),
    ("e", "c"),
    ("e", "d"),
];

pub fn tau5(on: &ApartnessRelation) -> BinaryRelation {
    BinaryRelation::from_names(on.carrier().clone(), &TAU5).expect("valid relation")
}

/// Rows `a..e` of the `SG5` table.
pub const SG5_ROWS: [&str; 5] = ["bbddd", "bbddd", "ddcdc", "ddddd", "ddcdc"];

pub fn sg5() -> SemigroupTable {
    table(c5(), &SG5_ROWS)
}

pub const SL3_ROWS: [&str; 3] = ["acc", "cbc", "ccc"];

pub fn sl3() -> SemigroupTable {
    let carrier = Carrier::discrete(abc(3)).expect("valid carrier");
    table(ApartnessRelation::tight_on(carrier), &SL3_ROWS)
}

pub const TAU3: [(&str, &str); 3] = [("a", "b"), ("c", "a"), ("c", "b")];

pub fn tau3(sg: &SemigroupTable) -> BinaryRelation {
    BinaryRelation::from_names(sg.carrier().clone(), &TAU3).expect("valid relation")
}

/// Two element left-zero semigroup `xy = x` with tight apartness.
pub fn left_zero2() -> SemigroupTable {
    let carrier = Carrier::discrete(abc(2)).expect("valid carrier");
    table(ApartnessRelation::tight_on(carrier), &["aa", "bb"])
}

/// Builds a table from rows of single-letter element names.
pub fn table(ap: ApartnessRelation, rows: &[&str]) -> SemigroupTable {
    let entries: Vec<usize> = rows
        .iter()
        .flat_map(|r| r.bytes().map(|b| (b - b'a') as usize))
        .collect();
    SemigroupTable::new(ap, entries).expect("valid semigroup")
}
