//! Exhaustive generation of small structures, filtered enumeration,
//! counterexample search, the theorem suite and the naive oracle.

pub mod atoms;
pub mod catalog;
pub mod enumerate;
pub mod generate;
pub mod naive;
pub mod suite;

pub use atoms::{parse_conjunction, Atom, Kind, Literal};
pub use catalog::{Catalog, CatalogConfig, Provenance, Rejected};
pub use enumerate::{
    counterexample_search, enumerate, enumerate_stream, Base, Enumeration, ImplicationQuery, Object,
    SearchOutcome,
};
pub use naive::{oracle_agreement, OracleReport, ORACLE_RATE, ORACLE_SEED};
pub use suite::{theorem_suite, SuiteOptions, SuiteReport};
