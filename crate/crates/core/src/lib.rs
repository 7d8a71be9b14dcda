//! Verification kernel for finite sets and semigroups with apartness.
//!
//! Carriers hold at most 64 elements; subsets are bitmasks and relations are
//! bit matrices. Every failed universal check reports the lexicographically
//! first violating tuple.

pub mod apartness;
pub mod bits;
pub mod carrier;
pub mod cayley;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod morphism;
pub mod quotient;
pub mod relation;
pub mod semigroup;
pub mod subset;
pub mod verdict;

pub use apartness::{validate_structure, ApartnessRelation, AxiomReport};
pub use carrier::Carrier;
pub use error::{Error, Result};
pub use morphism::{analyze_mapping, first_isomorphism, second_isomorphism, Decomposition, Mapping, MappingAnalysis};
pub use quotient::{build_quotient, check_cocongruence, coequivalence_quotient, QuotientPresentation};
pub use relation::{relation_classes, BinaryRelation, RelationClassification};
pub use semigroup::{validate_semigroup, SemigroupReport, SemigroupTable};
pub use subset::{Subset, SubsetClassification};
pub use verdict::{Verdict, Witness};
