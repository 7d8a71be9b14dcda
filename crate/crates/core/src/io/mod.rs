//! Structure documents, reports and the commands behind `apw`.

pub mod command;
pub mod document;
pub mod report;

pub use command::{run_command, Command, Invocation, Outcome};
pub use document::{digest, parse_structure, MappingDocument, RawStructure, Structure, StructureDocument};
pub use report::{parse_text_verdicts, Check, Property, Report};
