//! Documents, verbs and the corpus runner for `essx`.

pub mod commands;
pub mod corpus;
pub mod document;
pub mod report;

pub use commands::{parse_range, run_command, CommandError, RunOptions, VERBS};
pub use document::{parse_document, serialize_document, DocError, Document};
pub use report::{Report, Status};
