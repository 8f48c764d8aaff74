//! Library surface of the novflow CLI: document parsing and command
//! dispatch, exposed for integration tests.

pub mod commands;
pub mod document;
pub mod report;
pub mod text;

pub use commands::run;
pub use document::{parse_document, serialize_document, DocError, Document};
