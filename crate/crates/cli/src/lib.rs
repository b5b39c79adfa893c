//! Library side of the `singulus` command: table documents, report
//! rendering and the subcommands themselves.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{Format, InspectArgs, Outcome};
pub use document::{BettiTableDocument, DocumentError};
