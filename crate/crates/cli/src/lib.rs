//! Library behind the `bskein` binary: the built-in catalog, command
//! implementations and the property suite.

pub mod catalog;
pub mod commands;
pub mod suite;

pub use catalog::{catalog, lookup, CatalogEntry};
pub use commands::{CliError, CliResult};
pub use suite::{run_suite, CriterionResult, SuiteConfig};
