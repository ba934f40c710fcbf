//! Command-line front end for `periodrel-core`: JSON formats, run manifests
//! and subcommand dispatch.

pub mod cli;
pub mod json;
pub mod manifest;
pub mod report;

pub use cli::{dispatch, Outcome};
