//! Command-line front end for `rconf-core` and the reproduction harness.

pub mod checks;
pub mod commands;
pub mod report;
