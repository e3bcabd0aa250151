//! Command-line workflows and the HTTP service for the `caseframe` engine.

pub mod commands;
pub mod server;
