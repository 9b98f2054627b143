//! Command-line front end for `fincat`: a JSON workspace format, its loader,
//! the bundled fixtures and the command implementations.

pub mod commands;
pub mod corpus;
pub mod format;
pub mod workspace;
