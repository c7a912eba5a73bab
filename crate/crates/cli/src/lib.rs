//! Command-line front end: configuration, certificate files and the four
//! subcommands. The binary in `main.rs` only parses flags and maps outcomes
//! to exit codes.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::Outcome;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
