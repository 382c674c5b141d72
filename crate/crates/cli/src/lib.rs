//! Command-line front end for `lexpaint-core`.
//!
//! * [`dsl`]: graph specifications such as `lex(C4,K2)`;
//! * [`transcript`]: JSON transcripts and their replay;
//! * [`experiment`]: seeded verification campaigns and their reports;
//! * [`table`]: exact values next to the product bound;
//! * [`cli`]: the `lexpaint` command.

pub mod cli;
pub mod dsl;
pub mod experiment;
pub mod table;
pub mod transcript;
