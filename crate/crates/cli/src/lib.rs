//! File formats, the command-line front end and the acceptance suite for
//! `ndpl-core`.

pub mod census;
pub mod cli;
pub mod doc;
pub mod suite;
