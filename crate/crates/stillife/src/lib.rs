//! File formats, a solver front end and the `stillife` command line on top
//! of `stillife-core`.

pub mod cli;
pub mod dimacs;
mod error;
pub mod fixtures;
pub mod pattern_text;
pub mod reproduce;
pub mod run;
pub mod table_dump;
pub mod wcsp_text;

pub use error::ParseError;
