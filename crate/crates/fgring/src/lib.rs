//! Text formats, JSON reports, configuration and the `fgring` command line
//! on top of `fgring-core`.

pub mod cache;
pub mod cli;
pub mod config;
pub mod parse;
pub mod report;

pub use cli::{run, Outcome};
pub use parse::{parse_polynomial, parse_presentation, print_presentation, ParseError};
