//! Command-line front end: polynomial and field parsing, query assembly,
//! text and JSON reports, the bundled corpus and minimal-degree scans.

pub mod app;
pub mod bench;
pub mod corpus;
pub mod field;
pub mod report;

pub use first_integrals::algebra::{parse_poly, ParseError};
