//! Command-line front end: polynomial parsing, prime scans over a thread
//! pool, and JSON reports.

pub mod cli;
pub mod parse;
pub mod report;
pub mod scan;
