//! File formats, generators, law suites and the command line for
//! [`procreal_core`].

pub use procreal_core as core;

pub mod cli;
pub mod corpus;
pub mod exercises;
pub mod formats;
pub mod gen;
pub mod report;
