//! CCS with simultaneous actions, failures equivalence, the process
//! combinators of linear realizability, proof extraction, and semantic types.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod combinators;
pub mod equivalence;
pub mod extraction;
pub mod logic;
pub mod names;
pub mod semantics;
pub mod semtypes;
pub mod syntax;

pub use names::{Action, Label, Name, Registry, Renaming, Restriction};
pub use syntax::Term;
