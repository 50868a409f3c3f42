//! Synchronizing (reset) words for complete deterministic finite automata.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`Dfa`], [`Word`], [`StateSet`] and [`Mapping`], the basic vocabulary;
//! * [`reach`]: strongly connected components and the synchronizability test;
//! * [`pairs`]: shortest merging word for every pair of states;
//! * [`greedy`]: the Eppstein, cycle and semigroup greedy algorithms;
//! * [`exact`]: shortest reset words by breadth-first search over image sets;
//! * [`semigroup`]: closure of the transition semigroup;
//! * [`enumerate`]: exhaustive census of small strongly connected automata.
//!
//! File formats, the command line and parallel drivers live in the `resetword`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod canon;
mod dfa;
pub mod enumerate;
mod error;
pub mod exact;
pub mod greedy;
pub mod pairs;
pub mod reach;
pub mod semigroup;

pub use dfa::{cerny, CycleStructure, Dfa, Mapping, Orbit, StateSet, Word};
pub use error::{Error, Result};

/// Largest number of states a [`Dfa`] may have.
///
/// States are stored as bytes and [`StateSet`] is 256 bits wide.
pub const MAX_STATES: usize = 256;

/// Largest alphabet. Letters print as `a`..`z`.
pub const MAX_LETTERS: usize = 26;

/// Largest automaton accepted by operations that walk the full subset lattice
/// (the exact search keeps one entry per subset).
pub const SUBSET_CAP: usize = 28;
