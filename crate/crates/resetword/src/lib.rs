//! File formats, named automata, a parallel census driver and the
//! `resetword` command line, on top of `resetword-core`.

pub mod catalog;
pub mod cli;
pub mod format;
pub mod report;
pub mod runner;
