//! File formats, threaded search and the command-line front end over
//! [`prelie_core`].

pub mod bundle;
pub mod cli;
pub mod format;
pub mod parallel;

pub use prelie_core as core;
