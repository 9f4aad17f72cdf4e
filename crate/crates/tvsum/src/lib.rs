//! File formats, a rayon executor and the `tvsum` command line on top of
//! `tvsum-core`.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;

pub use cli::{run, Outcome};
pub use parallel::Parallel;
