//! File formats, JSON reports, parallel verification and the `triff` command
//! line on top of `trifferent-core`.

pub mod cli;
pub mod edges;
pub mod format;
pub mod parallel;
pub mod report;

pub use cli::run;
pub use format::{parse, ParseError, TriffFile};
pub use parallel::verify_parallel;
