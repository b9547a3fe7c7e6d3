//! Files, reports and the command line for `fischer-core`.
//!
//! * [`pts`]: the `.pts` triple-system format.
//! * [`families`]: named constructions selectable with `--family`.
//! * [`parallel`]: the threaded quadruple scan (`FISCHER_THREADS`).
//! * [`report`]: whole-system Jordan checks and their JSON reports.
//! * [`survey`]: the rank-bounded classification table.
//! * [`cli`]: argument parsing and exit codes.

pub mod cli;
pub mod families;
pub mod parallel;
pub mod pts;
pub mod report;
pub mod survey;
