//! momark: a benchmarking harness for black-box multi-objective optimizers.
//!
//! The harness runs solvers on bound-constrained test problems, tracks the
//! non-dominated archive per run, records the first function evaluation at
//! which each of 70 log-spaced indicator targets is reached, and reports
//! runtime-to-target data profiles aggregated over problem categories.

pub mod indicators;
pub mod orchestrator;
pub mod pareto;
pub mod problems;
pub mod profiles;
pub mod runtime;
pub mod solvers;

pub use pareto::{Archive, ArchiveEntry, DecisionVector, InsertOutcome, ObjectiveVector};
