//! Empirical and theoretical tools for studying how predictable compression
//! progress is.
//!
//! The crate enumerates every short program of three universal machines
//! (2-tag systems, Rule 110 and Brainfuck), records for each distinct output
//! the Pareto frontier of (runtime, description length) over all programs
//! that produce it, and turns those frontiers into complexity-vs-runtime
//! profiles. Prior-weighted statistics over the profiles measure how much
//! further compression remains as a function of the time since the last
//! improvement. The [`theory`] module evaluates the matching closed-form
//! predictions under the Length, Algorithmic and Speed priors, checked
//! against literal double sums.
//!
//! Pipeline, in order:
//!
//! 1. [`machines`]: interpreters and exhaustive enumerators.
//! 2. [`harness`]: sharded parallel sweeps into a mergeable [`AggregateStore`].
//! 3. [`profiles`]: frontier to profile, evaluated at observation cutoffs.
//! 4. [`priors`]: per-output Length / Algorithmic / Speed weights.
//! 5. [`stagnation`]: weighted curves of remaining progress vs stagnation.
//!
//! The `examples/` directory of this crate has one runnable program per
//! capability; `compfront` is a thin command-line front end over the same API.

pub mod cli;
mod error;
pub mod harness;
pub mod logspace;
pub mod machines;
pub mod priors;
pub mod profiles;
pub mod stagnation;
pub mod theory;
pub mod validation;

pub use error::{Error, Result};
pub use harness::{
    load_store, merge_stores, run_sweep, save_store, AggregateStore, OutputRecord, SweepConfig,
    Totals,
};
pub use machines::{
    description_bits, enumerate_programs, execute, MachineConfig, MachineKind, Program, RunOutcome,
};
pub use priors::{normalize, raw_log_weight, PriorKind, WeightTable};
pub use profiles::{build_profile, evaluate_at_cutoff, CutoffView, EmpiricalProfile};
pub use stagnation::{accumulate_curves, export_curves, CurveConfig, CurveTable};
pub use theory::{LogBusyBeaver, TheoryParams};
