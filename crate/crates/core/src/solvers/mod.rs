//! Partition solving, the witness and counter-example constructions, exact
//! tiny-instance solvers, EDF and the reduction audit.

mod audit;
mod counterexample;
mod edf;
mod exact;
mod partition;
mod witness;

pub use audit::{audit_reduction, AuditEntry, AuditReport, CandidateSource};
pub use counterexample::{
    build_counterexample_schedule, counterexample_deadlines, counterexample_fixture,
    counterexample_partition, LATE_COPIES,
};
pub use edf::edf_heuristic;
pub use exact::{
    exact_min_total_tardiness, exhaustive_oracle, exhaustive_oracle_on_grid, natural_horizon,
    ExactSolution, SearchLimits, SearchStatus, SolveError, ORACLE_MAX_HORIZON, ORACLE_MAX_JOBS,
};
pub use partition::{all_partition_solutions, solve_partition};
pub use witness::{build_witness_schedule, WitnessError, WitnessPlan};
