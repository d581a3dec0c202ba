//! Preemptive scheduling on identical parallel machines with the
//! total-tardiness objective (`P|pmtn|ΣT_j`).
//!
//! The crate builds the Partition reduction instances for this problem,
//! verifies preemptive schedules with exact rational arithmetic, constructs
//! schedules from deadline vectors through max-flow and McNaughton's rule, and
//! audits whether a schedule under the tardiness threshold really encodes a
//! Partition solution.

pub mod cli;
pub mod deadline;
pub mod gantt;
pub mod io;
pub mod model;
pub mod reduction;
pub mod solvers;
pub mod time;
pub mod verify;

pub use model::{Job, JobId, JobKind, Piece, Schedule, SchedulingInstance};
pub use time::TimePoint;
