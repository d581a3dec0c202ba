//! Exact minimum total tardiness on a tiny instance, checked against the
//! exhaustive oracle and compared with EDF.
//!
//! `cargo run --release --example exact_solver`

use std::error::Error;

use pmtn_tardiness::model::{Job, SchedulingInstance};
use pmtn_tardiness::solvers::{edf_heuristic, exact_min_total_tardiness, exhaustive_oracle, SearchLimits};
use pmtn_tardiness::verify::report;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let instance = SchedulingInstance::new(
        2,
        vec![
            Job::generic("j1", 4, 3)?,
            Job::generic("j2", 3, 2)?,
            Job::generic("j3", 2, 2)?,
            Job::generic("j4", 1, 1)?,
        ],
    )?;
    let edf = report(&instance, &edf_heuristic(&instance))?.total_tardiness;
    let sol = exact_min_total_tardiness(&instance, &SearchLimits::default())?;
    let oracle = exhaustive_oracle(&instance, sol.horizon)?;
    let mut out = format!(
        "edf: {edf}\nbranch and bound: {} ({:?}, {} nodes)\noracle: {oracle}\n",
        sol.total_tardiness, sol.status, sol.nodes
    );
    for piece in sol.schedule.pieces() {
        out += &format!("{piece}\n");
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
