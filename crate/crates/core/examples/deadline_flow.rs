//! Deadline feasibility by max-flow and McNaughton's wrap-around.
//!
//! `cargo run --example deadline_flow`

use std::error::Error;

use pmtn_tardiness::deadline::{build_schedule_from_flow, feasible_with_deadlines, DeadlineJob, DeadlineProblem};
use pmtn_tardiness::verify::verify_schedule;
use pmtn_tardiness::TimePoint;

fn job(id: &str, p: TimePoint, r: u64, d: u64) -> DeadlineJob {
    DeadlineJob { id: id.into(), processing: p, release: r.into(), deadline: d.into() }
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let problem = DeadlineProblem::new(
        2,
        vec![
            job("a", 3.into(), 0, 3),
            job("b", TimePoint::new(5, 2)?, 0, 4),
            job("c", 2.into(), 1, 4),
            job("d", TimePoint::new(1, 2)?, 3, 4),
        ],
    )?;
    let mut out = String::new();
    let Some(assignment) = feasible_with_deadlines(&problem) else {
        return Ok("infeasible\n".into());
    };
    for (job, row) in problem.jobs().iter().zip(&assignment.amounts) {
        let cells: Vec<String> = row.iter().map(|a| a.to_string()).collect();
        out += &format!("{}: {}\n", job.id, cells.join(" "));
    }
    let schedule = build_schedule_from_flow(&problem, &assignment)?;
    for piece in schedule.pieces() {
        out += &format!("{piece}\n");
    }
    let instance = problem.to_instance()?;
    out += &format!("valid: {}\n", verify_schedule(&instance, &schedule).is_valid());

    let tighter = DeadlineProblem::new(1, problem.jobs().to_vec())?;
    out += &format!("one machine feasible: {}\n", feasible_with_deadlines(&tighter).is_some());
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
