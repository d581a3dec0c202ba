//! The k = 3 counter-example end to end: build, verify, report, extract and
//! render.
//!
//! `cargo run --example counterexample`

use std::error::Error;

use pmtn_tardiness::gantt::{render_gantt, GanttStyle};
use pmtn_tardiness::reduction::check_reduction_claim;
use pmtn_tardiness::solvers::build_counterexample_schedule;
use pmtn_tardiness::verify::{report, verify_schedule};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let (instance, meta, schedule) = build_counterexample_schedule();
    let mut out = String::new();
    let verdict = verify_schedule(&instance, &schedule);
    out += &format!("verification: {}\n", if verdict.is_valid() { "Valid" } else { "Invalid" });
    let r = report(&instance, &schedule)?;
    out += &format!("total tardiness: {} (threshold {})\n", r.total_tardiness, meta.threshold);
    for (job, t) in &r.late_jobs {
        out += &format!("  late {job}: completes {}, T={t}\n", r.completion[job]);
    }
    let claim = check_reduction_claim(&instance, Some(&meta), &schedule)?;
    out += &format!("{claim}\n\n");
    out += &render_gantt(&instance, &schedule, Some(&meta), GanttStyle::Text { width: 119 })?;
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
