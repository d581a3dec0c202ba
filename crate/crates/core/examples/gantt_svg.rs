//! Render the counter-example as an SVG Gantt chart.
//!
//! `cargo run --example gantt_svg > counterexample.svg`

use std::error::Error;

use pmtn_tardiness::gantt::{render_gantt, GanttStyle};
use pmtn_tardiness::solvers::build_counterexample_schedule;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let (instance, meta, schedule) = build_counterexample_schedule();
    Ok(render_gantt(&instance, &schedule, Some(&meta), GanttStyle::Svg { width: 1000 })?)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
