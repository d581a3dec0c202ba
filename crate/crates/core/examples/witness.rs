//! Witness schedules: every Partition solution yields a schedule with total
//! tardiness exactly b³ + b whose late BA jobs give the solution back.
//!
//! `cargo run --example witness`

use std::error::Error;

use pmtn_tardiness::reduction::{
    build_kw10_instance, extract_partition_candidate, format_index_set, PartitionInstance,
};
use pmtn_tardiness::solvers::{all_partition_solutions, build_witness_schedule};
use pmtn_tardiness::verify::report;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for values in [vec![1, 2, 3], vec![1, 1], vec![2, 2, 3, 3]] {
        let p = PartitionInstance::from_values(values)?;
        let (instance, meta) = build_kw10_instance(&p);
        for solution in all_partition_solutions(&p, 8) {
            let schedule = build_witness_schedule(&p, &solution)?;
            let r = report(&instance, &schedule)?;
            let ex = extract_partition_candidate(&instance, Some(&meta), &schedule)?;
            out += &format!(
                "a={:?} I={} ∑T={} (b³+b={}) extracted={} solves={}\n",
                p.values(),
                format_index_set(&solution),
                r.total_tardiness,
                meta.threshold,
                format_index_set(&ex.index_set),
                ex.solves_partition
            );
        }
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
