//! Build the reduction instance of a Partition instance and print its job table.
//!
//! `cargo run --example reduction_instance -- 1 2 3`

use std::error::Error;

use pmtn_tardiness::reduction::{build_kw10_instance, PartitionInstance};

pub fn run_example_with(values: Vec<u64>) -> Result<String, Box<dyn Error>> {
    let p = PartitionInstance::from_values(values)?;
    let (instance, meta) = build_kw10_instance(&p);
    let mut out = format!(
        "k={} b={} machines={} jobs={} L={} threshold={}\n",
        meta.k,
        meta.b,
        instance.machines(),
        instance.jobs().len(),
        meta.l,
        meta.threshold
    );
    for job in instance.jobs() {
        out += &format!(
            "{:<8} {:<10} p={:<6} d={}\n",
            job.id(),
            job.kind(),
            job.processing(),
            job.due()
        );
    }
    Ok(out)
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    run_example_with(vec![1, 2, 3])
}

fn main() -> Result<(), Box<dyn Error>> {
    let values: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let text = if values.is_empty() {
        run_example()?
    } else {
        run_example_with(values)?
    };
    print!("{text}");
    Ok(())
}
