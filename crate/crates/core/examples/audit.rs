//! Audit the extraction rule on a few Partition instances.
//!
//! `cargo run --release --example audit`

use std::error::Error;

use pmtn_tardiness::reduction::PartitionInstance;
use pmtn_tardiness::solvers::{audit_reduction, SearchLimits};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for values in [vec![1, 2, 3], vec![1, 1], vec![1, 1, 2], vec![2, 4]] {
        let p = PartitionInstance::from_values(values)?;
        let rep = audit_reduction(&p, &SearchLimits::default(), None);
        out += &format!(
            "a={:?} b={} solvable={} candidates={} refutations={}\n",
            p.values(),
            p.b(),
            rep.partition_solution.is_some(),
            rep.entries.len(),
            rep.refutations().count()
        );
        for entry in rep.refutations().take(3) {
            out += &format!("  {:?}: {}\n", entry.source, entry.verdict);
        }
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
