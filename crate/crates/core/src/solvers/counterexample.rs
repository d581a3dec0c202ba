//! The k = 3 instance `a = (1, 2, 3)`, `b = 3` and a schedule under the
//! threshold whose late BA jobs do not encode a Partition solution.
//!
//! Deadlines used: `LONG` 27, `BA3.*` 107, `BA2.*` 108, `BA1.1..3` 109, a-jobs
//! 110 and `BA1.4..6` 119. Total work is 357 = 3 · 119 and only the last three
//! copies may run in `[110, 119]`, so every schedule meeting these deadlines
//! finishes exactly those copies at 119, each 10 units late.

use crate::deadline::{schedule_with_deadlines, DeadlineProblem};
use crate::model::{JobKind, Piece, Schedule, SchedulingInstance};
use crate::reduction::{
    a_job_id, ba_job_id, build_kw10_instance, long_job_id, PartitionInstance, ReductionMeta,
};
use crate::time::TimePoint;

pub fn counterexample_partition() -> PartitionInstance {
    PartitionInstance::new(vec![1, 2, 3], 3).expect("1 + 2 + 3 = 2 * 3")
}

/// Copies of `BA1` that are allowed to finish after `L`.
pub const LATE_COPIES: [usize; 3] = [4, 5, 6];

pub fn counterexample_deadlines(instance: &SchedulingInstance) -> Vec<TimePoint> {
    instance
        .jobs()
        .iter()
        .map(|j| match j.kind() {
            JobKind::BAJob { index: 1, copy } if LATE_COPIES.contains(&copy) => 119.into(),
            _ => j.due(),
        })
        .collect()
}

pub fn build_counterexample_schedule() -> (SchedulingInstance, ReductionMeta, Schedule) {
    let (instance, meta) = build_kw10_instance(&counterexample_partition());
    let problem = DeadlineProblem::from_instance(&instance, &counterexample_deadlines(&instance));
    let schedule = schedule_with_deadlines(&problem)
        .expect("the counter-example deadline vector has an explicit witness layout");
    (instance, meta, schedule)
}

/// A hand-made layout meeting the same deadline vector, kept as an
/// independent certificate. Only `A3` is preempted: `[99,100]` on machine 1
/// and `[108,110]` on machine 2.
pub fn counterexample_fixture() -> Schedule {
    let p = |id, m, s: u64, e: u64| Piece::new(id, m, s.into(), e.into());
    let ba = ba_job_id;
    Schedule::new(vec![
        p(long_job_id(), 0, 0, 27),
        p(ba(3, 1), 0, 27, 54),
        p(ba(3, 2), 0, 54, 81),
        p(ba(2, 1), 0, 81, 99),
        p(ba(1, 1), 0, 99, 108),
        p(a_job_id(2), 0, 108, 110),
        p(ba(1, 4), 0, 110, 119),
        p(ba(3, 3), 1, 0, 27),
        p(ba(3, 4), 1, 27, 54),
        p(ba(3, 5), 1, 54, 81),
        p(ba(2, 2), 1, 81, 99),
        p(a_job_id(3), 1, 99, 100),
        p(ba(1, 2), 1, 100, 109),
        p(a_job_id(1), 1, 109, 110),
        p(ba(1, 5), 1, 110, 119),
        p(ba(3, 6), 2, 0, 27),
        p(ba(2, 3), 2, 27, 45),
        p(ba(2, 4), 2, 45, 63),
        p(ba(2, 5), 2, 63, 81),
        p(ba(2, 6), 2, 81, 99),
        p(ba(1, 3), 2, 99, 108),
        p(a_job_id(3), 2, 108, 110),
        p(ba(1, 6), 2, 110, 119),
    ])
}
