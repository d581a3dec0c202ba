use std::collections::BTreeSet;

use thiserror::Error;

use crate::deadline::{schedule_with_deadlines, DeadlineProblem};
use crate::model::{JobId, JobKind, Piece, Schedule, SchedulingInstance};
use crate::reduction::{ba_job_id, build_kw10_instance, PartitionInstance, ReductionMeta};
use crate::time::TimePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("index set {indices:?} sums to {sum}, not b = {b}")]
    NotASolution { indices: BTreeSet<usize>, sum: u64, b: u64 },
    #[error("index {0} is outside 1..=k")]
    IndexOutOfRange(usize),
    /// The on-time jobs do not fit before their due dates. This would break
    /// the easy direction of the reduction and is never absorbed silently.
    #[error("necessity gap: on-time jobs of witness {0:?} are deadline-infeasible")]
    NecessityGap(BTreeSet<usize>),
}

/// Which BA copies run late in a witness and the deadline of every job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPlan {
    pub solution: BTreeSet<usize>,
    /// Copy 1 of `BA{i}` for every `i` in the solution.
    pub late_jobs: Vec<JobId>,
    /// Deadlines of the remaining jobs, in instance order.
    pub on_time: Vec<(JobId, TimePoint)>,
}

impl WitnessPlan {
    pub fn new(
        p: &PartitionInstance,
        instance: &SchedulingInstance,
        solution: &BTreeSet<usize>,
    ) -> Result<Self, WitnessError> {
        if let Some(&i) = solution.iter().find(|&&i| i == 0 || i > p.k()) {
            return Err(WitnessError::IndexOutOfRange(i));
        }
        let sum = p.subset_sum(solution);
        if sum != p.b() {
            return Err(WitnessError::NotASolution {
                indices: solution.clone(),
                sum,
                b: p.b(),
            });
        }
        let late_jobs: Vec<JobId> = solution.iter().map(|&i| ba_job_id(i, 1)).collect();
        let on_time = instance
            .jobs()
            .iter()
            .filter(|j| !matches!(j.kind(), JobKind::BAJob { index, copy: 1 } if solution.contains(&index)))
            .map(|j| (j.id().clone(), j.due()))
            .collect();
        Ok(WitnessPlan {
            solution: solution.clone(),
            late_jobs,
            on_time,
        })
    }
}

/// Schedule realizing a Partition solution with total tardiness exactly `b³ + b`.
///
/// One copy of `BA{i}` per `i` in the solution runs `[L, L + b²a_i]` alone on
/// its own machine; every other job meets its due date inside `[0, L]`.
pub fn build_witness_schedule(
    p: &PartitionInstance,
    solution: &BTreeSet<usize>,
) -> Result<Schedule, WitnessError> {
    let (instance, meta) = build_kw10_instance(p);
    witness_for_instance(p, &instance, &meta, solution)
}

pub(crate) fn witness_for_instance(
    p: &PartitionInstance,
    instance: &SchedulingInstance,
    meta: &ReductionMeta,
    solution: &BTreeSet<usize>,
) -> Result<Schedule, WitnessError> {
    let plan = WitnessPlan::new(p, instance, solution)?;
    let mut jobs = Vec::with_capacity(plan.on_time.len());
    for (id, deadline) in &plan.on_time {
        let job = instance.job(id).expect("plan ids come from the instance");
        jobs.push(crate::deadline::DeadlineJob {
            id: id.clone(),
            processing: job.processing(),
            release: job.release(),
            deadline: *deadline,
        });
    }
    let problem = DeadlineProblem::new(instance.machines(), jobs)
        .expect("reduction instances have machines and positive processing");
    let on_time = schedule_with_deadlines(&problem)
        .ok_or_else(|| WitnessError::NecessityGap(solution.clone()))?;

    let mut pieces = on_time.into_pieces();
    for (machine, id) in plan.late_jobs.iter().enumerate() {
        let job = instance.job(id).expect("late copies exist");
        pieces.push(Piece::new(id, machine, meta.l, meta.l + job.processing()));
    }
    Ok(Schedule::new(pieces).canonicalized())
}
