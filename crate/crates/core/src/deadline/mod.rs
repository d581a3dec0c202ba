//! Preemptive feasibility with release dates and deadlines on identical machines.
//!
//! Feasibility is decided by a max-flow over the event grid formed by all
//! releases and deadlines (source → job with capacity `p_j`, job → interval
//! with capacity equal to the interval length when the job is available for
//! the whole interval, interval → sink with capacity `m · length`). A
//! saturating flow is turned into a schedule by McNaughton's wrap-around rule
//! inside every interval.

mod flow;
mod mcnaughton;

pub use flow::{Arc, FlowNetwork, MaxFlow};
pub use mcnaughton::{build_schedule_from_flow, wrap_around};

use thiserror::Error;

use crate::model::{Job, JobId, JobKind, ModelError, Schedule, SchedulingInstance};
use crate::time::TimePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeadlineError {
    #[error("assignment does not match the problem: {0}")]
    InvalidAssignment(String),
    #[error("a deadline problem needs at least one machine")]
    NoMachines,
    #[error("job {0} has zero processing time")]
    ZeroProcessing(JobId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadlineJob {
    pub id: JobId,
    pub processing: TimePoint,
    pub release: TimePoint,
    pub deadline: TimePoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadlineProblem {
    machines: usize,
    jobs: Vec<DeadlineJob>,
}

impl DeadlineProblem {
    pub fn new(machines: usize, jobs: Vec<DeadlineJob>) -> Result<Self, DeadlineError> {
        if machines == 0 {
            return Err(DeadlineError::NoMachines);
        }
        if let Some(j) = jobs.iter().find(|j| j.processing.is_zero()) {
            return Err(DeadlineError::ZeroProcessing(j.id.clone()));
        }
        Ok(DeadlineProblem { machines, jobs })
    }

    /// The instance's jobs with one deadline per job, in instance order.
    pub fn from_instance(instance: &SchedulingInstance, deadlines: &[TimePoint]) -> Self {
        assert_eq!(instance.jobs().len(), deadlines.len(), "one deadline per job");
        let jobs = instance
            .jobs()
            .iter()
            .zip(deadlines)
            .map(|(job, &deadline)| DeadlineJob {
                id: job.id().clone(),
                processing: job.processing(),
                release: job.release(),
                deadline,
            })
            .collect();
        DeadlineProblem {
            machines: instance.machines(),
            jobs,
        }
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn jobs(&self) -> &[DeadlineJob] {
        &self.jobs
    }

    /// A generic scheduling instance whose due dates are the deadlines.
    pub fn to_instance(&self) -> Result<SchedulingInstance, ModelError> {
        let jobs = self
            .jobs
            .iter()
            .map(|j| Job::with_release(&j.id, JobKind::Generic, j.processing, j.deadline, j.release))
            .collect::<Result<Vec<_>, _>>()?;
        SchedulingInstance::new(self.machines, jobs)
    }
}

/// Sorted distinct releases and deadlines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventGrid {
    points: Vec<TimePoint>,
}

impl EventGrid {
    pub fn for_problem(problem: &DeadlineProblem) -> Self {
        let mut points: Vec<TimePoint> = problem
            .jobs
            .iter()
            .flat_map(|j| [j.release, j.deadline])
            .collect();
        points.sort_unstable();
        points.dedup();
        EventGrid { points }
    }

    pub fn points(&self) -> &[TimePoint] {
        &self.points
    }

    pub fn interval_count(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn interval(&self, i: usize) -> (TimePoint, TimePoint) {
        (self.points[i], self.points[i + 1])
    }

    pub fn intervals(&self) -> impl Iterator<Item = (TimePoint, TimePoint)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Processing assigned to each (job, interval) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub grid: EventGrid,
    /// `amounts[job][interval]`, jobs in problem order.
    pub amounts: Vec<Vec<TimePoint>>,
}

impl FlowAssignment {
    pub fn amount(&self, job: usize, interval: usize) -> TimePoint {
        self.amounts[job][interval]
    }

    pub fn check(&self, problem: &DeadlineProblem) -> Result<(), DeadlineError> {
        let bad = |msg: String| Err(DeadlineError::InvalidAssignment(msg));
        if self.grid != EventGrid::for_problem(problem) {
            return bad("event grid does not belong to the problem".into());
        }
        if self.amounts.len() != problem.jobs.len() {
            return bad(format!(
                "{} job rows for {} jobs",
                self.amounts.len(),
                problem.jobs.len()
            ));
        }
        let intervals = self.grid.interval_count();
        let mut load = vec![TimePoint::ZERO; intervals];
        for (job, row) in problem.jobs.iter().zip(&self.amounts) {
            if row.len() != intervals {
                return bad(format!("job {} has {} interval entries", job.id, row.len()));
            }
            let mut total = TimePoint::ZERO;
            for (i, &amount) in row.iter().enumerate() {
                let (start, end) = self.grid.interval(i);
                let len = end.checked_sub(start).expect("grid is sorted");
                if amount > len {
                    return bad(format!("job {} exceeds interval [{start},{end}]", job.id));
                }
                if !amount.is_zero() && (start < job.release || end > job.deadline) {
                    return bad(format!(
                        "job {} runs in [{start},{end}] outside [{},{}]",
                        job.id, job.release, job.deadline
                    ));
                }
                total += amount;
                load[i] += amount;
            }
            if total != job.processing {
                return bad(format!(
                    "job {} receives {total}, needs {}",
                    job.id, job.processing
                ));
            }
        }
        for (i, l) in load.iter().enumerate() {
            let (start, end) = self.grid.interval(i);
            let len = end.checked_sub(start).expect("grid is sorted");
            if *l > len.mul_int(problem.machines as u64) {
                return bad(format!("interval [{start},{end}] overloaded with {l}"));
            }
        }
        Ok(())
    }
}

/// Job-interval transportation network; node 0 is the source, the last node the sink.
pub struct DeadlineNetwork {
    pub network: FlowNetwork,
    pub source: usize,
    pub sink: usize,
    /// `(job, interval, arc index)` for every job → interval arc.
    pub assignment_arcs: Vec<(usize, usize, usize)>,
}

pub fn deadline_network(problem: &DeadlineProblem, grid: &EventGrid) -> DeadlineNetwork {
    let n = problem.jobs.len();
    let intervals = grid.interval_count();
    let source = 0;
    let sink = n + intervals + 1;
    let mut network = FlowNetwork::new(n + intervals + 2);
    let mut assignment_arcs = Vec::new();
    for (j, job) in problem.jobs.iter().enumerate() {
        network.add_arc(source, 1 + j, job.processing);
    }
    for (j, job) in problem.jobs.iter().enumerate() {
        for (i, (start, end)) in grid.intervals().enumerate() {
            if job.release <= start && end <= job.deadline {
                let len = end.checked_sub(start).expect("grid is sorted");
                let arc = network.add_arc(1 + j, 1 + n + i, len);
                assignment_arcs.push((j, i, arc));
            }
        }
    }
    let m = problem.machines as u64;
    for (i, (start, end)) in grid.intervals().enumerate() {
        let len = end.checked_sub(start).expect("grid is sorted");
        network.add_arc(1 + n + i, sink, len.mul_int(m));
    }
    DeadlineNetwork {
        network,
        source,
        sink,
        assignment_arcs,
    }
}

/// `Some` assignment iff a preemptive schedule meeting every release and deadline exists.
pub fn feasible_with_deadlines(problem: &DeadlineProblem) -> Option<FlowAssignment> {
    for job in &problem.jobs {
        match job.deadline.checked_sub(job.release) {
            Ok(window) if window >= job.processing => {}
            _ => return None,
        }
    }
    let grid = EventGrid::for_problem(problem);
    let net = deadline_network(problem, &grid);
    let flow = net.network.max_flow(net.source, net.sink);
    let demand: TimePoint = problem.jobs.iter().map(|j| j.processing).sum();
    if flow.value != demand {
        return None;
    }
    let mut amounts = vec![vec![TimePoint::ZERO; grid.interval_count()]; problem.jobs.len()];
    for &(j, i, arc) in &net.assignment_arcs {
        amounts[j][i] = flow.arc_flows[arc];
    }
    Some(FlowAssignment { grid, amounts })
}

/// Feasibility check followed by McNaughton decomposition.
pub fn schedule_with_deadlines(problem: &DeadlineProblem) -> Option<Schedule> {
    let assignment = feasible_with_deadlines(problem)?;
    Some(
        build_schedule_from_flow(problem, &assignment)
            .expect("flow assignments satisfy their own invariants"),
    )
}
