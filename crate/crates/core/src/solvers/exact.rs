//! Exact total-tardiness minimization for tiny instances.
//!
//! Both solvers search completion-time deadlines on an integer grid and
//! decide each deadline vector with the max-flow feasibility test. They are
//! exponential; the complexity of the underlying problem is open.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::deadline::{feasible_with_deadlines, schedule_with_deadlines, DeadlineJob, DeadlineProblem};
use crate::model::{Schedule, SchedulingInstance};
use crate::solvers::edf::edf_heuristic;
use crate::time::TimePoint;
use crate::verify::report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_jobs: usize,
    pub max_horizon: u64,
    /// Search nodes (or candidate evaluations) before giving up.
    pub node_budget: u64,
    pub time_budget: Duration,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_jobs: 10,
            max_horizon: 64,
            node_budget: 2_000_000,
            time_budget: Duration::from_secs(60),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{jobs} jobs exceed the limit of {max}")]
    TooManyJobs { jobs: usize, max: usize },
    #[error("horizon {horizon} exceeds the limit of {max}")]
    HorizonTooLarge { horizon: u64, max: u64 },
    #[error("job data must be integral for the integer completion grid")]
    NonIntegralData,
    #[error("no deadline-feasible completion vector on the grid")]
    NoFeasibleSchedule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Optimal,
    /// The node or time budget ran out; the result is the best incumbent.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub total_tardiness: TimePoint,
    pub schedule: Schedule,
    pub status: SearchStatus,
    pub nodes: u64,
    pub horizon: u64,
}

fn integral(t: TimePoint) -> Result<u64, SolveError> {
    t.to_integer().ok_or(SolveError::NonIntegralData)
}

/// Integer job data `(p, d, r)` in instance order.
fn integer_data(instance: &SchedulingInstance) -> Result<Vec<(u64, u64, u64)>, SolveError> {
    instance
        .jobs()
        .iter()
        .map(|j| Ok((integral(j.processing())?, integral(j.due())?, integral(j.release())?)))
        .collect()
}

/// `max r_j + Σ p_j`: every job can complete by then.
pub fn natural_horizon(instance: &SchedulingInstance) -> Result<u64, SolveError> {
    let data = integer_data(instance)?;
    let max_r = data.iter().map(|&(_, _, r)| r).max().unwrap_or(0);
    Ok(max_r + data.iter().map(|&(p, _, _)| p).sum::<u64>())
}

fn deadline_problem(instance: &SchedulingInstance, jobs: &[usize], deadlines: &[TimePoint]) -> DeadlineProblem {
    let list = jobs
        .iter()
        .zip(deadlines)
        .map(|(&j, &deadline)| {
            let job = &instance.jobs()[j];
            DeadlineJob {
                id: job.id().clone(),
                processing: job.processing(),
                release: job.release(),
                deadline,
            }
        })
        .collect();
    DeadlineProblem::new(instance.machines(), list).expect("instance invariants carry over")
}

struct Search<'a> {
    instance: &'a SchedulingInstance,
    data: Vec<(u64, u64, u64)>,
    order: Vec<usize>,
    horizon: u64,
    limits: SearchLimits,
    started: Instant,
    nodes: u64,
    exhausted: bool,
    best: TimePoint,
    best_deadlines: Option<Vec<TimePoint>>,
    chosen: Vec<TimePoint>,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        if self.nodes >= self.limits.node_budget
            || (self.nodes.is_multiple_of(256) && self.started.elapsed() > self.limits.time_budget)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn dfs(&mut self, level: usize, committed: TimePoint) {
        if self.out_of_budget() {
            return;
        }
        self.nodes += 1;
        if level == self.order.len() {
            if committed < self.best {
                self.best = committed;
                self.best_deadlines = Some(self.chosen.clone());
            }
            return;
        }
        let j = self.order[level];
        let (p, d, r) = self.data[j];
        // completing before the due date is dominated by the due date itself
        let first = (r + p).max(d.min(self.horizon));
        for c in first..=self.horizon {
            let tardiness = TimePoint::from(c.saturating_sub(d));
            if committed + tardiness >= self.best {
                break;
            }
            self.chosen.push(c.into());
            let problem = deadline_problem(self.instance, &self.order[..=level], &self.chosen);
            if feasible_with_deadlines(&problem).is_some() {
                self.dfs(level + 1, committed + tardiness);
            }
            self.chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// Branch and bound over per-job completion deadlines on `[1, max r + Σp]`.
///
/// Jobs are branched in due-date order; the bound is the tardiness already
/// committed and every partial assignment must stay deadline-feasible. The
/// search starts from the EDF schedule as incumbent.
pub fn exact_min_total_tardiness(
    instance: &SchedulingInstance,
    limits: &SearchLimits,
) -> Result<ExactSolution, SolveError> {
    let n = instance.jobs().len();
    if n > limits.max_jobs {
        return Err(SolveError::TooManyJobs { jobs: n, max: limits.max_jobs });
    }
    let data = integer_data(instance)?;
    let horizon = natural_horizon(instance)?;
    if horizon > limits.max_horizon {
        return Err(SolveError::HorizonTooLarge { horizon, max: limits.max_horizon });
    }

    let edf = edf_heuristic(instance);
    let edf_total = report(instance, &edf)
        .expect("EDF schedules are valid")
        .total_tardiness;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (data[j].1, j));
    let mut search = Search {
        instance,
        data,
        order,
        horizon,
        limits: *limits,
        started: Instant::now(),
        nodes: 0,
        exhausted: false,
        best: edf_total,
        best_deadlines: None,
        chosen: Vec::with_capacity(n),
    };
    search.dfs(0, TimePoint::ZERO);

    let schedule = match &search.best_deadlines {
        None => edf,
        Some(deadlines) => {
            let problem = deadline_problem(instance, &search.order, deadlines);
            schedule_with_deadlines(&problem).expect("leaf assignments are feasible")
        }
    };
    let total_tardiness = report(instance, &schedule)
        .expect("flow schedules are valid")
        .total_tardiness;
    debug_assert!(total_tardiness <= search.best);
    Ok(ExactSolution {
        total_tardiness,
        schedule,
        status: if search.exhausted {
            SearchStatus::BudgetExhausted
        } else {
            SearchStatus::Optimal
        },
        nodes: search.nodes,
        horizon,
    })
}

pub const ORACLE_MAX_JOBS: usize = 5;
pub const ORACLE_MAX_HORIZON: u64 = 12;

/// Minimum total tardiness over every integer completion vector in `[1, horizon]^n`.
pub fn exhaustive_oracle(instance: &SchedulingInstance, horizon: u64) -> Result<TimePoint, SolveError> {
    let n = instance.jobs().len();
    if n > ORACLE_MAX_JOBS {
        return Err(SolveError::TooManyJobs { jobs: n, max: ORACLE_MAX_JOBS });
    }
    if horizon > ORACLE_MAX_HORIZON {
        return Err(SolveError::HorizonTooLarge { horizon, max: ORACLE_MAX_HORIZON });
    }
    integer_data(instance)?;
    exhaustive_oracle_on_grid(instance, horizon.into(), TimePoint::ONE)
}

/// Same enumeration over the grid `step, 2·step, …, horizon`.
///
/// Used to probe whether finer completion grids ever beat the integer one.
pub fn exhaustive_oracle_on_grid(
    instance: &SchedulingInstance,
    horizon: TimePoint,
    step: TimePoint,
) -> Result<TimePoint, SolveError> {
    let n = instance.jobs().len();
    let mut grid = Vec::new();
    let mut t = step;
    while t <= horizon && !step.is_zero() {
        grid.push(t);
        t += step;
    }
    let all: Vec<usize> = (0..n).collect();
    let mut best: Option<TimePoint> = None;
    let mut digits = vec![0usize; n];
    if grid.is_empty() {
        return Err(SolveError::NoFeasibleSchedule);
    }
    loop {
        let deadlines: Vec<TimePoint> = digits.iter().map(|&g| grid[g]).collect();
        let total: TimePoint = instance
            .jobs()
            .iter()
            .zip(&deadlines)
            .map(|(j, &c)| c.saturating_sub(j.due()))
            .sum();
        if best.is_none_or(|b| total < b)
            && feasible_with_deadlines(&deadline_problem(instance, &all, &deadlines)).is_some()
        {
            best = Some(total);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return best.ok_or(SolveError::NoFeasibleSchedule);
            }
            digits[pos] += 1;
            if digits[pos] < grid.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
