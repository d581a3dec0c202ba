//! Best-effort search for schedules that meet the tardiness threshold without
//! encoding a Partition solution.
//!
//! Candidates come from witness schedules, EDF, and "late pattern" deadline
//! vectors where some copies of one or two BA indices share a deadline after
//! `L` (the shape of the k = 3 counter-example). Finding nothing proves
//! nothing: the report is evidence, not a decision procedure.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::deadline::{schedule_with_deadlines, DeadlineProblem};
use crate::model::{JobKind, Schedule, SchedulingInstance};
use crate::reduction::{build_kw10_instance, claim_from_report, ClaimVerdict, PartitionInstance, ReductionMeta};
use crate::solvers::edf::edf_heuristic;
use crate::solvers::exact::{SearchLimits, SearchStatus};
use crate::solvers::partition::all_partition_solutions;
use crate::solvers::witness::witness_for_instance;
use crate::time::TimePoint;
use crate::verify::report;

const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source")]
pub enum CandidateSource {
    Witness { solution: BTreeSet<usize> },
    Edf,
    /// `(index, copies)` pairs whose last copies share `deadline`.
    LatePattern { late: Vec<(usize, usize)>, deadline: TimePoint },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub source: CandidateSource,
    pub total_tardiness: TimePoint,
    pub verdict: ClaimVerdict,
    #[serde(skip)]
    pub schedule: Schedule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub partition: PartitionInstance,
    pub meta: ReductionMeta,
    pub partition_solution: Option<BTreeSet<usize>>,
    pub entries: Vec<AuditEntry>,
    pub evaluations: u64,
    pub status: SearchStatus,
}

impl AuditReport {
    pub fn refutations(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.verdict.is_refuted())
    }

    pub fn budget_exhausted(&self) -> bool {
        self.status == SearchStatus::BudgetExhausted
    }
}

struct Budget {
    limits: SearchLimits,
    started: Instant,
    used: u64,
    exhausted: bool,
}

impl Budget {
    fn take(&mut self) -> bool {
        if self.exhausted
            || self.used >= self.limits.node_budget
            || self.started.elapsed() > self.limits.time_budget
        {
            self.exhausted = true;
            return false;
        }
        self.used += 1;
        true
    }
}

fn late_deadlines(
    instance: &SchedulingInstance,
    pattern: &[(usize, usize)],
    deadline: TimePoint,
    k: usize,
) -> Vec<TimePoint> {
    instance
        .jobs()
        .iter()
        .map(|j| match j.kind() {
            JobKind::BAJob { index, copy } => {
                let late = pattern
                    .iter()
                    .any(|&(i, count)| i == index && copy > 2 * k - count);
                if late {
                    deadline
                } else {
                    j.due()
                }
            }
            _ => j.due(),
        })
        .collect()
}

/// Smallest common deadline after `L` (on the grid of step `1/k`) that makes
/// the pattern feasible, with its schedule.
fn search_pattern(
    instance: &SchedulingInstance,
    meta: &ReductionMeta,
    p: &PartitionInstance,
    pattern: &[(usize, usize)],
    budget: &mut Budget,
) -> Option<(TimePoint, Schedule)> {
    let k = meta.k as u64;
    let b = meta.b;
    let late_work: u64 = pattern.iter().map(|&(i, c)| b * b * p.value(i) * c as u64).sum();
    let to_time = |n: u64| TimePoint::new(n, k).expect("k >= 1");
    let l_scaled = meta.l.scaled(k).expect("L has denominator dividing k");
    let mut lo = l_scaled; // infeasible or uninteresting
    let mut hi = l_scaled + late_work * k;
    let try_deadline = |n: u64, budget: &mut Budget| -> Option<Option<Schedule>> {
        if !budget.take() {
            return None;
        }
        let deadlines = late_deadlines(instance, pattern, to_time(n), meta.k);
        Some(schedule_with_deadlines(&DeadlineProblem::from_instance(instance, &deadlines)))
    };
    let mut best = try_deadline(hi, budget)??;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match try_deadline(mid, budget)? {
            Some(s) => {
                hi = mid;
                best = s;
            }
            None => lo = mid,
        }
    }
    Some((to_time(hi), best))
}

fn patterns(k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 1..=k {
        for c in 1..=2 * k {
            out.push(vec![(i, c)]);
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            for ci in 1..=k {
                for cj in 1..=k {
                    out.push(vec![(i, ci), (j, cj)]);
                }
            }
        }
    }
    out
}

/// Gathers candidate schedules for the reduction instance of `p` and tests the
/// claimed extraction on each one that meets the threshold.
///
/// With a seed, the late patterns are visited in a shuffled order, which only
/// matters when the budget runs out.
pub fn audit_reduction(p: &PartitionInstance, limits: &SearchLimits, seed: Option<u64>) -> AuditReport {
    let (instance, meta) = build_kw10_instance(p);
    let mut budget = Budget {
        limits: *limits,
        started: Instant::now(),
        used: 0,
        exhausted: false,
    };
    let mut entries = Vec::new();
    let mut record = |source: CandidateSource, schedule: Schedule| {
        let r = report(&instance, &schedule).expect("candidate schedules are valid");
        let verdict = claim_from_report(&instance, &meta, &r).expect("reduction instance");
        entries.push(AuditEntry {
            source,
            total_tardiness: r.total_tardiness,
            verdict,
            schedule,
        });
    };

    let solutions = all_partition_solutions(p, MAX_WITNESSES);
    for solution in &solutions {
        if !budget.take() {
            break;
        }
        // a failure here would contradict the easy direction; surface it loudly
        let schedule = witness_for_instance(p, &instance, &meta, solution)
            .unwrap_or_else(|e| panic!("witness construction failed: {e}"));
        record(CandidateSource::Witness { solution: solution.clone() }, schedule);
    }

    if budget.take() {
        record(CandidateSource::Edf, edf_heuristic(&instance));
    }

    let mut order = patterns(p.k());
    if let Some(seed) = seed {
        order.shuffle(&mut StdRng::seed_from_u64(seed));
    }
    for pattern in order {
        if budget.exhausted {
            break;
        }
        if let Some((deadline, schedule)) = search_pattern(&instance, &meta, p, &pattern, &mut budget) {
            record(CandidateSource::LatePattern { late: pattern, deadline }, schedule);
        }
    }

    AuditReport {
        partition: p.clone(),
        meta,
        partition_solution: solutions.first().cloned(),
        entries,
        evaluations: budget.used,
        status: if budget.exhausted {
            SearchStatus::BudgetExhausted
        } else {
            SearchStatus::Optimal
        },
    }
}
