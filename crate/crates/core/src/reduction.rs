//! Partition to `P|pmtn|ΣT_j` reduction instances and the
//! late-job extraction rule read back from a schedule.
//!
//! For a Partition instance `a_1..a_k` with `Σ a_i = 2b` the generated instance has
//! `k` machines, a constant `L = (4kb³ + 2b)/k` and `2k² + k + 1` jobs:
//!
//! * `A{i}`: processing `a_i`, due `L`;
//! * `BA{i}.{c}` for copies `c = 1..2k`: processing `b²·a_i`, due `L - a_i`;
//! * `LONG`: processing and due date `b³`.
//!
//! A schedule with total tardiness at most `b³ + b` is supposed to encode a
//! Partition solution through the set of `BA` jobs completing after `L`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Job, JobId, JobKind, Schedule, SchedulingInstance};
use crate::time::TimePoint;
use crate::verify::{report, ReportError, ScheduleReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("a Partition instance needs at least one value")]
    Empty,
    #[error("Partition values must be positive")]
    NonPositive,
    #[error("Partition values sum to {sum}, which is not 2b = {twice_b}")]
    SumMismatch { sum: u64, twice_b: u64 },
    #[error("Partition values sum to {0}, which is odd")]
    OddSum(u64),
    #[error("instance does not carry reduction metadata")]
    MissingMetadata,
    #[error("instance is not a reduction instance: {0}")]
    NotAReductionInstance(String),
    #[error(transparent)]
    Report(#[from] ReportError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionInstance {
    a: Vec<u64>,
    b: u64,
}

impl PartitionInstance {
    pub fn new(a: Vec<u64>, b: u64) -> Result<Self, ReductionError> {
        if a.is_empty() {
            return Err(ReductionError::Empty);
        }
        if a.contains(&0) || b == 0 {
            return Err(ReductionError::NonPositive);
        }
        let sum: u64 = a.iter().sum();
        if sum != 2 * b {
            return Err(ReductionError::SumMismatch { sum, twice_b: 2 * b });
        }
        Ok(PartitionInstance { a, b })
    }

    /// Builds an instance with `b` set to half the sum.
    pub fn from_values(a: Vec<u64>) -> Result<Self, ReductionError> {
        let sum: u64 = a.iter().sum();
        if sum % 2 == 1 {
            return Err(ReductionError::OddSum(sum));
        }
        PartitionInstance::new(a, sum / 2)
    }

    pub fn values(&self) -> &[u64] {
        &self.a
    }

    /// `a_i` for a 1-based index.
    pub fn value(&self, index: usize) -> u64 {
        self.a[index - 1]
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Sum of `a_i` over 1-based indices.
    pub fn subset_sum(&self, indices: &BTreeSet<usize>) -> u64 {
        indices.iter().map(|&i| self.value(i)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMeta {
    pub k: usize,
    pub b: u64,
    #[serde(rename = "L")]
    pub l: TimePoint,
    pub threshold: TimePoint,
}

impl ReductionMeta {
    pub fn for_partition(p: &PartitionInstance) -> Self {
        let k = p.k() as u64;
        let b = p.b();
        let l = TimePoint::from_integer(4 * k * b * b * b + 2 * b)
            .checked_div_int(k)
            .expect("k >= 1");
        ReductionMeta {
            k: p.k(),
            b,
            l,
            threshold: TimePoint::from_integer(b * b * b + b),
        }
    }
}

pub fn a_job_id(index: usize) -> JobId {
    JobId::new(format!("A{index}"))
}

pub fn ba_job_id(index: usize, copy: usize) -> JobId {
    JobId::new(format!("BA{index}.{copy}"))
}

pub fn long_job_id() -> JobId {
    JobId::new("LONG")
}

pub fn build_kw10_instance(p: &PartitionInstance) -> (SchedulingInstance, ReductionMeta) {
    let meta = ReductionMeta::for_partition(p);
    let k = p.k();
    let b = p.b();
    let mut jobs = Vec::with_capacity(2 * k * k + k + 1);
    for (i, &a) in p.values().iter().enumerate() {
        let index = i + 1;
        jobs.push(
            Job::new(a_job_id(index), JobKind::AJob { index }, a.into(), meta.l)
                .expect("a_i > 0"),
        );
    }
    for (i, &a) in p.values().iter().enumerate() {
        let index = i + 1;
        let due = meta.l.checked_sub(a.into()).expect("a_i < L");
        for copy in 1..=2 * k {
            jobs.push(
                Job::new(
                    ba_job_id(index, copy),
                    JobKind::BAJob { index, copy },
                    (b * b * a).into(),
                    due,
                )
                .expect("b²a_i > 0"),
            );
        }
    }
    let b3 = TimePoint::from_integer(b * b * b);
    jobs.push(Job::new(long_job_id(), JobKind::LongJob, b3, b3).expect("b³ > 0"));
    let instance = SchedulingInstance::new(k, jobs).expect("generated ids are unique");
    (instance, meta)
}

/// Recovers `a_1..a_k` from the A-jobs of a reduction instance.
pub fn partition_of(
    instance: &SchedulingInstance,
    meta: &ReductionMeta,
) -> Result<PartitionInstance, ReductionError> {
    let bad = |msg: String| ReductionError::NotAReductionInstance(msg);
    let mut a = vec![None; meta.k];
    for job in instance.jobs() {
        if let JobKind::AJob { index } = job.kind() {
            let slot = a
                .get_mut(index.wrapping_sub(1))
                .ok_or_else(|| bad(format!("a-job index {index} outside 1..={}", meta.k)))?;
            let value = job
                .processing()
                .to_integer()
                .ok_or_else(|| bad(format!("a-job {} has non-integral processing", job.id())))?;
            if slot.replace(value).is_some() {
                return Err(bad(format!("duplicate a-job index {index}")));
            }
        }
    }
    let a = a
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| bad(format!("missing a-job {}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let p = PartitionInstance::new(a, meta.b).map_err(|e| bad(e.to_string()))?;
    if ReductionMeta::for_partition(&p) != *meta {
        return Err(bad("metadata does not match the a-jobs".into()));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionResult {
    /// Distinct 1-based indices of late BA copies.
    pub index_set: BTreeSet<usize>,
    /// `(index, copy)` of every BA job completing after `L`.
    pub late_copies: Vec<(usize, usize)>,
    pub sum_selected: u64,
    pub solves_partition: bool,
}

pub fn format_index_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// Extraction from a report that has already been computed for `instance`.
pub fn extract_from_report(
    instance: &SchedulingInstance,
    meta: &ReductionMeta,
    report: &ScheduleReport,
) -> Result<ExtractionResult, ReductionError> {
    let partition = partition_of(instance, meta)?;
    let mut late_copies = Vec::new();
    for job in instance.jobs() {
        if let JobKind::BAJob { index, copy } = job.kind() {
            if index == 0 || index > meta.k {
                return Err(ReductionError::NotAReductionInstance(format!(
                    "ba-job index {index} outside 1..={}",
                    meta.k
                )));
            }
            let completion = report.completion_of(job.id()).ok_or_else(|| {
                ReductionError::NotAReductionInstance(format!("no completion for {}", job.id()))
            })?;
            if completion > meta.l {
                late_copies.push((index, copy));
            }
        }
    }
    late_copies.sort_unstable();
    let index_set: BTreeSet<usize> = late_copies.iter().map(|&(i, _)| i).collect();
    let sum_selected = partition.subset_sum(&index_set);
    Ok(ExtractionResult {
        solves_partition: sum_selected == meta.b,
        index_set,
        late_copies,
        sum_selected,
    })
}

pub fn extract_partition_candidate(
    instance: &SchedulingInstance,
    meta: Option<&ReductionMeta>,
    schedule: &Schedule,
) -> Result<ExtractionResult, ReductionError> {
    let meta = meta.ok_or(ReductionError::MissingMetadata)?;
    let report = report(instance, schedule)?;
    extract_from_report(instance, meta, &report)
}

/// Outcome of testing the "threshold met implies Partition solution" direction on one schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ClaimVerdict {
    ThresholdNotMet {
        total_tardiness: TimePoint,
        threshold: TimePoint,
    },
    ClaimHolds {
        total_tardiness: TimePoint,
        threshold: TimePoint,
        b: u64,
        extraction: ExtractionResult,
    },
    ClaimRefuted {
        total_tardiness: TimePoint,
        threshold: TimePoint,
        b: u64,
        extraction: ExtractionResult,
    },
}

impl ClaimVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ClaimVerdict::ClaimRefuted { .. })
    }

    pub fn total_tardiness(&self) -> TimePoint {
        match self {
            ClaimVerdict::ThresholdNotMet { total_tardiness, .. }
            | ClaimVerdict::ClaimHolds { total_tardiness, .. }
            | ClaimVerdict::ClaimRefuted { total_tardiness, .. } => *total_tardiness,
        }
    }

    pub fn extraction(&self) -> Option<&ExtractionResult> {
        match self {
            ClaimVerdict::ThresholdNotMet { .. } => None,
            ClaimVerdict::ClaimHolds { extraction, .. }
            | ClaimVerdict::ClaimRefuted { extraction, .. } => Some(extraction),
        }
    }
}

impl fmt::Display for ClaimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimVerdict::ThresholdNotMet { total_tardiness, threshold } => {
                write!(f, "ThresholdNotMet: ∑T={total_tardiness} > {threshold}")
            }
            ClaimVerdict::ClaimHolds { total_tardiness, threshold, b, extraction } => write!(
                f,
                "ClaimHolds: ∑T={total_tardiness} ≤ {threshold}, I={}, Σ={} = b={b}",
                format_index_set(&extraction.index_set),
                extraction.sum_selected
            ),
            ClaimVerdict::ClaimRefuted { total_tardiness, threshold, b, extraction } => write!(
                f,
                "ClaimRefuted: ∑T={total_tardiness} ≤ {threshold}, I={}, Σ={} ≠ b={b}",
                format_index_set(&extraction.index_set),
                extraction.sum_selected
            ),
        }
    }
}

pub fn claim_from_report(
    instance: &SchedulingInstance,
    meta: &ReductionMeta,
    report: &ScheduleReport,
) -> Result<ClaimVerdict, ReductionError> {
    let total_tardiness = report.total_tardiness;
    let threshold = meta.threshold;
    if total_tardiness > threshold {
        // still validates the instance shape
        partition_of(instance, meta)?;
        return Ok(ClaimVerdict::ThresholdNotMet { total_tardiness, threshold });
    }
    let extraction = extract_from_report(instance, meta, report)?;
    Ok(if extraction.solves_partition {
        ClaimVerdict::ClaimHolds { total_tardiness, threshold, b: meta.b, extraction }
    } else {
        ClaimVerdict::ClaimRefuted { total_tardiness, threshold, b: meta.b, extraction }
    })
}

pub fn check_reduction_claim(
    instance: &SchedulingInstance,
    meta: Option<&ReductionMeta>,
    schedule: &Schedule,
) -> Result<ClaimVerdict, ReductionError> {
    let meta = meta.ok_or(ReductionError::MissingMetadata)?;
    let report = report(instance, schedule)?;
    claim_from_report(instance, meta, &report)
}
