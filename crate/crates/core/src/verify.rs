//! Exact schedule verification and tardiness metrics.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::model::{JobId, Piece, Schedule, SchedulingInstance};
use crate::time::TimePoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation")]
pub enum Violation {
    MachineOverlap { machine: usize, first: Piece, second: Piece },
    SameJobParallelism { job: JobId, first: Piece, second: Piece },
    WrongTotalProcessing { job: JobId, got: TimePoint, want: TimePoint },
    ReleaseViolation { job: JobId, piece: Piece, release: TimePoint },
    UnknownJob { piece: Piece },
    UnknownMachine { piece: Piece, machines: usize },
    NegativeLengthPiece { piece: Piece },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MachineOverlap { machine, first, second } => {
                write!(f, "MachineOverlap on machine {machine}: {first} and {second}")
            }
            Violation::SameJobParallelism { job, first, second } => {
                write!(f, "SameJobParallelism for {job}: {first} and {second}")
            }
            Violation::WrongTotalProcessing { job, got, want } => {
                write!(f, "WrongTotalProcessing for {job}: got {got}, want {want}")
            }
            Violation::ReleaseViolation { job, piece, release } => {
                write!(f, "ReleaseViolation for {job}: {piece} starts before release {release}")
            }
            Violation::UnknownJob { piece } => write!(f, "UnknownJob: {piece}"),
            Violation::UnknownMachine { piece, machines } => {
                write!(f, "UnknownMachine: {piece} (instance has {machines} machines)")
            }
            Violation::NegativeLengthPiece { piece } => write!(f, "NegativeLengthPiece: {piece}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationVerdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl VerificationVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerificationVerdict::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            VerificationVerdict::Valid => &[],
            VerificationVerdict::Invalid(v) => v,
        }
    }
}

/// Report any pair of overlapping pieces in `pieces`, which must be sorted by start.
fn overlapping_pairs<'a>(pieces: &[&'a Piece]) -> Vec<(&'a Piece, &'a Piece)> {
    let mut pairs = Vec::new();
    let mut reach: Option<&Piece> = None;
    for &piece in pieces {
        if let Some(prev) = reach {
            if prev.end > piece.start {
                pairs.push((prev, piece));
            }
            if piece.end > prev.end {
                reach = Some(piece);
            }
        } else {
            reach = Some(piece);
        }
    }
    pairs
}

pub fn verify_schedule(instance: &SchedulingInstance, schedule: &Schedule) -> VerificationVerdict {
    let mut violations = Vec::new();
    let mut by_machine: Vec<Vec<&Piece>> = vec![Vec::new(); instance.machines()];
    let mut by_job: HashMap<&JobId, Vec<&Piece>> = HashMap::new();

    for piece in schedule.pieces() {
        if piece.start >= piece.end {
            violations.push(Violation::NegativeLengthPiece { piece: piece.clone() });
            continue;
        }
        let Some(job) = instance.job(&piece.job) else {
            violations.push(Violation::UnknownJob { piece: piece.clone() });
            continue;
        };
        if piece.machine >= instance.machines() {
            violations.push(Violation::UnknownMachine {
                piece: piece.clone(),
                machines: instance.machines(),
            });
        } else {
            by_machine[piece.machine].push(piece);
        }
        if piece.start < job.release() {
            violations.push(Violation::ReleaseViolation {
                job: job.id().clone(),
                piece: piece.clone(),
                release: job.release(),
            });
        }
        by_job.entry(job.id()).or_default().push(piece);
    }

    for (machine, pieces) in by_machine.iter_mut().enumerate() {
        pieces.sort_by_key(|p| (p.start, p.end));
        for (first, second) in overlapping_pairs(pieces) {
            violations.push(Violation::MachineOverlap {
                machine,
                first: first.clone(),
                second: second.clone(),
            });
        }
    }

    for job in instance.jobs() {
        let mut pieces = by_job.remove(job.id()).unwrap_or_default();
        pieces.sort_by_key(|p| (p.start, p.end, p.machine));
        for (first, second) in overlapping_pairs(&pieces) {
            violations.push(Violation::SameJobParallelism {
                job: job.id().clone(),
                first: first.clone(),
                second: second.clone(),
            });
        }
        let got: TimePoint = pieces.iter().map(|p| p.length()).sum();
        if got != job.processing() {
            violations.push(Violation::WrongTotalProcessing {
                job: job.id().clone(),
                got,
                want: job.processing(),
            });
        }
    }

    if violations.is_empty() {
        VerificationVerdict::Valid
    } else {
        VerificationVerdict::Invalid(violations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("schedule is invalid ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),
}

/// Completion times and tardiness of every job, in instance order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleReport {
    pub completion: IndexMap<JobId, TimePoint>,
    pub tardiness: IndexMap<JobId, TimePoint>,
    pub total_tardiness: TimePoint,
    pub late_jobs: Vec<(JobId, TimePoint)>,
}

impl ScheduleReport {
    pub fn completion_of(&self, id: &JobId) -> Option<TimePoint> {
        self.completion.get(id).copied()
    }

    pub fn makespan(&self) -> TimePoint {
        self.completion.values().copied().max().unwrap_or_default()
    }
}

pub fn report(
    instance: &SchedulingInstance,
    schedule: &Schedule,
) -> Result<ScheduleReport, ReportError> {
    if let VerificationVerdict::Invalid(v) = verify_schedule(instance, schedule) {
        return Err(ReportError::Invalid(v));
    }
    let mut ends: HashMap<&JobId, TimePoint> = HashMap::new();
    for piece in schedule.pieces() {
        let end = ends.entry(&piece.job).or_default();
        *end = (*end).max(piece.end);
    }

    let mut completion = IndexMap::with_capacity(instance.jobs().len());
    let mut tardiness = IndexMap::with_capacity(instance.jobs().len());
    let mut late_jobs = Vec::new();
    for job in instance.jobs() {
        // valid schedules give every job positive total processing
        let c = ends[job.id()];
        let t = c.saturating_sub(job.due());
        if !t.is_zero() {
            late_jobs.push((job.id().clone(), t));
        }
        completion.insert(job.id().clone(), c);
        tardiness.insert(job.id().clone(), t);
    }
    let total_tardiness = tardiness.values().sum();
    Ok(ScheduleReport {
        completion,
        tardiness,
        total_tardiness,
        late_jobs,
    })
}
