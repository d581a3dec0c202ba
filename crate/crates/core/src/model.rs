//! Jobs, instances and preemptive schedules.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::time::TimePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("job {0} has zero processing time")]
    ZeroProcessing(JobId),
    #[error("an instance needs at least one machine")]
    NoMachines,
    #[error("duplicate job id {0}")]
    DuplicateJob(JobId),
    #[error("invalid job kind {0:?}: expected generic, long, a:<i> or ba:<i>:<copy>")]
    BadKind(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JobId(String);

impl JobId {
    pub fn new(id: impl Into<String>) -> Self {
        JobId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for JobId {
    fn from(s: &str) -> Self {
        JobId::new(s)
    }
}

/// Role of a job inside a reduction instance. Indices and copy numbers are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JobKind {
    AJob { index: usize },
    BAJob { index: usize, copy: usize },
    LongJob,
    Generic,
}

impl fmt::Display for JobKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobKind::AJob { index } => write!(f, "a:{index}"),
            JobKind::BAJob { index, copy } => write!(f, "ba:{index}:{copy}"),
            JobKind::LongJob => f.write_str("long"),
            JobKind::Generic => f.write_str("generic"),
        }
    }
}

impl FromStr for JobKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadKind(s.to_string());
        let number = |p: &str| p.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["generic"] => Ok(JobKind::Generic),
            ["long"] => Ok(JobKind::LongJob),
            ["a", i] => Ok(JobKind::AJob { index: number(i)? }),
            ["ba", i, c] => Ok(JobKind::BAJob {
                index: number(i)?,
                copy: number(c)?,
            }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for JobKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for JobKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    id: JobId,
    kind: JobKind,
    processing: TimePoint,
    due: TimePoint,
    release: TimePoint,
}

impl Job {
    pub fn new(
        id: impl Into<JobId>,
        kind: JobKind,
        processing: TimePoint,
        due: TimePoint,
    ) -> Result<Self, ModelError> {
        Job::with_release(id, kind, processing, due, TimePoint::ZERO)
    }

    pub fn with_release(
        id: impl Into<JobId>,
        kind: JobKind,
        processing: TimePoint,
        due: TimePoint,
        release: TimePoint,
    ) -> Result<Self, ModelError> {
        let id = id.into();
        if processing.is_zero() {
            return Err(ModelError::ZeroProcessing(id));
        }
        Ok(Job {
            id,
            kind,
            processing,
            due,
            release,
        })
    }

    /// Shorthand for a generic job released at zero with integer data.
    pub fn generic(id: &str, processing: u64, due: u64) -> Result<Self, ModelError> {
        Job::new(id, JobKind::Generic, processing.into(), due.into())
    }

    pub fn id(&self) -> &JobId {
        &self.id
    }

    pub fn kind(&self) -> JobKind {
        self.kind
    }

    pub fn processing(&self) -> TimePoint {
        self.processing
    }

    pub fn due(&self) -> TimePoint {
        self.due
    }

    pub fn release(&self) -> TimePoint {
        self.release
    }
}

impl From<String> for JobId {
    fn from(s: String) -> Self {
        JobId(s)
    }
}

impl From<&JobId> for JobId {
    fn from(id: &JobId) -> Self {
        id.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingInstance {
    machines: usize,
    jobs: Vec<Job>,
    positions: HashMap<JobId, usize>,
}

impl SchedulingInstance {
    pub fn new(machines: usize, jobs: Vec<Job>) -> Result<Self, ModelError> {
        if machines == 0 {
            return Err(ModelError::NoMachines);
        }
        let mut positions = HashMap::with_capacity(jobs.len());
        for (pos, job) in jobs.iter().enumerate() {
            if positions.insert(job.id.clone(), pos).is_some() {
                return Err(ModelError::DuplicateJob(job.id.clone()));
            }
        }
        Ok(SchedulingInstance {
            machines,
            jobs,
            positions,
        })
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, id: &JobId) -> Option<&Job> {
        self.positions.get(id).map(|&p| &self.jobs[p])
    }

    /// Index of the job in instance order.
    pub fn position(&self, id: &JobId) -> Option<usize> {
        self.positions.get(id).copied()
    }

    pub fn total_processing(&self) -> TimePoint {
        self.jobs.iter().map(Job::processing).sum()
    }
}

/// One uninterrupted fragment of a job on a machine.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub job: JobId,
    pub machine: usize,
    pub start: TimePoint,
    pub end: TimePoint,
}

impl Piece {
    pub fn new(job: impl Into<JobId>, machine: usize, start: TimePoint, end: TimePoint) -> Self {
        Piece {
            job: job.into(),
            machine,
            start,
            end,
        }
    }

    /// Length of the piece, zero for degenerate pieces.
    pub fn length(&self) -> TimePoint {
        self.end.saturating_sub(self.start)
    }

    /// Strict overlap: touching pieces do not overlap.
    pub fn overlaps(&self, other: &Piece) -> bool {
        self.start < other.end && other.start < self.end
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@m{}[{},{}]", self.job, self.machine, self.start, self.end)
    }
}

/// A preemptive schedule. Validity is checked by
/// [`verify_schedule`](crate::verify::verify_schedule), not on construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Schedule {
    pieces: Vec<Piece>,
}

impl Schedule {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Schedule { pieces }
    }

    pub fn push(&mut self, piece: Piece) {
        self.pieces.push(piece);
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn into_pieces(self) -> Vec<Piece> {
        self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn on_machine(&self, machine: usize) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(move |p| p.machine == machine)
    }

    /// Pieces sorted by machine then start, with touching pieces of the same
    /// job on the same machine merged.
    pub fn canonicalized(&self) -> Schedule {
        let mut sorted = self.pieces.clone();
        sorted.sort_by(|a, b| {
            (a.machine, a.start, a.end, &a.job).cmp(&(b.machine, b.start, b.end, &b.job))
        });
        let mut merged: Vec<Piece> = Vec::with_capacity(sorted.len());
        for piece in sorted {
            match merged.last_mut() {
                Some(last)
                    if last.machine == piece.machine
                        && last.job == piece.job
                        && last.end == piece.start =>
                {
                    last.end = piece.end;
                }
                _ => merged.push(piece),
            }
        }
        Schedule { pieces: merged }
    }
}

impl FromIterator<Piece> for Schedule {
    fn from_iter<I: IntoIterator<Item = Piece>>(iter: I) -> Self {
        Schedule::new(iter.into_iter().collect())
    }
}
