//! JSON instance and schedule files.
//!
//! Times are written as plain integers when integral and as `"num/den"`
//! strings otherwise, so files never contain floating point.
//!
//! ```json
//! {
//!   "machines": 2,
//!   "jobs": [
//!     { "id": "A1", "kind": "a:1", "processing": 1, "due": 5 },
//!     { "id": "x", "kind": "generic", "processing": "3/2", "due": 4, "release": 1 }
//!   ],
//!   "reduction": { "k": 2, "b": 1, "L": 5, "threshold": 2 }
//! }
//! ```
//!
//! A schedule file carries either an inline `"instance"` or an
//! `"instance_ref"` path plus a list of pieces with 0-based machines.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Job, JobId, JobKind, Piece, Schedule, SchedulingInstance};
use crate::reduction::ReductionMeta;
use crate::time::TimePoint;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for FileError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends its own " at line X column Y"
        let message = match message.rfind(" at line ") {
            Some(pos) => message[..pos].to_string(),
            None => message,
        };
        FileError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobDoc {
    id: JobId,
    kind: JobKind,
    processing: TimePoint,
    due: TimePoint,
    #[serde(default, skip_serializing_if = "TimePoint::is_zero")]
    release: TimePoint,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    machines: usize,
    jobs: Vec<JobDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reduction: Option<ReductionMeta>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    instance: Option<InstanceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    instance_ref: Option<String>,
    pieces: Vec<Piece>,
}

/// An instance with optional reduction metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: SchedulingInstance,
    pub reduction: Option<ReductionMeta>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    Inline(InstanceFile),
    Reference(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleFile {
    pub instance: InstanceSource,
    pub schedule: Schedule,
}

impl InstanceFile {
    pub fn new(instance: SchedulingInstance, reduction: Option<ReductionMeta>) -> Self {
        InstanceFile { instance, reduction }
    }

    fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            machines: self.instance.machines(),
            jobs: self
                .instance
                .jobs()
                .iter()
                .map(|j| JobDoc {
                    id: j.id().clone(),
                    kind: j.kind(),
                    processing: j.processing(),
                    due: j.due(),
                    release: j.release(),
                })
                .collect(),
            reduction: self.reduction,
        }
    }

    fn from_doc(doc: InstanceDoc) -> Result<Self, FileError> {
        let invalid = |e: crate::model::ModelError| FileError::Invalid(e.to_string());
        let jobs = doc
            .jobs
            .into_iter()
            .map(|j| Job::with_release(j.id, j.kind, j.processing, j.due, j.release))
            .collect::<Result<Vec<_>, _>>()
            .map_err(invalid)?;
        Ok(InstanceFile {
            instance: SchedulingInstance::new(doc.machines, jobs).map_err(invalid)?,
            reduction: doc.reduction,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("instance documents serialize") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        InstanceFile::from_doc(serde_json::from_str(text)?)
    }
}

impl ScheduleFile {
    pub fn inline(instance: InstanceFile, schedule: Schedule) -> Self {
        ScheduleFile {
            instance: InstanceSource::Inline(instance),
            schedule,
        }
    }

    pub fn to_json(&self) -> String {
        let (instance, instance_ref) = match &self.instance {
            InstanceSource::Inline(f) => (Some(f.to_doc()), None),
            InstanceSource::Reference(path) => (None, Some(path.clone())),
        };
        let doc = ScheduleDoc {
            instance,
            instance_ref,
            pieces: self.schedule.pieces().to_vec(),
        };
        serde_json::to_string_pretty(&doc).expect("schedule documents serialize") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let doc: ScheduleDoc = serde_json::from_str(text)?;
        let instance = match (doc.instance, doc.instance_ref) {
            (Some(inline), None) => InstanceSource::Inline(InstanceFile::from_doc(inline)?),
            (None, Some(path)) => InstanceSource::Reference(path),
            _ => {
                return Err(FileError::Invalid(
                    "a schedule file needs exactly one of \"instance\" or \"instance_ref\"".into(),
                ))
            }
        };
        Ok(ScheduleFile {
            instance,
            schedule: Schedule::new(doc.pieces),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{build_kw10_instance, PartitionInstance};

    #[test]
    fn reduction_instance_round_trips() {
        let (instance, meta) = build_kw10_instance(&PartitionInstance::new(vec![1, 1, 2], 2).unwrap());
        let file = InstanceFile::new(instance, Some(meta));
        let text = file.to_json();
        assert!(text.contains("\"L\": \"100/3\""));
        assert_eq!(InstanceFile::parse(&text).unwrap(), file);
    }

    #[test]
    fn schedule_reference_round_trips() {
        let file = ScheduleFile {
            instance: InstanceSource::Reference("inst.json".into()),
            schedule: Schedule::new(vec![Piece::new("x", 0, TimePoint::new(1, 2).unwrap(), 2.into())]),
        };
        let text = file.to_json();
        assert!(text.contains("\"start\": \"1/2\""));
        assert_eq!(ScheduleFile::parse(&text).unwrap(), file);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\n  \"machines\": 1,\n  \"jobs\": [ { \"id\": \"x\", \"kind\": \"generic\", \"processing\": \"1/0\", \"due\": 1 } ]\n}";
        match InstanceFile::parse(text) {
            Err(FileError::Syntax { line, column, message }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
                assert!(message.contains("denominator"), "{message}");
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
        assert!(matches!(
            InstanceFile::parse("{\"machines\": 1, \"jobs\": [], \"extra\": 3}"),
            Err(FileError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn semantic_errors() {
        let dup = r#"{"machines": 1, "jobs": [
            {"id": "x", "kind": "generic", "processing": 1, "due": 1},
            {"id": "x", "kind": "generic", "processing": 1, "due": 1}]}"#;
        assert!(matches!(InstanceFile::parse(dup), Err(FileError::Invalid(_))));
        let both = r#"{"instance_ref": "a", "instance": {"machines": 1, "jobs": []}, "pieces": []}"#;
        assert!(matches!(ScheduleFile::parse(both), Err(FileError::Invalid(_))));
    }
}
