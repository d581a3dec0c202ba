use crate::model::{JobId, Piece, Schedule};
use crate::time::TimePoint;

use super::{DeadlineError, DeadlineProblem, FlowAssignment};

/// McNaughton's wrap-around rule for one interval.
///
/// Amounts are laid end to end over the machine timelines `[start, end)`,
/// machine 0 first, splitting a job at a machine boundary. Requires every
/// amount to be at most `end - start` and the sum to be at most
/// `machines * (end - start)`; a split job then never overlaps itself.
pub fn wrap_around(
    start: TimePoint,
    end: TimePoint,
    machines: usize,
    amounts: &[(JobId, TimePoint)],
) -> Result<Vec<Piece>, DeadlineError> {
    let len = end
        .checked_sub(start)
        .map_err(|e| DeadlineError::InvalidAssignment(e.to_string()))?;
    let mut pieces = Vec::new();
    let mut machine = 0;
    let mut cursor = start;
    for (job, amount) in amounts {
        if *amount > len {
            return Err(DeadlineError::InvalidAssignment(format!(
                "{job} needs {amount} inside an interval of length {len}"
            )));
        }
        let mut remaining = *amount;
        while !remaining.is_zero() {
            if machine >= machines {
                return Err(DeadlineError::InvalidAssignment(format!(
                    "interval [{start},{end}] overloaded"
                )));
            }
            let room = end.checked_sub(cursor).expect("cursor stays inside the interval");
            let take = remaining.min(room);
            pieces.push(Piece::new(job, machine, cursor, cursor + take));
            cursor += take;
            remaining = remaining.checked_sub(take).expect("take <= remaining");
            if cursor == end {
                machine += 1;
                cursor = start;
            }
        }
    }
    Ok(pieces)
}

/// Decomposes a flow assignment into an explicit schedule, interval by
/// interval, jobs in problem order.
pub fn build_schedule_from_flow(
    problem: &DeadlineProblem,
    assignment: &FlowAssignment,
) -> Result<Schedule, DeadlineError> {
    assignment.check(problem)?;
    let mut pieces = Vec::new();
    for (i, (start, end)) in assignment.grid.intervals().enumerate() {
        let amounts: Vec<(JobId, TimePoint)> = problem
            .jobs()
            .iter()
            .zip(&assignment.amounts)
            .filter(|(_, row)| !row[i].is_zero())
            .map(|(job, row)| (job.id.clone(), row[i]))
            .collect();
        pieces.extend(wrap_around(start, end, problem.machines(), &amounts)?);
    }
    Ok(Schedule::new(pieces).canonicalized())
}
