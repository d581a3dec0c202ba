use crate::model::{Piece, Schedule, SchedulingInstance};
use crate::time::TimePoint;

/// Earliest-due-date dispatching.
///
/// At each event (a release or a completion) the at most `m` released,
/// unfinished jobs with the earliest due dates run, ties broken by instance
/// order. A job keeps its machine while it stays selected.
pub fn edf_heuristic(instance: &SchedulingInstance) -> Schedule {
    let jobs = instance.jobs();
    let m = instance.machines();
    let mut remaining: Vec<TimePoint> = jobs.iter().map(|j| j.processing()).collect();
    let mut machine_of: Vec<Option<usize>> = vec![None; jobs.len()];
    let mut pieces = Vec::new();
    let mut now = TimePoint::ZERO;

    loop {
        let unfinished: Vec<usize> = (0..jobs.len()).filter(|&j| !remaining[j].is_zero()).collect();
        if unfinished.is_empty() {
            break;
        }
        let mut ready: Vec<usize> = unfinished
            .iter()
            .copied()
            .filter(|&j| jobs[j].release() <= now)
            .collect();
        let next_release = unfinished
            .iter()
            .map(|&j| jobs[j].release())
            .filter(|&r| r > now)
            .min();
        if ready.is_empty() {
            now = next_release.expect("an unfinished job is released later");
            continue;
        }
        ready.sort_by_key(|&j| (jobs[j].due(), j));
        ready.truncate(m);

        let mut next = ready
            .iter()
            .map(|&j| now + remaining[j])
            .min()
            .expect("ready is non-empty");
        if let Some(r) = next_release {
            next = next.min(r);
        }

        let mut busy = vec![false; m];
        let mut assigned: Vec<(usize, usize)> = Vec::with_capacity(ready.len());
        for &j in &ready {
            if let Some(q) = machine_of[j] {
                if !busy[q] {
                    busy[q] = true;
                    assigned.push((j, q));
                }
            }
        }
        for &j in &ready {
            if assigned.iter().any(|&(a, _)| a == j) {
                continue;
            }
            let q = busy.iter().position(|b| !b).expect("at most m jobs selected");
            busy[q] = true;
            assigned.push((j, q));
        }
        machine_of.iter_mut().for_each(|q| *q = None);
        let span = next.checked_sub(now).expect("events move forward");
        for (j, q) in assigned {
            pieces.push(Piece::new(jobs[j].id(), q, now, next));
            remaining[j] = remaining[j].checked_sub(span).expect("span <= remaining");
            machine_of[j] = Some(q);
        }
        now = next;
    }
    Schedule::new(pieces).canonicalized()
}
