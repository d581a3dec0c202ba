use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use pmtn_tardiness::deadline::{
    build_schedule_from_flow, feasible_with_deadlines, DeadlineJob, DeadlineProblem,
};
use pmtn_tardiness::io::{InstanceFile, ScheduleFile};
use pmtn_tardiness::model::{Job, JobKind, Piece, Schedule, SchedulingInstance};
use pmtn_tardiness::reduction::{
    build_kw10_instance, extract_partition_candidate, PartitionInstance,
};
use pmtn_tardiness::solvers::{
    build_witness_schedule, counterexample_fixture, counterexample_partition, edf_heuristic,
    exact_min_total_tardiness, exhaustive_oracle, exhaustive_oracle_on_grid, natural_horizon,
    solve_partition, SearchLimits, SearchStatus,
};
use pmtn_tardiness::verify::{report, verify_schedule};
use pmtn_tardiness::TimePoint;

fn t(n: u64, d: u64) -> TimePoint {
    TimePoint::new(n, d).unwrap()
}

/// Pairwise enumeration of the schedule invariants.
fn naive_valid(instance: &SchedulingInstance, schedule: &Schedule) -> bool {
    let pieces = schedule.pieces();
    for p in pieces {
        if p.start >= p.end || p.machine >= instance.machines() {
            return false;
        }
        match instance.job(&p.job) {
            Some(j) if p.start >= j.release() => {}
            _ => return false,
        }
    }
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            let overlap = a.start < b.end && b.start < a.end;
            if overlap && (a.machine == b.machine || a.job == b.job) {
                return false;
            }
        }
    }
    instance.jobs().iter().all(|j| {
        let mut total = TimePoint::ZERO;
        for p in pieces.iter().filter(|p| &p.job == j.id()) {
            total += p.end.checked_sub(p.start).unwrap();
        }
        total == j.processing()
    })
}

fn generic_instance(m: usize, jobs: &[(u64, u64)]) -> SchedulingInstance {
    let jobs = jobs
        .iter()
        .enumerate()
        .map(|(i, &(p, d))| Job::generic(&format!("j{i}"), p, d).unwrap())
        .collect();
    SchedulingInstance::new(m, jobs).unwrap()
}

/// Integer-slot search: can every job get its processing in unit slots
/// `[s, s+1]` inside `[r_j, D_j]`, one slot per job per step, `m` per slot?
fn integer_slot_feasible(m: usize, jobs: &[(u64, u64, u64)]) -> bool {
    fn go(
        slot: u64,
        horizon: u64,
        m: usize,
        jobs: &[(u64, u64, u64)],
        remaining: &mut Vec<u64>,
        memo: &mut HashMap<(u64, Vec<u64>), bool>,
    ) -> bool {
        if remaining.iter().all(|&r| r == 0) {
            return true;
        }
        if slot >= horizon {
            return false;
        }
        let key = (slot, remaining.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let active: Vec<usize> = (0..jobs.len())
            .filter(|&j| remaining[j] > 0 && jobs[j].1 <= slot && slot < jobs[j].2)
            .collect();
        let mut found = false;
        for mask in 0u32..(1 << active.len()) {
            if mask.count_ones() as usize > m {
                continue;
            }
            for (bit, &j) in active.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    remaining[j] -= 1;
                }
            }
            found = go(slot + 1, horizon, m, jobs, remaining, memo);
            for (bit, &j) in active.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    remaining[j] += 1;
                }
            }
            if found {
                break;
            }
        }
        memo.insert(key, found);
        found
    }
    let horizon = jobs.iter().map(|j| j.2).max().unwrap_or(0);
    let mut remaining: Vec<u64> = jobs.iter().map(|j| j.0).collect();
    go(0, horizon, m, jobs, &mut remaining, &mut HashMap::new())
}

fn problem_from(m: usize, jobs: &[(TimePoint, TimePoint, TimePoint)]) -> DeadlineProblem {
    DeadlineProblem::new(
        m,
        jobs.iter()
            .enumerate()
            .map(|(i, &(p, r, d))| DeadlineJob {
                id: format!("j{i}").into(),
                processing: p,
                release: r,
                deadline: d,
            })
            .collect(),
    )
    .unwrap()
}

fn rational_jobs(max_jobs: usize) -> impl Strategy<Value = (usize, Vec<(TimePoint, TimePoint, TimePoint)>)> {
    (
        1usize..=4,
        prop::collection::vec((1u64..=3, 1u64..=8, 0u64..=10, 0u64..=14), 1..=max_jobs),
    )
        .prop_map(|(m, raw)| {
            let jobs = raw
                .into_iter()
                .map(|(den, p, r, slack)| {
                    let p = t(p, den);
                    let r = t(r, den);
                    (p, r, r + t(slack, den))
                })
                .collect();
            (m, jobs)
        })
}

fn partition_instance(max_k: usize, max_a: u64) -> impl Strategy<Value = PartitionInstance> {
    prop::collection::vec(1u64..=max_a, 1..=max_k).prop_filter_map("odd sum", |a| {
        PartitionInstance::from_values(a).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn verify_agrees_with_pairwise_enumeration(
        m in 1usize..=3,
        jobs in prop::collection::vec((1u64..=4, 0u64..=2), 1..=4),
        raw in prop::collection::vec((0usize..5, 0usize..4, 0u64..=8, 0u64..=4), 0..=8),
    ) {
        let jobs: Vec<Job> = jobs
            .iter()
            .enumerate()
            .map(|(i, &(p, r))| Job::with_release(format!("j{i}"), JobKind::Generic, p.into(), 9.into(), r.into()).unwrap())
            .collect();
        let instance = SchedulingInstance::new(m, jobs).unwrap();
        let schedule: Schedule = raw
            .into_iter()
            .map(|(j, machine, s, len)| Piece::new(format!("j{j}"), machine, s.into(), (s + len).into()))
            .collect();
        prop_assert_eq!(verify_schedule(&instance, &schedule).is_valid(), naive_valid(&instance, &schedule));
    }

    #[test]
    fn deadline_flow_is_sound((m, jobs) in rational_jobs(12)) {
        let problem = problem_from(m, &jobs);
        if let Some(assignment) = feasible_with_deadlines(&problem) {
            assignment.check(&problem).unwrap();
            let schedule = build_schedule_from_flow(&problem, &assignment).unwrap();
            let instance = problem.to_instance().unwrap();
            prop_assert!(naive_valid(&instance, &schedule));
            let r = report(&instance, &schedule).unwrap();
            prop_assert!(r.late_jobs.is_empty());
        }
    }

    #[test]
    fn deadline_flow_is_complete_on_integer_grids(
        m in 1usize..=3,
        raw in prop::collection::vec((1u64..=4, 0u64..=4, 0u64..=8), 1..=4),
    ) {
        let jobs: Vec<(u64, u64, u64)> = raw.into_iter().map(|(p, r, d)| (p, r, d.max(r))).collect();
        let problem = problem_from(
            m,
            &jobs.iter().map(|&(p, r, d)| (p.into(), r.into(), d.into())).collect::<Vec<_>>(),
        );
        prop_assert_eq!(feasible_with_deadlines(&problem).is_some(), integer_slot_feasible(m, &jobs));
    }

    #[test]
    fn relaxing_deadlines_keeps_feasibility(
        (m, jobs) in rational_jobs(8),
        extra in prop::collection::vec(0u64..=6, 8),
    ) {
        let tight = problem_from(m, &jobs);
        let relaxed: Vec<_> = jobs
            .iter()
            .zip(&extra)
            .map(|(&(p, r, d), &e)| (p, r, d + t(e, 2)))
            .collect();
        if feasible_with_deadlines(&tight).is_some() {
            prop_assert!(feasible_with_deadlines(&problem_from(m, &relaxed)).is_some());
        }
    }

    #[test]
    fn report_is_permutation_invariant((m, jobs) in rational_jobs(8), seed in any::<u64>()) {
        let problem = problem_from(m, &jobs);
        if let Some(a) = feasible_with_deadlines(&problem) {
            let schedule = build_schedule_from_flow(&problem, &a).unwrap();
            let instance = problem.to_instance().unwrap();
            let mut pieces = schedule.pieces().to_vec();
            let len = pieces.len();
            for i in 0..len {
                pieces.swap(i, (seed as usize).wrapping_add(i * 7) % len);
            }
            let shuffled = Schedule::new(pieces);
            prop_assert_eq!(report(&instance, &schedule).unwrap(), report(&instance, &shuffled).unwrap());
            let r = report(&instance, &schedule).unwrap();
            for job in instance.jobs() {
                let c = r.completion[job.id()];
                let tard = r.tardiness[job.id()];
                prop_assert_eq!(tard.is_zero(), c <= job.due());
            }
        }
    }

    #[test]
    fn edf_is_always_valid((m, jobs) in rational_jobs(10), dues in prop::collection::vec(0u64..=20, 10)) {
        let jobs: Vec<Job> = jobs
            .iter()
            .zip(&dues)
            .enumerate()
            .map(|(i, (&(p, r, _), &d))| Job::with_release(format!("j{i}"), JobKind::Generic, p, d.into(), r).unwrap())
            .collect();
        let instance = SchedulingInstance::new(m, jobs).unwrap();
        let s = edf_heuristic(&instance);
        prop_assert!(naive_valid(&instance, &s));
        prop_assert!(verify_schedule(&instance, &s).is_valid());
    }

    #[test]
    fn reduction_identities(p in partition_instance(6, 9)) {
        let (instance, meta) = build_kw10_instance(&p);
        let k = p.k();
        prop_assert_eq!(instance.jobs().len(), 2 * k * k + k + 1);
        prop_assert_eq!(instance.machines(), k);
        let b3 = p.b().pow(3);
        prop_assert_eq!(instance.total_processing(), meta.l.mul_int(k as u64) + b3.into());
        for job in instance.jobs() {
            match job.kind() {
                JobKind::BAJob { index, .. } => {
                    prop_assert_eq!(job.due() + p.value(index).into(), meta.l);
                    prop_assert!(job.due() < meta.l);
                }
                JobKind::AJob { .. } => prop_assert_eq!(job.due(), meta.l),
                JobKind::LongJob => prop_assert_eq!(job.due(), b3.into()),
                JobKind::Generic => prop_assert!(false, "generic job in reduction"),
            }
        }
    }

    #[test]
    fn witness_meets_threshold_exactly(p in partition_instance(5, 9)) {
        if let Some(solution) = solve_partition(&p) {
            let (instance, meta) = build_kw10_instance(&p);
            let s = build_witness_schedule(&p, &solution).unwrap();
            prop_assert!(verify_schedule(&instance, &s).is_valid());
            prop_assert_eq!(report(&instance, &s).unwrap().total_tardiness, meta.threshold);
            let ex = extract_partition_candidate(&instance, Some(&meta), &s).unwrap();
            prop_assert_eq!(ex.index_set, solution);
        }
    }

    #[test]
    fn extraction_only_sees_completion_times(cut in 1u64..=8, seed in any::<u64>()) {
        let (instance, meta) = build_kw10_instance(&counterexample_partition());
        let fixture = counterexample_fixture();
        let before = extract_partition_candidate(&instance, Some(&meta), &fixture).unwrap();
        // split every piece at start + cut/9 of its length, then rotate the list
        let mut pieces = Vec::new();
        for piece in fixture.pieces() {
            let len = piece.end.checked_sub(piece.start).unwrap();
            let mid = piece.start + len * t(cut, 9);
            pieces.push(Piece::new(&piece.job, piece.machine, piece.start, mid));
            pieces.push(Piece::new(&piece.job, piece.machine, mid, piece.end));
        }
        let shift = (seed % pieces.len() as u64) as usize;
        pieces.rotate_left(shift);
        let resplit = Schedule::new(pieces);
        prop_assert!(verify_schedule(&instance, &resplit).is_valid());
        prop_assert_eq!(extract_partition_candidate(&instance, Some(&meta), &resplit).unwrap(), before);
    }

    #[test]
    fn partition_matches_subset_enumeration(a in prop::collection::vec(1u64..=15, 1..=12)) {
        if let Ok(p) = PartitionInstance::from_values(a.clone()) {
            let mut best: Option<Vec<usize>> = None;
            for mask in 0u32..(1 << a.len()) {
                let set: Vec<usize> = (0..a.len()).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                let sum: u64 = set.iter().map(|&i| a[i - 1]).sum();
                if sum == p.b() && best.as_ref().is_none_or(|b| set < *b) {
                    best = Some(set);
                }
            }
            let got = solve_partition(&p).map(|s| s.into_iter().collect::<Vec<_>>());
            prop_assert_eq!(got, best);
        }
    }

    #[test]
    fn files_round_trip((m, jobs) in rational_jobs(8), with_meta in any::<bool>()) {
        let list: Vec<Job> = jobs
            .iter()
            .enumerate()
            .map(|(i, &(p, r, d))| Job::with_release(format!("j{i}"), JobKind::Generic, p, d, r).unwrap())
            .collect();
        let instance = SchedulingInstance::new(m, list).unwrap();
        let meta = with_meta.then(|| build_kw10_instance(&counterexample_partition()).1);
        let file = InstanceFile::new(instance.clone(), meta);
        prop_assert_eq!(&InstanceFile::parse(&file.to_json()).unwrap(), &file);
        let schedule = edf_heuristic(&instance);
        let sfile = ScheduleFile::inline(file, schedule);
        prop_assert_eq!(ScheduleFile::parse(&sfile.to_json()).unwrap(), sfile);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn branch_and_bound_matches_oracle(
        m in 1usize..=3,
        jobs in prop::collection::vec((1u64..=4, 0u64..=6), 1..=5),
    ) {
        let instance = generic_instance(m, &jobs);
        let horizon = natural_horizon(&instance).unwrap();
        prop_assume!(horizon <= 12);
        let sol = exact_min_total_tardiness(&instance, &SearchLimits::default()).unwrap();
        prop_assert_eq!(sol.status, SearchStatus::Optimal);
        prop_assert!(verify_schedule(&instance, &sol.schedule).is_valid());
        prop_assert_eq!(report(&instance, &sol.schedule).unwrap().total_tardiness, sol.total_tardiness);
        prop_assert_eq!(sol.total_tardiness, exhaustive_oracle(&instance, horizon).unwrap());
    }

    #[test]
    fn half_integer_grid_does_not_improve(
        m in 1usize..=2,
        jobs in prop::collection::vec((1u64..=3, 0u64..=4), 1..=3),
    ) {
        let instance = generic_instance(m, &jobs);
        let horizon = natural_horizon(&instance).unwrap();
        let integer = exhaustive_oracle_on_grid(&instance, horizon.into(), TimePoint::ONE).unwrap();
        let half = exhaustive_oracle_on_grid(&instance, horizon.into(), t(1, 2)).unwrap();
        prop_assert_eq!(half, integer);
    }
}

#[test]
fn witness_and_counterexample_are_distinguished() {
    let p = counterexample_partition();
    let (instance, meta) = build_kw10_instance(&p);
    let mut sets = BTreeSet::new();
    for solution in [BTreeSet::from([3]), BTreeSet::from([1, 2])] {
        let s = build_witness_schedule(&p, &solution).unwrap();
        let ex = extract_partition_candidate(&instance, Some(&meta), &s).unwrap();
        assert!(ex.solves_partition);
        sets.insert(ex.index_set);
    }
    let ex = extract_partition_candidate(&instance, Some(&meta), &counterexample_fixture()).unwrap();
    assert!(!ex.solves_partition);
    sets.insert(ex.index_set);
    assert_eq!(sets.len(), 3);
}
