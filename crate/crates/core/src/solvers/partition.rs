use std::collections::BTreeSet;

use crate::reduction::PartitionInstance;

/// Subset-sum dynamic program over sums `0..=2b`.
///
/// Returns the lexicographically smallest set of 1-based indices summing to
/// `b`, or `None` when no subset does.
pub fn solve_partition(p: &PartitionInstance) -> Option<BTreeSet<usize>> {
    let a = p.values();
    let target = usize::try_from(p.b()).ok()?;
    let k = a.len();
    // reachable[i][s]: some subset of a[i..] sums to s
    let mut reachable = vec![vec![false; target + 1]; k + 1];
    reachable[k][0] = true;
    for i in (0..k).rev() {
        let ai = a[i] as usize;
        for s in 0..=target {
            reachable[i][s] = reachable[i + 1][s] || (s >= ai && reachable[i + 1][s - ai]);
        }
    }
    if !reachable[0][target] {
        return None;
    }
    // taking the smallest usable index first gives the lexicographic minimum
    let mut chosen = BTreeSet::new();
    let mut rest = target;
    for (i, &ai) in a.iter().enumerate() {
        let ai = ai as usize;
        if rest == 0 {
            break;
        }
        if ai <= rest && reachable[i + 1][rest - ai] {
            chosen.insert(i + 1);
            rest -= ai;
        }
    }
    debug_assert_eq!(rest, 0);
    Some(chosen)
}

/// Every solution, as sorted index sets, up to `limit` of them.
pub fn all_partition_solutions(p: &PartitionInstance, limit: usize) -> Vec<BTreeSet<usize>> {
    fn walk(
        a: &[u64],
        i: usize,
        rest: u64,
        current: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if rest == 0 {
            out.push(current.iter().copied().collect());
            return;
        }
        if i == a.len() {
            return;
        }
        if a[i] <= rest {
            current.push(i + 1);
            walk(a, i + 1, rest - a[i], current, out, limit);
            current.pop();
        }
        walk(a, i + 1, rest, current, out, limit);
    }
    let mut out = Vec::new();
    walk(p.values(), 0, p.b(), &mut Vec::new(), &mut out, limit);
    out
}
