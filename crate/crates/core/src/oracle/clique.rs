use std::collections::HashMap;

use crate::bounds::gac::UnitJobs;
use crate::model::Time;

/// Exact optimum of the unit-size single-machine batching relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueCover {
    /// Fewest batches.
    pub batches: u64,
    /// Least summed processing time among covers with `batches` batches.
    pub proc_time: u64,
    /// Least summed processing time over all covers.
    pub min_proc_time: u64,
}

/// Exhaustive minimum clique cover of unit jobs given as `(min, max)`
/// processing-time ranges, with at most `capacity` jobs per batch.
pub fn min_clique_cover(intervals: &[(Time, Time)], capacity: u64) -> CliqueCover {
    let units: Vec<UnitJobs> = intervals
        .iter()
        .map(|&(lo, hi)| UnitJobs::new(lo, hi, 1))
        .collect();
    min_clique_cover_units(&units, capacity)
}

/// Same as [`min_clique_cover`] with identical jobs grouped. The search
/// runs over vectors of remaining counts, so large groups stay cheap.
pub fn min_clique_cover_units(units: &[UnitJobs], capacity: u64) -> CliqueCover {
    let mut groups: Vec<UnitJobs> = Vec::new();
    for u in units.iter().filter(|u| u.count > 0) {
        match groups
            .iter_mut()
            .find(|g| (g.min_time, g.max_time) == (u.min_time, u.max_time))
        {
            Some(g) => g.count += u.count,
            None => groups.push(*u),
        }
    }
    let mut search = Search {
        groups: &groups,
        capacity,
        memo: HashMap::new(),
    };
    let remaining: Vec<u64> = groups.iter().map(|g| g.count).collect();
    let best = search.solve(&remaining);
    CliqueCover {
        batches: best.lex.0,
        proc_time: best.lex.1,
        min_proc_time: best.proc_time,
    }
}

#[derive(Clone, Copy)]
struct Best {
    lex: (u64, u64),
    proc_time: u64,
}

struct Search<'a> {
    groups: &'a [UnitJobs],
    capacity: u64,
    memo: HashMap<Vec<u64>, Best>,
}

impl Search<'_> {
    fn solve(&mut self, remaining: &[u64]) -> Best {
        let Some(first) = remaining.iter().position(|&c| c > 0) else {
            return Best {
                lex: (0, 0),
                proc_time: 0,
            };
        };
        if let Some(&b) = self.memo.get(remaining) {
            return b;
        }
        let mut best = Best {
            lex: (u64::MAX, u64::MAX),
            proc_time: u64::MAX,
        };
        let mut take = vec![0u64; remaining.len()];
        let group = self.groups[first];
        for n in 1..=remaining[first].min(self.capacity) {
            take[first] = n;
            self.extend(
                remaining,
                &mut take,
                first + 1,
                n,
                (group.min_time, group.max_time),
                &mut best,
            );
        }
        self.memo.insert(remaining.to_vec(), best);
        best
    }

    /// Enumerates the batches that contain `take[..from]` plus any choice
    /// from groups `from..`, and folds their results into `best`.
    fn extend(
        &mut self,
        remaining: &[u64],
        take: &mut Vec<u64>,
        from: usize,
        size: u64,
        range: (Time, Time),
        best: &mut Best,
    ) {
        if from == remaining.len() {
            let rest: Vec<u64> = remaining.iter().zip(take.iter()).map(|(r, t)| r - t).collect();
            let sub = self.solve(&rest);
            let label = range.0 as u64;
            best.lex = best.lex.min((sub.lex.0 + 1, sub.lex.1 + label));
            best.proc_time = best.proc_time.min(sub.proc_time + label);
            return;
        }
        self.extend(remaining, take, from + 1, size, range, best);
        let g = self.groups[from];
        let joined = (range.0.max(g.min_time), range.1.min(g.max_time));
        if remaining[from] == 0 || joined.0 > joined.1 {
            return;
        }
        for n in 1..=remaining[from].min(self.capacity - size) {
            take[from] = n;
            self.extend(remaining, take, from + 1, size + n, joined, best);
        }
        take[from] = 0;
    }
}
