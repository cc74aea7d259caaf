//! Greedy clique cover of an interval compatibility graph with bounded
//! clique size.

use crate::model::Time;

/// A group of identical unit-size jobs sharing one processing-time range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitJobs {
    pub min_time: Time,
    pub max_time: Time,
    pub count: u64,
}

impl UnitJobs {
    pub fn new(min_time: Time, max_time: Time, count: u64) -> Self {
        Self {
            min_time,
            max_time,
            count,
        }
    }
}

/// Result of a clique cover: number of batches and the sum of their
/// processing times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoverCost {
    pub batches: u64,
    pub proc_time: u64,
}

/// Covers unit jobs with batches of at most `capacity` jobs whose ranges
/// share a common value, minimizing both the batch count and the summed
/// batch processing time.
///
/// Jobs are visited by non-increasing `min_time`; equal keys keep their
/// input order. Each batch is labelled by the first unplaced job and
/// absorbs the first `capacity` unplaced jobs whose range contains the
/// label's `min_time`. Groups are processed run-length encoded, so the
/// running time does not depend on the counts.
pub fn gac_plus(units: &[UnitJobs], capacity: u64) -> CoverCost {
    assert!(capacity >= 1, "capacity must be positive");
    let mut order: Vec<UnitJobs> = units.iter().copied().filter(|u| u.count > 0).collect();
    order.sort_by_key(|u| std::cmp::Reverse(u.min_time));
    let mut left: Vec<u64> = order.iter().map(|u| u.count).collect();

    let mut cost = CoverCost::default();
    let mut head = 0;
    while head < order.len() {
        if left[head] == 0 {
            head += 1;
            continue;
        }
        let label = order[head].min_time;
        // The label group alone may fill several batches in a row.
        let full = left[head] / capacity;
        if full > 0 {
            cost.batches += full;
            cost.proc_time += full * label as u64;
            left[head] -= full * capacity;
            continue;
        }
        let mut room = capacity;
        for (unit, rest) in order[head..].iter().zip(&mut left[head..]) {
            if room == 0 {
                break;
            }
            if *rest > 0 && unit.min_time <= label && label <= unit.max_time {
                let take = (*rest).min(room);
                *rest -= take;
                room -= take;
            }
        }
        cost.batches += 1;
        cost.proc_time += label as u64;
    }
    cost
}
