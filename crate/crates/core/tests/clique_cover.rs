use osp_core::bounds::{gac_plus, UnitJobs};
use osp_core::min_clique_cover;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_units(rng: &mut ChaCha8Rng, n: usize) -> Vec<(i64, i64)> {
    (0..n)
        .map(|_| {
            let lo = rng.gen_range(1..=10);
            (lo, rng.gen_range(lo..=10))
        })
        .collect()
}

/// Every set partition into compatible blocks of at most `capacity`
/// intervals; returns the lexicographic minimum of (blocks, runtime) and
/// the least runtime overall.
fn brute_force(intervals: &[(i64, i64)], capacity: usize) -> ((u64, u64), u64) {
    fn go(
        intervals: &[(i64, i64)],
        capacity: usize,
        i: usize,
        blocks: &mut Vec<Vec<usize>>,
        best: &mut ((u64, u64), u64),
    ) {
        if i == intervals.len() {
            let runtime: i64 = blocks
                .iter()
                .map(|b| b.iter().map(|&j| intervals[j].0).max().unwrap())
                .sum();
            let key = (blocks.len() as u64, runtime as u64);
            best.0 = best.0.min(key);
            best.1 = best.1.min(key.1);
            return;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(vec![i]);
            } else {
                let block = &blocks[b];
                let lo = block.iter().map(|&j| intervals[j].0).max().unwrap().max(intervals[i].0);
                let hi = block.iter().map(|&j| intervals[j].1).min().unwrap().min(intervals[i].1);
                if block.len() >= capacity || lo > hi {
                    continue;
                }
                blocks[b].push(i);
            }
            go(intervals, capacity, i + 1, blocks, best);
            if blocks[b].len() == 1 {
                blocks.pop();
            } else {
                blocks[b].pop();
            }
        }
    }
    let mut best = ((u64::MAX, u64::MAX), u64::MAX);
    go(intervals, capacity, 0, &mut Vec::new(), &mut best);
    best
}

#[test]
fn exhaustive_cover_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=7);
        let c = rng.gen_range(1..=4);
        let iv = random_units(&mut rng, n);
        let got = min_clique_cover(&iv, c as u64);
        let (lex, min_p) = brute_force(&iv, c);
        assert_eq!((got.batches, got.proc_time), lex, "{iv:?} c={c}");
        assert_eq!(got.min_proc_time, min_p, "{iv:?} c={c}");
    }
}

#[test]
fn gac_plus_is_optimal_on_unit_jobs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let c = rng.gen_range(1..=4);
        let iv = random_units(&mut rng, n);
        let units: Vec<UnitJobs> = iv.iter().map(|&(lo, hi)| UnitJobs::new(lo, hi, 1)).collect();
        let gac = gac_plus(&units, c);
        let exact = min_clique_cover(&iv, c);
        assert_eq!((gac.batches, gac.proc_time), (exact.batches, exact.proc_time), "{iv:?} c={c}");
        assert_eq!(gac.proc_time, exact.min_proc_time, "{iv:?} c={c}");
    }
}

#[test]
fn dropping_a_unit_job_never_raises_the_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let c = rng.gen_range(1..=4);
        let iv = random_units(&mut rng, n);
        let full = min_clique_cover(&iv, c);
        for j in 0..n {
            let mut rest = iv.clone();
            rest.remove(j);
            let sub = min_clique_cover(&rest, c);
            assert!(sub.batches <= full.batches && sub.min_proc_time <= full.min_proc_time);
        }
    }
}
