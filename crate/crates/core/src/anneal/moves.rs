use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, JobId, Layout, MachineId};

/// A neighborhood move on a batch layout. Positions refer to the layout the
/// move is sampled from, except where noted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Swap the batches at `position` and `position + 1`.
    SwapConsecutive { machine: MachineId, position: usize },
    /// Take out the batch at `from` and reinsert it so that it ends up at
    /// index `to`.
    InsertBatch { machine: MachineId, from: usize, to: usize },
    /// Move `job` into the existing batch `batch` of `machine`.
    MoveJob { job: JobId, machine: MachineId, batch: usize },
    /// Move `job` into a new batch of its own. `position` indexes the
    /// target machine's batches after the job has been taken out.
    MoveJobNewBatch { job: JobId, machine: MachineId, position: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    SwapConsecutive,
    InsertBatch,
    MoveJob,
    MoveJobNewBatch,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [
        MoveKind::SwapConsecutive,
        MoveKind::InsertBatch,
        MoveKind::MoveJob,
        MoveKind::MoveJobNewBatch,
    ];
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::SwapConsecutive { .. } => MoveKind::SwapConsecutive,
            Move::InsertBatch { .. } => MoveKind::InsertBatch,
            Move::MoveJob { .. } => MoveKind::MoveJob,
            Move::MoveJobNewBatch { .. } => MoveKind::MoveJobNewBatch,
        }
    }
}

/// `(machine, batch)` holding `job`.
pub(crate) fn locate(layout: &Layout, job: JobId) -> Option<(usize, usize)> {
    layout.iter().enumerate().find_map(|(m, batches)| {
        batches
            .iter()
            .position(|b| b.contains(&job))
            .map(|b| (m, b))
    })
}

fn has_arguments(instance: &Instance, layout: &Layout, kind: MoveKind) -> bool {
    match kind {
        MoveKind::SwapConsecutive | MoveKind::InsertBatch => layout.iter().any(|m| m.len() >= 2),
        MoveKind::MoveJob => layout.iter().map(Vec::len).sum::<usize>() >= 2,
        MoveKind::MoveJobNewBatch => layout.iter().enumerate().any(|(m, batches)| {
            batches.iter().any(|b| {
                b.len() >= 2
                    || batches.len() >= 2
                    || b.iter().any(|&j| instance.job(j).eligible.iter().any(|e| e.0 != m))
            })
        }),
    }
}

/// Draws a move kind with probability proportional to `probs` among the
/// kinds that have at least one argument, then uniform arguments.
pub fn sample_move<R: Rng + ?Sized>(
    instance: &Instance,
    layout: &Layout,
    rng: &mut R,
    probs: &[f64; 4],
) -> Result<Move> {
    let open: Vec<(MoveKind, f64)> = MoveKind::ALL
        .iter()
        .zip(probs)
        .filter(|&(&k, &p)| p > 0.0 && has_arguments(instance, layout, k))
        .map(|(&k, &p)| (k, p))
        .collect();
    let total: f64 = open.iter().map(|(_, p)| p).sum();
    if open.is_empty() {
        return Err(Error::NoMoveAvailable);
    }
    let mut draw = rng.gen::<f64>() * total;
    let mut kind = open[open.len() - 1].0;
    for &(k, p) in &open {
        if draw < p {
            kind = k;
            break;
        }
        draw -= p;
    }
    Ok(sample_kind(instance, layout, rng, kind))
}

fn sample_kind<R: Rng + ?Sized>(
    instance: &Instance,
    layout: &Layout,
    rng: &mut R,
    kind: MoveKind,
) -> Move {
    match kind {
        MoveKind::SwapConsecutive | MoveKind::InsertBatch => {
            let busy: Vec<usize> = (0..layout.len()).filter(|&m| layout[m].len() >= 2).collect();
            let m = busy[rng.gen_range(0..busy.len())];
            let len = layout[m].len();
            if kind == MoveKind::SwapConsecutive {
                Move::SwapConsecutive {
                    machine: MachineId(m),
                    position: rng.gen_range(0..len - 1),
                }
            } else {
                let from = rng.gen_range(0..len);
                let mut to = rng.gen_range(0..len - 1);
                if to >= from {
                    to += 1;
                }
                Move::InsertBatch {
                    machine: MachineId(m),
                    from,
                    to,
                }
            }
        }
        MoveKind::MoveJob => {
            let batches: Vec<(usize, usize)> = layout
                .iter()
                .enumerate()
                .flat_map(|(m, bs)| (0..bs.len()).map(move |b| (m, b)))
                .collect();
            let job = JobId(rng.gen_range(0..instance.jobs.len()));
            let own = locate(layout, job).expect("layout covers every job");
            let mut pick = rng.gen_range(0..batches.len() - 1);
            if batches[pick] >= own {
                pick += 1;
            }
            let (m, b) = batches[pick];
            Move::MoveJob {
                job,
                machine: MachineId(m),
                batch: b,
            }
        }
        MoveKind::MoveJobNewBatch => loop {
            let job = JobId(rng.gen_range(0..instance.jobs.len()));
            let eligible = &instance.job(job).eligible;
            let machine = eligible[rng.gen_range(0..eligible.len())];
            let (src_m, src_b) = locate(layout, job).expect("layout covers every job");
            let alone = layout[src_m][src_b].len() == 1;
            let len = layout[machine.0].len() - usize::from(alone && src_m == machine.0);
            let position = rng.gen_range(0..=len);
            if alone && src_m == machine.0 && position == src_b {
                continue;
            }
            break Move::MoveJobNewBatch {
                job,
                machine,
                position,
            };
        },
    }
}

/// Cheap structural checks: same attribute, eligibility, capacity and
/// processing-time compatibility. Schedule feasibility is left to the
/// schedule builder.
pub fn admissible(instance: &Instance, layout: &Layout, mv: &Move) -> bool {
    match *mv {
        Move::SwapConsecutive { .. } | Move::InsertBatch { .. } => true,
        Move::MoveJobNewBatch { job, machine, .. } => instance.job(job).is_eligible(machine),
        Move::MoveJob { job, machine, batch } => {
            let moved = instance.job(job);
            let target = &layout[machine.0][batch];
            if !moved.is_eligible(machine) || target.contains(&job) {
                return false;
            }
            let mut size = moved.size;
            let mut longest = moved.min_time;
            let mut latest = moved.max_time;
            for &j in target {
                let other = instance.job(j);
                if other.attribute != moved.attribute {
                    return false;
                }
                size += other.size;
                longest = longest.max(other.min_time);
                latest = latest.min(other.max_time);
            }
            size <= instance.machine(machine).capacity && longest <= latest
        }
    }
}

/// The new batch lists of the machines `mv` changes.
pub(crate) fn rewrite(layout: &Layout, mv: &Move) -> Vec<(usize, Vec<Vec<JobId>>)> {
    match *mv {
        Move::SwapConsecutive { machine, position } => {
            let mut batches = layout[machine.0].clone();
            batches.swap(position, position + 1);
            vec![(machine.0, batches)]
        }
        Move::InsertBatch { machine, from, to } => {
            let mut batches = layout[machine.0].clone();
            let batch = batches.remove(from);
            batches.insert(to, batch);
            vec![(machine.0, batches)]
        }
        Move::MoveJob { job, machine, batch } => {
            let (src_m, src_b) = locate(layout, job).expect("layout covers every job");
            let mut target = layout[machine.0].clone();
            target[batch].push(job);
            if src_m == machine.0 {
                take_out(&mut target, src_b, job);
                vec![(machine.0, target)]
            } else {
                let mut source = layout[src_m].clone();
                take_out(&mut source, src_b, job);
                vec![(src_m, source), (machine.0, target)]
            }
        }
        Move::MoveJobNewBatch { job, machine, position } => {
            let (src_m, src_b) = locate(layout, job).expect("layout covers every job");
            let mut source = layout[src_m].clone();
            take_out(&mut source, src_b, job);
            if src_m == machine.0 {
                source.insert(position, vec![job]);
                vec![(machine.0, source)]
            } else {
                let mut target = layout[machine.0].clone();
                target.insert(position, vec![job]);
                vec![(src_m, source), (machine.0, target)]
            }
        }
    }
}

fn take_out(batches: &mut Vec<Vec<JobId>>, batch: usize, job: JobId) {
    batches[batch].retain(|&j| j != job);
    if batches[batch].is_empty() {
        batches.remove(batch);
    }
}

/// Applies `mv` to `layout` in place.
pub fn apply_move(layout: &mut Layout, mv: &Move) {
    for (m, batches) in rewrite(layout, mv) {
        layout[m] = batches;
    }
}
