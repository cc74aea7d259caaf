//! Simulated annealing over ordered batch layouts.

mod moves;

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::BoundReport;
use crate::cost::evaluate;
use crate::error::{Error, Result};
use crate::greedy::construct;
use crate::model::{Batch, CostBreakdown, Instance, JobId, Layout, MachineId, ObjectiveWeights, Solution};
use crate::schedule::schedule_machine;

pub use moves::{admissible, apply_move, sample_move, Move, MoveKind};

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealParams {
    pub final_temp: f64,
    pub cooling_rate: f64,
    /// Target acceptance ratio of the warm-up pass that fixes the initial
    /// temperature.
    pub accepted_move_ratio: f64,
    /// Relative weights of swap, insert, move-job and move-job-to-new-batch.
    pub move_probs: [f64; 4],
    pub time_limit: Duration,
    /// Stop once the best objective is within this many percent of the
    /// lower bound.
    pub lb_gap_stop: Option<f64>,
    pub rng_seed: u64,
    pub trace_period: Duration,
    pub warmup_moves: usize,
    /// Moves per temperature level, per job.
    pub moves_per_job: usize,
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self {
            final_temp: 0.004,
            cooling_rate: 0.988,
            accepted_move_ratio: 0.309,
            move_probs: [0.090, 0.293, 0.328, 0.289],
            time_limit: Duration::from_secs(360),
            lb_gap_stop: None,
            rng_seed: 0,
            trace_period: Duration::from_secs(2),
            warmup_moves: 1000,
            moves_per_job: 50,
        }
    }
}

impl AnnealParams {
    fn check(&self) -> Result<()> {
        let fine = self.cooling_rate > 0.0
            && self.cooling_rate < 1.0
            && self.final_temp > 0.0
            && self.accepted_move_ratio > 0.0
            && self.accepted_move_ratio < 1.0
            && self.move_probs.iter().all(|p| *p >= 0.0 && p.is_finite())
            && self.move_probs.iter().sum::<f64>() > 0.0
            && self.lb_gap_stop.is_none_or(|g| g >= 0.0);
        if fine {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid annealing parameters: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    FinalTemperature,
    TimeLimit,
    Gap,
    /// The layout admits no move at all.
    NoMoves,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::FinalTemperature => "temperature",
            StopReason::TimeLimit => "time",
            StopReason::Gap => "gap",
            StopReason::NoMoves => "no-moves",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSample {
    pub elapsed: Duration,
    pub objective: f64,
    pub proc_time: u64,
    pub tardy: u64,
    pub setup_cost: u64,
}

/// Best-so-far objective sampled every `period`, plus a final sample.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AnnealTrace {
    pub period: Duration,
    pub samples: Vec<TraceSample>,
}

#[derive(Debug, Clone)]
pub struct AnnealOutcome {
    pub solution: Solution,
    pub cost: CostBreakdown,
    pub trace: AnnealTrace,
    pub stop_reason: StopReason,
    pub initial_temp: f64,
    pub iterations: u64,
    pub accepted: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Totals {
    proc_time: u64,
    tardy: u64,
    setup_cost: u64,
}

impl Totals {
    fn of_machine(instance: &Instance, machine: MachineId, batches: &[Batch]) -> Self {
        let mut prev = instance.machine(machine).initial_attribute;
        let mut t = Totals::default();
        for batch in batches {
            let attr = instance.job(batch.jobs[0]).attribute;
            t.setup_cost += instance.setup_cost(prev, attr);
            t.proc_time += batch.processing_time as u64;
            t.tardy += batch
                .jobs
                .iter()
                .filter(|&&j| batch.end() > instance.job(j).due)
                .count() as u64;
            prev = attr;
        }
        t
    }

    fn scaled(&self, w: &ObjectiveWeights) -> u128 {
        w.scaled(self.proc_time, self.tardy, self.setup_cost)
    }

    fn add(self, o: Totals) -> Totals {
        Totals {
            proc_time: self.proc_time + o.proc_time,
            tardy: self.tardy + o.tardy,
            setup_cost: self.setup_cost + o.setup_cost,
        }
    }

    fn sub(self, o: Totals) -> Totals {
        Totals {
            proc_time: self.proc_time - o.proc_time,
            tardy: self.tardy - o.tardy,
            setup_cost: self.setup_cost - o.setup_cost,
        }
    }
}

/// Current layout with its schedule, kept per machine so a move only
/// rebuilds the machines it touches.
struct State {
    layout: Layout,
    schedule: Vec<Vec<Batch>>,
    per_machine: Vec<Totals>,
    totals: Totals,
}

struct Candidate {
    machines: Vec<(usize, Vec<Vec<JobId>>, Vec<Batch>, Totals)>,
    totals: Totals,
}

impl State {
    fn new(instance: &Instance, solution: &Solution) -> Self {
        let per_machine: Vec<Totals> = solution
            .machines
            .iter()
            .enumerate()
            .map(|(m, b)| Totals::of_machine(instance, MachineId(m), b))
            .collect();
        let totals = per_machine.iter().fold(Totals::default(), |a, &b| a.add(b));
        Self {
            layout: solution.layout(),
            schedule: solution.machines.clone(),
            per_machine,
            totals,
        }
    }

    /// Rescheduled machines after `mv`, or `None` if the move is
    /// inadmissible or unschedulable.
    fn try_move(&self, instance: &Instance, mv: &Move) -> Option<Candidate> {
        if !admissible(instance, &self.layout, mv) {
            return None;
        }
        let mut totals = self.totals;
        let mut machines = Vec::with_capacity(2);
        for (m, batches) in moves::rewrite(&self.layout, mv) {
            let schedule = schedule_machine(instance, MachineId(m), &batches).ok()?;
            let t = Totals::of_machine(instance, MachineId(m), &schedule);
            totals = totals.sub(self.per_machine[m]).add(t);
            machines.push((m, batches, schedule, t));
        }
        Some(Candidate { machines, totals })
    }

    fn accept(&mut self, candidate: Candidate) {
        for (m, batches, schedule, t) in candidate.machines {
            self.layout[m] = batches;
            self.schedule[m] = schedule;
            self.per_machine[m] = t;
        }
        self.totals = candidate.totals;
    }

    fn solution(&self) -> Solution {
        Solution {
            machines: self.schedule.clone(),
        }
    }
}

/// Anneals from the dispatching-rule schedule.
///
/// Temperatures apply to changes of the objective summed over jobs, i.e.
/// `n` times the reported objective. The initial temperature is
/// `-mean|d| / ln(accepted_move_ratio)` over the nonzero changes `d` of
/// `warmup_moves` sampled (not applied) moves, so that roughly that share of worsening moves is
/// accepted at the start. Each level runs `moves_per_job * n` proposals and
/// then multiplies the temperature by `cooling_rate`.
pub fn run_annealing(
    instance: &Instance,
    params: &AnnealParams,
    weights: &ObjectiveWeights,
    lb: Option<&BoundReport>,
) -> Result<AnnealOutcome> {
    params.check()?;
    let clock = Instant::now();
    let (greedy, greedy_cost) = construct(instance, weights)?;
    // deltas of the job-summed objective: the per-job average would shrink
    // every move by 1/n and leave the final temperature size dependent
    let scale = weights.scale(1).max(1) as f64;
    let lb_scaled = lb.map(|b| b.scaled(weights));
    let gap_reached = |value: u128| match (lb_scaled, params.lb_gap_stop) {
        (Some(bound), Some(gap)) => {
            value <= bound || 100.0 * (value - bound) as f64 <= gap * value as f64
        }
        _ => false,
    };

    let mut state = State::new(instance, &greedy);
    let mut best = state.solution();
    let mut best_totals = state.totals;
    let mut trace = AnnealTrace {
        period: params.trace_period,
        samples: Vec::new(),
    };
    let sample = |elapsed, t: Totals| TraceSample {
        elapsed,
        objective: weights.objective(t.proc_time, t.tardy, t.setup_cost, instance.jobs.len()),
        proc_time: t.proc_time,
        tardy: t.tardy,
        setup_cost: t.setup_cost,
    };
    trace.samples.push(sample(Duration::ZERO, best_totals));

    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut iterations = 0u64;
    let mut accepted = 0u64;
    let mut initial_temp = 0.0;

    let stop_reason = 'search: {
        if params.time_limit.is_zero() {
            break 'search StopReason::TimeLimit;
        }
        if gap_reached(best_totals.scaled(weights)) {
            break 'search StopReason::Gap;
        }

        let mut sum = 0.0;
        let mut count = 0usize;
        for _ in 0..params.warmup_moves {
            let mv = match sample_move(instance, &state.layout, &mut rng, &params.move_probs) {
                Ok(mv) => mv,
                Err(Error::NoMoveAvailable) => break 'search StopReason::NoMoves,
                Err(e) => return Err(e),
            };
            if let Some(c) = state.try_move(instance, &mv) {
                let d = c.totals.scaled(weights).abs_diff(state.totals.scaled(weights));
                if d > 0 {
                    sum += d as f64 / scale;
                    count += 1;
                }
            }
        }
        let mut temp = if count > 0 {
            -(sum / count as f64) / params.accepted_move_ratio.ln()
        } else {
            10.0 * params.final_temp
        };
        initial_temp = temp;
        let per_level = (params.moves_per_job * instance.jobs.len()).max(1);
        let mut next_sample = params.trace_period;

        while temp > params.final_temp {
            for _ in 0..per_level {
                let elapsed = clock.elapsed();
                if elapsed >= params.time_limit {
                    break 'search StopReason::TimeLimit;
                }
                if !params.trace_period.is_zero() && elapsed >= next_sample {
                    trace.samples.push(sample(elapsed, best_totals));
                    while next_sample <= elapsed {
                        next_sample += params.trace_period;
                    }
                }
                iterations += 1;
                let mv = match sample_move(instance, &state.layout, &mut rng, &params.move_probs) {
                    Ok(mv) => mv,
                    Err(Error::NoMoveAvailable) => break 'search StopReason::NoMoves,
                    Err(e) => return Err(e),
                };
                let Some(candidate) = state.try_move(instance, &mv) else {
                    continue;
                };
                let now = state.totals.scaled(weights);
                let next = candidate.totals.scaled(weights);
                let take = next <= now || {
                    let delta = (next - now) as f64 / scale;
                    rng.gen::<f64>() < (-delta / temp).exp()
                };
                if !take {
                    continue;
                }
                accepted += 1;
                state.accept(candidate);
                if next < best_totals.scaled(weights) {
                    best = state.solution();
                    best_totals = state.totals;
                    if gap_reached(next) {
                        break 'search StopReason::Gap;
                    }
                }
            }
            temp *= params.cooling_rate;
        }
        StopReason::FinalTemperature
    };

    trace.samples.push(sample(clock.elapsed(), best_totals));
    let cost = if best == greedy {
        greedy_cost
    } else {
        evaluate(instance, &best, weights)?
    };
    debug_assert_eq!(cost.scaled(weights), best_totals.scaled(weights));
    Ok(AnnealOutcome {
        solution: best,
        cost,
        trace,
        stop_reason,
        initial_temp,
        iterations,
        accepted,
    })
}
