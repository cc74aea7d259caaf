use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use rayon::prelude::*;

use osp_core::io::{
    generate_instance, parse_generator_config, parse_instance, parse_solution, write_bound_report,
    write_cost, write_instance, write_results, write_solution, write_traces, GeneratorConfig,
    ResultRow,
};
use osp_core::{
    check_feasibility, construct, evaluate, exact_solve, objective_lb, relative_gap, run_annealing,
    AnnealOutcome, AnnealParams, BoundReport, CostBreakdown, Error, Instance, ObjectiveWeights,
    OracleLimits, Solution,
};

use crate::{AnnealArgs, BenchArgs, Command, GenerateArgs, OutputArgs};

/// Environment variable holding the worker count for replicates and
/// benchmark runs.
pub const WORKERS_VAR: &str = "OSP_WORKERS";

pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::InfeasibleSolution(_)
            | Error::InfeasibleBatch { .. }
            | Error::IncompleteLayout
            | Error::LayoutShape { .. }
            | Error::Infeasible
            | Error::Unschedulable(_)
            | Error::NoFeasiblePlacement(_),
        ) => 2,
        Some(
            Error::BudgetExceeded { .. }
            | Error::TooManyJobs { .. }
            | Error::HorizonExceeded { .. }
            | Error::GenerationRetryExceeded { .. },
        ) => 3,
        _ => 1,
    }
}

pub fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Bounds { instance, results } => bounds(&instance, results.results.as_deref()),
        Command::Greedy { instance, output } => greedy(&instance, &output),
        Command::Anneal(args) => anneal(&args),
        Command::Oracle {
            instance,
            no_prune,
            max_jobs,
            node_budget,
            output,
        } => oracle(&instance, !no_prune, max_jobs, node_budget, &output),
        Command::Evaluate { instance, solution } => evaluate_file(&instance, &solution),
        Command::Generate(args) => generate(&args),
        Command::Bench(args) => bench(&args),
    }
}

/// `path`, or `path.toml` when only the latter exists.
fn resolve(path: &Path) -> PathBuf {
    if !path.exists() {
        let with = path.with_extension("toml");
        if with.exists() {
            return with;
        }
    }
    path.to_path_buf()
}

fn read(path: &Path) -> anyhow::Result<String> {
    let path = resolve(path);
    fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    let instance = parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    for warning in osp_core::instance_warnings(&instance) {
        eprintln!("warning: {warning}");
    }
    Ok(instance)
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn row(
    instance: &str,
    method: &str,
    cost: &CostBreakdown,
    lb: &BoundReport,
    seed: Option<u64>,
    elapsed: Duration,
) -> ResultRow {
    ResultRow {
        instance: instance.to_string(),
        method: method.to_string(),
        objective: cost.objective,
        p: cost.proc_time,
        t: cost.tardy,
        sc: cost.setup_cost,
        lb: lb.objective_lb,
        gap: relative_gap(cost.objective, lb.objective_lb).unwrap_or(f64::NAN),
        seed,
        elapsed: elapsed.as_secs_f64(),
    }
}

fn bound_row(instance: &str, lb: &BoundReport) -> ResultRow {
    ResultRow {
        instance: instance.to_string(),
        method: "bounds".to_string(),
        objective: lb.objective_lb,
        p: lb.proc_lb,
        t: lb.tardy_lb,
        sc: lb.setup_lb,
        lb: lb.objective_lb,
        gap: 0.0,
        seed: None,
        elapsed: lb.wall_time.as_secs_f64(),
    }
}

fn lines_of_gap(cost: &CostBreakdown, lb: &BoundReport) -> String {
    let gap = |v: f64, b: f64| match relative_gap(v, b) {
        Ok(g) => g.to_string(),
        Err(_) => "nan".to_string(),
    };
    format!(
        "lb = {}\ngap = {}\ngap_p = {}\ngap_t = {}\ngap_sc = {}\n",
        lb.objective_lb,
        gap(cost.objective, lb.objective_lb),
        gap(cost.proc_time as f64, lb.proc_lb as f64),
        gap(cost.tardy as f64, lb.tardy_lb as f64),
        gap(cost.setup_cost as f64, lb.setup_lb as f64),
    )
}

/// Prints `summary` and the schedule, or writes the schedule to the
/// requested file.
fn emit(summary: String, solution: &Solution, output: &OutputArgs, rows: &[ResultRow]) -> anyhow::Result<()> {
    let mut out = summary;
    match &output.output {
        Some(path) => write(path, &write_solution(solution))?,
        None => {
            out.push('\n');
            out.push_str(&write_solution(solution));
        }
    }
    if let Some(path) = &output.results.results {
        write(path, &write_results(rows))?;
    }
    print!("{out}");
    Ok(())
}

fn bounds(path: &Path, results: Option<&Path>) -> anyhow::Result<()> {
    let instance = load_instance(path)?;
    let weights = ObjectiveWeights::for_instance(&instance);
    let lb = objective_lb(&instance, &weights)?;
    eprintln!("bounds computed in {:.3} ms", lb.wall_time.as_secs_f64() * 1e3);
    if let Some(results) = results {
        write(results, &write_results(&[bound_row(&instance_name(path), &lb)]))?;
    }
    print!("{}", write_bound_report(&lb));
    Ok(())
}

fn greedy(path: &Path, output: &OutputArgs) -> anyhow::Result<()> {
    let instance = load_instance(path)?;
    let weights = ObjectiveWeights::for_instance(&instance);
    let lb = objective_lb(&instance, &weights)?;
    let started = Instant::now();
    let (solution, cost) = construct(&instance, &weights)?;
    let elapsed = started.elapsed();
    eprintln!("greedy finished in {:.3} ms", elapsed.as_secs_f64() * 1e3);
    let summary = write_cost(&cost) + &lines_of_gap(&cost, &lb);
    let rows = [row(&instance_name(path), "greedy", &cost, &lb, None, elapsed)];
    emit(summary, &solution, output, &rows)
}

fn pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(WORKERS_VAR) {
        let n: usize = value
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("{WORKERS_VAR} must be a positive integer, got {value:?}"))?;
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn anneal_params(seed: u64, time_limit: f64, lb_gap_stop: Option<f64>) -> anyhow::Result<AnnealParams> {
    if !(time_limit >= 0.0 && time_limit.is_finite()) {
        bail!("time limit must be a non-negative number of seconds");
    }
    Ok(AnnealParams {
        rng_seed: seed,
        time_limit: Duration::from_secs_f64(time_limit),
        lb_gap_stop,
        ..AnnealParams::default()
    })
}

fn replicates(
    instance: &Instance,
    weights: &ObjectiveWeights,
    lb: &BoundReport,
    base: &AnnealParams,
    count: u64,
) -> anyhow::Result<Vec<(u64, AnnealOutcome, Duration)>> {
    let seeds: Vec<u64> = (0..count).map(|i| base.rng_seed.wrapping_add(i)).collect();
    let outcomes: Vec<_> = pool()?.install(|| {
        seeds
            .par_iter()
            .map(|&seed| {
                let params = AnnealParams {
                    rng_seed: seed,
                    ..base.clone()
                };
                let started = Instant::now();
                run_annealing(instance, &params, weights, Some(lb)).map(|o| (seed, o, started.elapsed()))
            })
            .collect()
    });
    Ok(outcomes.into_iter().collect::<Result<Vec<_>, _>>()?)
}

fn anneal(args: &AnnealArgs) -> anyhow::Result<()> {
    if args.replicates == 0 {
        bail!("--replicates must be at least 1");
    }
    let instance = load_instance(&args.instance)?;
    let weights = ObjectiveWeights::for_instance(&instance);
    let lb = objective_lb(&instance, &weights)?;
    let mut base = anneal_params(args.seed, args.time_limit, args.lb_gap_stop)?;
    base.trace_period = Duration::from_secs_f64(args.trace_period.max(0.0));
    let runs = replicates(&instance, &weights, &lb, &base, args.replicates)?;

    let (best_seed, best, _) = runs
        .iter()
        .min_by_key(|(seed, o, _)| (o.cost.scaled(&weights), *seed))
        .expect("at least one replicate");
    for (seed, o, elapsed) in &runs {
        eprintln!(
            "seed {seed}: {} after {:.3} s, {} iterations",
            o.stop_reason,
            elapsed.as_secs_f64(),
            o.iterations
        );
    }
    if let Some(path) = &args.trace {
        let traces: Vec<_> = runs.iter().map(|(s, o, _)| (*s, &o.trace)).collect();
        write(path, &write_traces(&traces))?;
    }

    let mut summary = String::new();
    writeln!(summary, "seed = {best_seed}")?;
    writeln!(summary, "stop_reason = \"{}\"", best.stop_reason)?;
    summary.push_str(&write_cost(&best.cost));
    summary.push_str(&lines_of_gap(&best.cost, &lb));
    for (seed, o, _) in &runs {
        writeln!(summary, "\n[[replicate]]")?;
        writeln!(summary, "seed = {seed}")?;
        writeln!(summary, "stop_reason = \"{}\"", o.stop_reason)?;
        summary.push_str(&write_cost(&o.cost));
    }
    let name = instance_name(&args.instance);
    let rows: Vec<_> = runs
        .iter()
        .map(|(seed, o, elapsed)| row(&name, "anneal", &o.cost, &lb, Some(*seed), *elapsed))
        .collect();
    emit(summary, &best.solution, &args.output, &rows)
}

fn oracle(
    path: &Path,
    prune: bool,
    max_jobs: usize,
    node_budget: u64,
    output: &OutputArgs,
) -> anyhow::Result<()> {
    let instance = load_instance(path)?;
    let weights = ObjectiveWeights::for_instance(&instance);
    let lb = objective_lb(&instance, &weights)?;
    let limits = OracleLimits {
        max_jobs,
        node_budget,
        ..OracleLimits::default()
    };
    let started = Instant::now();
    let out = exact_solve(&instance, &weights, &limits, prune)?;
    let elapsed = started.elapsed();
    eprintln!("oracle finished in {:.3} s", elapsed.as_secs_f64());
    let mut summary = write_cost(&out.cost) + &lines_of_gap(&out.cost, &lb);
    writeln!(summary, "nodes = {}", out.nodes)?;
    writeln!(summary, "lb_cuts = {}", out.lb_cuts)?;
    let method = if prune { "oracle" } else { "oracle-noprune" };
    let rows = [row(&instance_name(path), method, &out.cost, &lb, None, elapsed)];
    emit(summary, &out.solution, output, &rows)
}

fn evaluate_file(instance: &Path, solution: &Path) -> anyhow::Result<()> {
    let instance = load_instance(instance)?;
    let mut sol = parse_solution(&read(solution)?).with_context(|| format!("in {}", solution.display()))?;
    if sol.machines.len() < instance.machines.len() {
        sol.machines.resize(instance.machines.len(), Vec::new());
    }
    let violations = check_feasibility(&instance, &sol);
    for v in &violations {
        eprintln!("violation: {v}");
    }
    let weights = ObjectiveWeights::for_instance(&instance);
    let cost = evaluate(&instance, &sol, &weights)?;
    let lb = objective_lb(&instance, &weights)?;
    print!("{}{}", write_cost(&cost), lines_of_gap(&cost, &lb));
    Ok(())
}

fn generate(args: &GenerateArgs) -> anyhow::Result<()> {
    let mut config = match &args.config {
        Some(path) => parse_generator_config(&read(path)?).with_context(|| format!("in {}", path.display()))?,
        None => GeneratorConfig::default(),
    };
    if let Some(n) = args.n {
        config.n_jobs = n;
    }
    if let Some(k) = args.k {
        config.n_machines = k;
    }
    if let Some(a) = args.a {
        config.n_attributes = a;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let instance = generate_instance(&config)?;
    write(&args.output, &write_instance(&instance))
}

fn bench(args: &BenchArgs) -> anyhow::Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)
        .with_context(|| format!("reading {}", args.dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "toml"));
    files.sort();
    let base = anneal_params(args.seed, args.time_limit, args.lb_gap_stop)?;

    let mut rows = Vec::new();
    for path in &files {
        let name = instance_name(path);
        let instance = load_instance(path)?;
        let weights = ObjectiveWeights::for_instance(&instance);
        let lb = objective_lb(&instance, &weights)?;
        rows.push(bound_row(&name, &lb));
        let started = Instant::now();
        let (_, cost) = construct(&instance, &weights)?;
        rows.push(row(&name, "greedy", &cost, &lb, None, started.elapsed()));
        for (seed, o, elapsed) in replicates(&instance, &weights, &lb, &base, args.replicates)? {
            rows.push(row(&name, "anneal", &o.cost, &lb, Some(seed), elapsed));
        }
        eprintln!("{name}: done");
    }
    let table = write_results(&rows);
    match &args.output {
        Some(path) => write(path, &table),
        None => {
            print!("{table}");
            Ok(())
        }
    }
}
