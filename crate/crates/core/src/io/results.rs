use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::anneal::AnnealTrace;
use crate::bounds::BoundReport;
use crate::model::{CostBreakdown, JobId};

/// Column order of the results table.
pub const RESULTS_HEADER: [&str; 10] = [
    "instance", "method", "objective", "p", "t", "sc", "lb", "gap", "seed", "elapsed",
];

/// One line of the results table. `gap` is in percent, `elapsed` in
/// seconds; `seed` is empty for deterministic methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance: String,
    pub method: String,
    pub objective: f64,
    pub p: u64,
    pub t: u64,
    pub sc: u64,
    pub lb: f64,
    pub gap: f64,
    pub seed: Option<u64>,
    pub elapsed: f64,
}

/// Comma-separated table with a header line, floats in shortest
/// round-trip form.
pub fn write_results(rows: &[ResultRow]) -> String {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    out.write_record(RESULTS_HEADER).expect("in-memory write");
    for row in rows {
        out.serialize(row).expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn read_results(text: &str) -> csv::Result<Vec<ResultRow>> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

/// `key = value` lines for a bound report, without the wall time.
pub fn write_bound_report(report: &BoundReport) -> String {
    let list = |jobs: &[JobId]| {
        let numbers: Vec<String> = jobs.iter().map(|j| j.number().to_string()).collect();
        format!("[{}]", numbers.join(", "))
    };
    let mut s = String::new();
    writeln!(s, "batches_lb = {}", report.batches_lb).unwrap();
    writeln!(s, "proc_lb = {}", report.proc_lb).unwrap();
    writeln!(s, "setup_lb = {}", report.setup_lb).unwrap();
    writeln!(s, "setup_lb_before = {}", report.setup_lb_before).unwrap();
    writeln!(s, "setup_lb_after = {}", report.setup_lb_after).unwrap();
    writeln!(s, "tardy_lb = {}", report.tardy_lb).unwrap();
    writeln!(s, "tardy_jobs = {}", list(&report.tardy_jobs)).unwrap();
    writeln!(s, "objective_lb = {}", report.objective_lb).unwrap();
    for d in &report.per_attribute {
        writeln!(s).unwrap();
        writeln!(s, "[[attribute]]").unwrap();
        writeln!(s, "attribute = {}", d.attribute.number()).unwrap();
        writeln!(s, "large_jobs = {}", list(&d.large_jobs)).unwrap();
        writeln!(s, "small_jobs = {}", list(&d.small_jobs)).unwrap();
        writeln!(s, "b_capacity = {}", d.b_capacity).unwrap();
        writeln!(s, "b_large_small = {}", d.b_large_small).unwrap();
        writeln!(s, "b_elig_small = {}", d.b_elig_small).unwrap();
        writeln!(s, "b_gac_small = {}", d.b_gac_small).unwrap();
        writeln!(s, "p_large = {}", d.p_large).unwrap();
        writeln!(s, "p_elig_small = {}", d.p_elig_small).unwrap();
        writeln!(s, "p_gac_small = {}", d.p_gac_small).unwrap();
        writeln!(s, "b_best = {}", d.b_best).unwrap();
        writeln!(s, "p_best = {}", d.p_best).unwrap();
    }
    s
}

/// `key = value` lines for a cost breakdown.
pub fn write_cost(cost: &CostBreakdown) -> String {
    format!(
        "objective = {}\np = {}\nt = {}\nsc = {}\n",
        cost.objective, cost.proc_time, cost.tardy, cost.setup_cost
    )
}

/// Trace samples of several seeded runs as one table.
pub fn write_traces(traces: &[(u64, &AnnealTrace)]) -> String {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    out.write_record(["seed", "elapsed", "objective", "p", "t", "sc"])
        .expect("in-memory write");
    for (seed, trace) in traces {
        for s in &trace.samples {
            out.serialize((
                seed,
                s.elapsed.as_secs_f64(),
                s.objective,
                s.proc_time,
                s.tardy,
                s.setup_cost,
            ))
            .expect("in-memory write");
        }
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
