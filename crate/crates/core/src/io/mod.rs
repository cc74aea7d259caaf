//! Text formats: instances and solutions as TOML documents, generator
//! configurations, and comma-separated result tables.

mod format;
mod generator;
mod results;

pub use format::{
    parse_instance, parse_solution, write_instance, write_solution, FORMAT_VERSION,
    INSTANCE_FORMAT, SOLUTION_FORMAT,
};
pub use generator::{
    generate_instance, parse_generator_config, write_generator_config, GeneratorConfig, Range,
};
pub use results::{
    read_results, write_bound_report, write_cost, write_results, write_traces, ResultRow,
    RESULTS_HEADER,
};
