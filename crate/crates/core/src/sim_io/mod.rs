//! Scenario files, command line, field output, and benchmarking.

pub mod bench;
pub mod cli;
pub mod config;
pub mod diagnostics;
pub mod simulation;
pub mod snapshot;

pub use bench::{run_bench, BenchRow};
pub use cli::{parse_cli, Command};
pub use config::{FuelSource, Ignition, ScenarioConfig};
pub use simulation::{init_state, RunReport, Simulation};
pub use snapshot::{FieldSnapshot, SampledField};
