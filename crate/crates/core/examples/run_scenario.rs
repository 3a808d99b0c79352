//! Runs a scenario file and reports burned fraction of the vegetated area and peak temperature at each
//! output step.
//!
//! ```text
//! cargo run --release --example run_scenario -- scenarios/gran_canaria.cfg
//! ```

use std::path::PathBuf;

use anyhow::Result;
use clap::Parser;
use wildfire_iga::sim_io::{ScenarioConfig, Simulation};

#[derive(Parser)]
struct Args {
    config: PathBuf,
    /// Skip writing snapshot files.
    #[arg(long)]
    dry_run: bool,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let mut cfg = ScenarioConfig::load(&args.config)?;
    if let Some(d) = args.out_dir {
        cfg.out_dir = d;
    }
    let every = cfg.output_every.max(1);
    let steps = cfg.steps;
    let mut sim = Simulation::new(cfg)?;
    let initial = sim.snapshot()?.fuel;
    let vegetated = initial.values.iter().filter(|&&f| f > 0.0).count().max(1);
    println!("step  time        burned%  T_max");
    for k in 1..=steps {
        if sim.step()?.diverged {
            anyhow::bail!("diverged at step {k}");
        }
        if k % every == 0 || k == steps {
            let snap = sim.snapshot()?;
            // A cell counts as burned once it has lost half of its initial fuel.
            let burned = snap
                .fuel
                .values
                .iter()
                .zip(&initial.values)
                .filter(|&(&f, &f0)| f0 > 0.0 && f < 0.5 * f0)
                .count();
            let pct = 100.0 * burned as f64 / vegetated as f64;
            println!(
                "{k:<5} {:<11.4e} {pct:<8.2} {:.1}",
                snap.time,
                snap.temperature.min_max().1
            );
            if !args.dry_run {
                sim.write_output()?;
            }
        }
    }
    Ok(())
}
