use std::process::ExitCode;

use anyhow::{Context, Result};
use wildfire_iga::mms;
use wildfire_iga::sim_io::{bench, parse_cli, Command, Simulation};
use wildfire_iga::Error;

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Info(text) => print!("{text}"),
        Command::Simulate(cfg) => {
            log::info!(
                "{}x{} mesh, p = {}, {} scheme, dt = {:e}, {} steps, {} threads",
                cfg.nx,
                cfg.ny,
                cfg.degree,
                cfg.scheme,
                cfg.dt,
                cfg.steps,
                cfg.threads
            );
            let mut sim = Simulation::new(cfg)?;
            let report = sim.run(true)?;
            println!(
                "{} steps, t = {:.6e}, {:.3} s, {} files in {}",
                report.steps,
                report.time,
                report.total_seconds(),
                report.files.len(),
                sim.config.out_dir.display()
            );
            if let Some(k) = report.diverged_at {
                anyhow::bail!("solution diverged at step {k}");
            }
        }
        Command::Bench { config, workers } => {
            let rows = bench::run_bench(&config, &workers)?;
            print!("{}", bench::format_csv(&rows));
            std::fs::create_dir_all(&config.out_dir).with_context(|| config.out_dir.display().to_string())?;
            let path = config.out_dir.join("bench.csv");
            bench::write_csv(&path, &rows)?;
            eprintln!("wrote {}", path.display());
        }
        Command::Mms {
            sweep,
            threads,
            out_dir,
        } => {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
            let records = mms::run_sweep(&sweep)?;
            for r in &records {
                println!("{r}");
            }
            std::fs::create_dir_all(&out_dir).with_context(|| out_dir.display().to_string())?;
            let (csv, plot) = (out_dir.join("mms_errors.csv"), out_dir.join("mms_errors.dat"));
            mms::write_outputs(&records, &csv, &plot)?;
            eprintln!("wrote {} and {}", csv.display(), plot.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let outcome = parse_cli(std::env::args_os())
        .map_err(anyhow::Error::from)
        .and_then(run);
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(Error::Usage(msg)) => eprintln!("{msg}"),
                _ => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
