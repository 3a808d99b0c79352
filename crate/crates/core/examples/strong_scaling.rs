//! Strong-scaling table: wall time of a fixed number of steps for several
//! worker counts, meshes and degrees.
//!
//! ```text
//! cargo run --release --example strong_scaling -- --workers 1,2,4,8 --meshes 100 --degrees 1,2,3
//! ```

use std::path::PathBuf;

use anyhow::Result;
use clap::Parser;
use wildfire_iga::schemes::SchemeKind;
use wildfire_iga::sim_io::bench;
use wildfire_iga::sim_io::ScenarioConfig;

#[derive(Parser)]
struct Args {
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    workers: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "100")]
    meshes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    degrees: Vec<usize>,
    #[arg(long, default_value_t = 120)]
    steps: usize,
    #[arg(long, default_value = "pr")]
    scheme: SchemeKind,
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    println!(
        "available parallelism: {}",
        std::thread::available_parallelism().map_or(1, |n| n.get())
    );
    let mut rows = Vec::new();
    for &mesh in &args.meshes {
        for &p in &args.degrees {
            let cfg = ScenarioConfig {
                nx: mesh,
                ny: mesh,
                degree: p,
                steps: args.steps,
                scheme: args.scheme,
                ..Default::default()
            };
            let block = bench::run_bench(&cfg, &args.workers)?;
            for r in &block {
                println!("{r}");
            }
            rows.extend(block);
        }
    }
    bench::write_csv(&args.out, &rows)?;
    println!("wrote {}", args.out.display());
    Ok(())
}
