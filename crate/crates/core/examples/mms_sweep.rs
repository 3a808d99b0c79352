//! Manufactured-solution time-step sweep.
//!
//! ```text
//! cargo run --release --example mms_sweep -- --meshes 50,100 --out-dir mms_out
//! ```

use std::path::PathBuf;

use anyhow::Result;
use clap::Parser;
use wildfire_iga::mms::{self, SweepConfig, Variant};
use wildfire_iga::schemes::SchemeKind;

#[derive(Parser)]
struct Args {
    #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
    meshes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "explicit,pr,strang")]
    schemes: Vec<SchemeKind>,
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Number of halvings of the time step, starting from 1.
    #[arg(long, default_value_t = 8)]
    levels: u32,
    #[arg(long, default_value = "nonlinear")]
    variant: Variant,
    /// Run the explicit scheme on the linear problem.
    #[arg(long)]
    explicit_linear: bool,
    /// Arrhenius prefactor override.
    #[arg(long)]
    a_r: Option<f64>,
    /// Model parameter override, e.g. `--set sigma=1e-9`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long, num_args = 2, value_names = ["BX", "BY"])]
    wind: Option<Vec<f64>>,
    #[arg(long)]
    index_free: bool,
    #[arg(long, default_value = "mms_out")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    if args.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build_global()?;
    }
    let mut cfg = SweepConfig {
        schemes: args.schemes,
        meshes: args.meshes,
        p: args.p,
        dts: (0..args.levels).map(|k| 1.0 / f64::from(1u32 << k)).collect(),
        explicit_linear: args.explicit_linear,
        ..Default::default()
    };
    cfg.problem.variant = args.variant;
    cfg.problem.solution.index_free = args.index_free;
    if let Some(a) = args.a_r {
        cfg.problem.params.a_r = a;
    }
    for o in &args.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("expected KEY=VALUE, got {o:?}"))?;
        cfg.problem.params.set(k.trim(), v.trim().parse()?)?;
    }
    if let Some(w) = args.wind {
        cfg.problem.wind = [w[0], w[1]];
    }

    let records = mms::run_sweep(&cfg)?;
    for r in &records {
        println!("{r}");
    }
    for &mesh in &cfg.meshes {
        for &scheme in &cfg.schemes {
            match mms::observed_order(&records, scheme, mesh, 4) {
                Some(s) => println!("order {scheme} {mesh}x{mesh}: {s:.3}"),
                None => println!("order {scheme} {mesh}x{mesh}: fewer than four stable steps"),
            }
        }
    }
    std::fs::create_dir_all(&args.out_dir)?;
    let csv = args.out_dir.join("mms_errors.csv");
    let plot = args.out_dir.join("mms_errors.dat");
    mms::write_outputs(&records, &csv, &plot)?;
    println!("wrote {} and {}", csv.display(), plot.display());
    Ok(())
}
