//! Command line: `fire [N] [p] [threads] [flags]`.

use std::path::PathBuf;

use clap::Parser;

use crate::error::{Error, Result};
use crate::mms::SweepConfig;
use crate::schemes::SchemeKind;

use super::config::ScenarioConfig;

#[derive(Parser, Debug)]
#[command(name = "fire", about = "Isogeometric wildfire spread simulation")]
struct Args {
    /// Mesh size in each direction.
    n: Option<usize>,
    /// B-spline degree.
    p: Option<usize>,
    /// Worker threads.
    threads: Option<usize>,
    /// explicit, pr or strang.
    #[arg(long)]
    scheme: Option<SchemeKind>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Constant fuel value or a CSV fuel map path.
    #[arg(long)]
    fuel: Option<String>,
    /// Scenario file; command-line values take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Snapshot period in steps; 0 writes only the final step.
    #[arg(long)]
    output_every: Option<usize>,
    /// Strong-scaling table over comma-separated worker counts (default
    /// 1..=threads).
    #[arg(long, num_args = 0..=1, value_delimiter = ',', value_name = "WORKERS")]
    bench: Option<Vec<usize>>,
    /// Manufactured-solution time-step sweep.
    #[arg(long)]
    mms: bool,
    /// Also write raw spline coefficients next to each snapshot.
    #[arg(long)]
    dump_coeffs: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Simulate(ScenarioConfig),
    Bench {
        config: ScenarioConfig,
        workers: Vec<usize>,
    },
    Mms {
        sweep: SweepConfig,
        threads: usize,
        out_dir: PathBuf,
    },
    /// `--help` or `--version` text.
    Info(String),
}

/// Parses `argv` (program name first). Precedence is command line, then the
/// scenario file, then defaults.
pub fn parse_cli<I, S>(argv: I) -> Result<Command>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Command::Info(e.to_string())),
                _ => Err(Error::Usage(e.to_string())),
            };
        }
    };
    let usage = |e: Error| Error::Usage(e.to_string());

    let mut cfg = ScenarioConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
    }
    if let Some(n) = args.n {
        cfg.nx = n;
        cfg.ny = n;
    }
    if let Some(p) = args.p {
        cfg.degree = p;
    }
    if let Some(t) = args.threads {
        cfg.threads = t;
    }
    if let Some(s) = args.scheme {
        cfg.scheme = s;
    }
    if let Some(dt) = args.dt {
        cfg.dt = dt;
    }
    if let Some(s) = args.steps {
        cfg.steps = s;
    }
    if let Some(f) = &args.fuel {
        let value = if f.parse::<f64>().is_ok() {
            f.clone()
        } else {
            format!("csv {f}")
        };
        cfg.set("fuel", &value).map_err(usage)?;
    }
    if let Some(d) = args.out_dir {
        cfg.out_dir = d;
    }
    if let Some(k) = args.output_every {
        cfg.output_every = k;
    }
    if args.dump_coeffs {
        cfg.dump_coeffs = true;
    }
    cfg.validate().map_err(usage)?;

    if args.mms {
        let mut sweep = SweepConfig {
            p: cfg.degree,
            ..Default::default()
        };
        if args.n.is_some() || args.config.is_some() {
            sweep.meshes = vec![cfg.nx];
        }
        if let Some(s) = args.scheme {
            sweep.schemes = vec![s];
        }
        return Ok(Command::Mms {
            sweep,
            threads: cfg.threads,
            out_dir: cfg.out_dir,
        });
    }
    if let Some(mut workers) = args.bench {
        if workers.is_empty() {
            workers = (1..=cfg.threads).collect();
        }
        if workers.contains(&0) {
            return Err(Error::Usage("worker counts must be positive".into()));
        }
        return Ok(Command::Bench { config: cfg, workers });
    }
    Ok(Command::Simulate(cfg))
}
