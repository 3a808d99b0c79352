//! Writes a sampled snapshot of a spline field, reads it back and fits it
//! onto the spline space again.
//!
//! ```text
//! cargo run --example snapshot_io -- --mesh 20 --samples 40
//! ```

use anyhow::Result;
use clap::Parser;
use wildfire_iga::assembly::Discretization;
use wildfire_iga::sim_io::snapshot::{field_from_triples, read_data, reproject, sample_field, write_data, write_pgm};

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 20)]
    mesh: usize,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Must be at least mesh + degree - 1 for the fit to be determined.
    #[arg(long, default_value_t = 40)]
    samples: usize,
    #[arg(long, default_value = "snapshot_out")]
    out_dir: std::path::PathBuf,
}

fn main() -> Result<()> {
    let args = Args::parse();
    let disc = Discretization::square(args.degree, args.mesh, 0.0, 100.0)?;
    let field = disc.project(|x, y| 300.0 + 900.0 * (-((x - 50.0).powi(2) + (y - 40.0).powi(2)) / 200.0).exp())?;
    std::fs::create_dir_all(&args.out_dir)?;
    let path = args.out_dir.join("out_0.data");
    let sampled = sample_field(&disc, &field, args.samples)?;
    write_data(&path, &sampled)?;
    write_pgm(&args.out_dir.join("out_0.pgm"), &sampled)?;
    let triples = read_data(&path)?;
    println!("{} lines in {}", triples.len(), path.display());
    let back = reproject(&disc, &field_from_triples(&triples)?)?;
    println!(
        "max coefficient difference after round trip: {:.2e}",
        back.max_abs_diff(&field)
    );
    Ok(())
}
