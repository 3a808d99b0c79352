//! Loads a fuel raster and shows which pixel each physical point maps to.
//!
//! ```text
//! cargo run --example fuel_map -- scenarios/maps/gran_canaria_fuel.csv 10,90 50,50 99.9,0.1
//! ```

use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::Parser;
use wildfire_iga::fuelmap::FuelMap;

#[derive(Parser)]
struct Args {
    csv: PathBuf,
    /// Points as `x,y`.
    points: Vec<String>,
    #[arg(long, num_args = 4, default_values_t = [0.0, 100.0, 0.0, 100.0])]
    domain: Vec<f64>,
    /// Reject points on the far edges instead of clamping.
    #[arg(long)]
    strict: bool,
}

fn main() -> Result<()> {
    let args = Args::parse();
    let map = FuelMap::load_csv(&args.csv)?.with_strict(args.strict);
    let domain = [args.domain[0], args.domain[1], args.domain[2], args.domain[3]];
    println!(
        "{} rows x {} cols, {} cells clamped into [0, 1], scale {}",
        map.rows(),
        map.cols(),
        map.clamped_cells(),
        map.availability_scale
    );
    for p in &args.points {
        let (x, y) = p.split_once(',').ok_or_else(|| anyhow!("expected x,y, got {p:?}"))?;
        let (x, y): (f64, f64) = (x.trim().parse()?, y.trim().parse()?);
        match map.pixel(x, y, domain) {
            Ok((col, row)) => println!(
                "({x}, {y}) -> row {row}, col {col}: raw {:.6}, sampled {:.6}",
                map.cell(row, col),
                map.sample(x, y, domain)?
            ),
            Err(e) => println!("({x}, {y}) -> {e}"),
        }
    }
    Ok(())
}
