//! Prints the banded 1D mass, stiffness and advection matrices of a small
//! spline space, and the combined operator `(1 + ρ)M + γK + δGᵀ`.
//!
//! ```text
//! cargo run --example operators_1d -- --degree 1 --elements 1
//! ```

use anyhow::Result;
use clap::Parser;
use wildfire_iga::bspline::BsplineSpace;
use wildfire_iga::operators1d::{BandedMatrix, DirectionMatrices};

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 4)]
    elements: usize,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
}

fn print(name: &str, m: &BandedMatrix) {
    println!("{name} (half bandwidth {}):", m.half_bandwidth());
    let n = m.n();
    let dense = m.to_dense();
    for i in 0..n {
        let row: Vec<String> = dense[i * n..(i + 1) * n].iter().map(|v| format!("{v:9.5}")).collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> Result<()> {
    let args = Args::parse();
    let space = BsplineSpace::new(args.degree, args.elements, 0.0, 1.0)?;
    let d = DirectionMatrices::assemble(&space);
    print("M", &d.mass);
    print("K", &d.stiffness);
    print("G", &d.advection);
    print(
        "(1+rho)M + gamma K + delta G^T",
        &d.form(args.gamma, args.delta, args.rho)?,
    );
    println!("row sums of M: {:?}", d.mass.row_sums());
    Ok(())
}
