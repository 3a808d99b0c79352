//! Evaluates an open uniform B-spline basis on a sample grid and checks the
//! partition of unity.
//!
//! ```text
//! cargo run --example bspline_basis -- --degree 3 --elements 4
//! ```

use anyhow::Result;
use clap::Parser;
use wildfire_iga::bspline::BsplineSpace;

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 3)]
    elements: usize,
    #[arg(long, default_value_t = 12)]
    samples: usize,
}

fn main() -> Result<()> {
    let args = Args::parse();
    let space = BsplineSpace::new(args.degree, args.elements, 0.0, 1.0)?;
    println!("knots {:?}", space.knots());
    println!("{} basis functions", space.n_dof());
    let mut worst = 0.0f64;
    for k in 0..=args.samples {
        let x = k as f64 / args.samples as f64;
        let (first, values, derivs) = space.eval_nonzero(x)?;
        let sum: f64 = values.iter().sum();
        let dsum: f64 = derivs.iter().sum();
        worst = worst.max((sum - 1.0).abs()).max(dsum.abs());
        let row: Vec<String> = values.iter().map(|v| format!("{v:.4}")).collect();
        println!(
            "x = {x:.4}  B[{first}..{}] = [{}]",
            first + values.len(),
            row.join(", ")
        );
    }
    println!("max |sum B - 1|, |sum B'| = {worst:.2e}");
    Ok(())
}
