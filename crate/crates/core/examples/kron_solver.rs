//! Solves `(A ⊗ B) x = f` with line-by-line banded solves and times it
//! against the grid size. On small grids it also checks the result against a
//! dense Kronecker product.
//!
//! ```text
//! cargo run --release --example kron_solver -- --sizes 50,100,200,400
//! ```

use std::time::Instant;

use anyhow::Result;
use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wildfire_iga::bspline::BsplineSpace;
use wildfire_iga::kron::{kron_apply, kron_solve, CoefficientGrid};
use wildfire_iga::operators1d::DirectionMatrices;

#[derive(Parser)]
struct Args {
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
}

fn main() -> Result<()> {
    let args = Args::parse();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("elements  dofs      seconds/solve  residual");
    for &n in &args.sizes {
        let space = BsplineSpace::new(args.degree, n, 0.0, 1.0)?;
        let d = DirectionMatrices::assemble(&space);
        // Implicit-step shaped operator: mass plus a little diffusion and transport.
        let a = d.form(1e-3, 1e-2, 0.0)?;
        let lu = a.factor()?;
        let m = space.n_dof();
        let f = CoefficientGrid::from_fn(m, m, |_, _| rng.gen_range(-1.0..1.0));
        let start = Instant::now();
        let mut x = f.clone();
        for _ in 0..args.repeats {
            x = kron_solve(&lu, &lu, &f)?;
        }
        let per = start.elapsed().as_secs_f64() / args.repeats as f64;
        let residual = kron_apply(&a, &a, &x)?.max_abs_diff(&f);
        println!("{n:<9} {:<9} {per:<14.3e} {residual:.2e}", m * m);
    }
    Ok(())
}
