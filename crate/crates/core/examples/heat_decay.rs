//! Linear diffusion of a single cosine mode with each time integrator,
//! compared against the exact exponential decay.
//!
//! ```text
//! cargo run --release --example heat_decay -- --mesh 40 --dt 2e-4 --steps 5000
//! ```

use std::sync::Arc;

use anyhow::Result;
use clap::Parser;
use wildfire_iga::assembly::{Discretization, SourceModel};
use wildfire_iga::physics::{DerivedCoeffs, WindField};
use wildfire_iga::schemes::{Integrator, SchemeKind, State};

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 40)]
    mesh: usize,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 2e-4)]
    dt: f64,
    #[arg(long, default_value_t = 5000)]
    steps: usize,
    #[arg(long, default_value_t = 0.05)]
    diffusion: f64,
}

fn main() -> Result<()> {
    let args = Args::parse();
    let disc = Arc::new(Discretization::square(args.degree, args.mesh, 0.0, 1.0)?);
    let k = std::f64::consts::PI;
    let mode = move |x: f64, y: f64| (k * x).cos() * (k * y).cos();
    let coeffs = DerivedCoeffs {
        diffusion: args.diffusion,
        ..DerivedCoeffs::zero()
    };
    let t_end = args.dt * args.steps as f64;
    let exact = (-2.0 * k * k * args.diffusion * t_end).exp();
    println!("exact amplitude at t = {t_end}: {exact:.8}");
    for scheme in SchemeKind::ALL {
        let mut integ = Integrator::new(disc.clone(), SourceModel::linear(coeffs), WindField::calm(), scheme);
        integ.evolve_fuel = false;
        integ.divergence_limit = 1e6;
        let mut state = State::new(disc.project(mode)?, disc.constant(0.0))?;
        let mut diverged = false;
        for _ in 0..args.steps {
            if integ.step(&mut state, args.dt)?.diverged {
                diverged = true;
                break;
            }
        }
        if diverged {
            println!("{scheme:<9} unstable at step {}", state.step);
            continue;
        }
        let amp = disc.eval(&state.temperature, 0.0, 0.0)?.value;
        println!("{scheme:<9} amplitude {amp:.8}  error {:.2e}", (amp - exact).abs());
    }
    Ok(())
}
