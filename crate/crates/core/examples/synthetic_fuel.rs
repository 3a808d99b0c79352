//! Writes the synthetic placeholder fuel rasters used by the shipped coastal
//! and island scenarios. They are smooth random vegetation fields with a
//! coastline and a few low-fuel patches, not processed satellite images.
//!
//! ```text
//! cargo run --example synthetic_fuel -- --out-dir scenarios/maps
//! ```

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
struct Args {
    #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/maps"))]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 100)]
    size: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

/// Sum of random plane waves on the unit square, rescaled to [0, 1].
struct Texture {
    waves: Vec<(f64, f64, f64, f64)>,
}

impl Texture {
    fn new(rng: &mut ChaCha8Rng, n: usize) -> Self {
        let waves = (0..n)
            .map(|_| {
                let k = rng.gen_range(2.0..9.0) * PI;
                let a = rng.gen_range(0.0..2.0 * PI);
                (k * a.cos(), k * a.sin(), rng.gen_range(0.0..2.0 * PI), 1.0 / k.sqrt())
            })
            .collect();
        Self { waves }
    }

    fn at(&self, u: f64, v: f64) -> f64 {
        let norm: f64 = self.waves.iter().map(|w| w.3).sum();
        let s: f64 = self
            .waves
            .iter()
            .map(|&(kx, ky, ph, amp)| amp * (kx * u + ky * v + ph).sin())
            .sum();
        0.5 + 0.5 * s / norm
    }
}

fn smoothstep(e0: f64, e1: f64, x: f64) -> f64 {
    let t = ((x - e0) / (e1 - e0)).clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// Rows top (north) first, as an image would be.
fn raster(size: usize, f: impl Fn(f64, f64) -> f64) -> String {
    let mut s = String::new();
    for r in 0..size {
        let v = 1.0 - (r as f64 + 0.5) / size as f64;
        let row: Vec<String> = (0..size)
            .map(|c| {
                let u = (c as f64 + 0.5) / size as f64;
                format!("{:.6}", f(u, v).clamp(0.0, 1.0))
            })
            .collect();
        let _ = writeln!(s, "{}", row.join(","));
    }
    s
}

fn main() -> Result<()> {
    let args = Args::parse();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    std::fs::create_dir_all(&args.out_dir)?;

    // Coast along the west edge, a town strip behind it, vegetated hills inland.
    let hills = Texture::new(&mut rng, 24);
    let coast = Texture::new(&mut rng, 6);
    let coastal = raster(args.size, |u, v| {
        let shore = 0.12 + 0.06 * (coast.at(0.0, v) - 0.5);
        let land = smoothstep(shore, shore + 0.01, u);
        let town = 1.0 - 0.75 * (1.0 - smoothstep(shore + 0.05, shore + 0.18, u));
        let vegetation = 0.35 + 0.65 * hills.at(u, v);
        land * town * vegetation
    });
    std::fs::write(args.out_dir.join("vina_del_mar_fuel.csv"), coastal)?;

    // Round island with a dense forest in the north-west and bare ground east.
    let relief = Texture::new(&mut rng, 24);
    let outline = Texture::new(&mut rng, 8);
    let island = raster(args.size, |u, v| {
        let (dx, dy) = (u - 0.5, v - 0.5);
        let r = (dx * dx + dy * dy).sqrt();
        let edge = 0.44 + 0.08 * (outline.at(dx.atan2(dy) / (2.0 * PI), 0.3) - 0.5);
        let land = 1.0 - smoothstep(edge - 0.01, edge, r);
        let forest = 0.3 + 0.7 * smoothstep(0.2, 0.9, 1.0 - u + v - 0.5);
        land * forest * (0.5 + 0.5 * relief.at(u, v))
    });
    std::fs::write(args.out_dir.join("gran_canaria_fuel.csv"), island)?;
    println!("wrote fuel maps to {}", args.out_dir.display());
    Ok(())
}
