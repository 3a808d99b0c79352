//! Scenario driver: initial state, time loop, and periodic output.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use crate::assembly::{AvailabilityTable, Discretization, SourceModel};
use crate::bspline::BsplineSpace;
use crate::error::{Error, Result};
use crate::fuelmap::FuelMap;
use crate::kron::CoefficientGrid;
use crate::schemes::{Integrator, State, StepOutcome};

use super::config::{FuelSource, Ignition, ScenarioConfig};
use super::snapshot::{write_coeffs, FieldSnapshot};

/// Smooth step: 1 inside `r`, 0 beyond `R`, `((h − 1)(h + 1))²` between.
pub fn falloff(r: f64, big_r: f64, t: f64) -> f64 {
    if t < r {
        return 1.0;
    }
    if t > big_r {
        return 0.0;
    }
    let h = (t - r) / (big_r - r);
    ((h - 1.0) * (h + 1.0)).powi(2)
}

/// Initial hot-spot shape. Distances are divided by 100 and radii by 200.
pub fn bump(ig: &Ignition, x: f64, y: f64) -> f64 {
    let dx = x - ig.center[0];
    let dy = y - ig.center[1];
    let t = (dx * dx + dy * dy).sqrt() / 100.0;
    falloff(ig.r_inner / 200.0, ig.r_outer / 200.0, t)
}

pub fn initial_temperature(ig: &Ignition, x: f64, y: f64) -> f64 {
    ig.t0 + ig.t_comb * bump(ig, x, y)
}

pub fn build_discretization(cfg: &ScenarioConfig) -> Result<Discretization> {
    let [xa, xb, ya, yb] = cfg.domain;
    Discretization::new(
        BsplineSpace::new(cfg.degree, cfg.nx, xa, xb)?,
        BsplineSpace::new(cfg.degree, cfg.ny, ya, yb)?,
    )
}

pub fn load_fuel_map(cfg: &ScenarioConfig) -> Result<Option<FuelMap>> {
    match &cfg.fuel {
        FuelSource::Constant(_) => Ok(None),
        FuelSource::Csv { path, scale, strict } => {
            Ok(Some(FuelMap::load_csv(path)?.with_scale(*scale).with_strict(*strict)))
        }
    }
}

fn clamp_unit(mut g: CoefficientGrid) -> CoefficientGrid {
    for v in g.values_mut() {
        *v = v.clamp(0.0, 1.0);
    }
    g
}

/// Projected initial temperature and fuel coefficients.
pub fn init_state(
    cfg: &ScenarioConfig,
    disc: &Discretization,
    map: Option<&FuelMap>,
) -> Result<(CoefficientGrid, CoefficientGrid)> {
    let ig = cfg.ignition;
    let temperature = disc.project(|x, y| initial_temperature(&ig, x, y))?;
    let fuel = match (&cfg.fuel, map) {
        (FuelSource::Constant(c), _) => disc.constant(*c),
        (FuelSource::Csv { .. }, Some(map)) => {
            // Sampling errors cannot cross the closure; check at the nodes first.
            for [x, y] in disc.quad_positions() {
                map.sample(x, y, cfg.domain)?;
            }
            let domain = cfg.domain;
            clamp_unit(disc.project(|x, y| map.sample(x, y, domain).unwrap_or(0.0))?)
        }
        (FuelSource::Csv { path, .. }, None) => {
            return Err(Error::config(format!("fuel map {} not loaded", path.display())))
        }
    };
    Ok((temperature, fuel))
}

/// What a run did.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub steps: usize,
    pub time: f64,
    /// First step whose temperature diverged; the run stops there.
    pub diverged_at: Option<usize>,
    pub files: Vec<PathBuf>,
    /// Wall time of each step, seconds.
    pub step_seconds: Vec<f64>,
}

impl RunReport {
    pub fn total_seconds(&self) -> f64 {
        self.step_seconds.iter().sum()
    }
}

pub struct Simulation {
    pub config: ScenarioConfig,
    disc: Arc<Discretization>,
    integrator: Integrator,
    state: State,
}

impl Simulation {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let disc = Arc::new(build_discretization(&config)?);
        let map = load_fuel_map(&config)?;
        let (temperature, fuel) = init_state(&config, &disc, map.as_ref())?;
        let mut source = SourceModel::physical(config.params);
        if config.fuel_availability {
            let table = match &map {
                Some(m) => AvailabilityTable::from_map(&disc, m)?,
                None => match config.fuel {
                    FuelSource::Constant(c) => AvailabilityTable::uniform(&disc, c),
                    FuelSource::Csv { .. } => unreachable!("map loaded above"),
                },
            };
            source.availability = Some(Arc::new(table));
        }
        let integrator =
            Integrator::new(disc.clone(), source, config.wind_field(), config.scheme).with_threads(config.threads)?;
        Ok(Self {
            config,
            disc,
            integrator,
            state: State::new(temperature, fuel)?,
        })
    }

    pub fn discretization(&self) -> &Arc<Discretization> {
        &self.disc
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn integrator_mut(&mut self) -> &mut Integrator {
        &mut self.integrator
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        self.integrator.step(&mut self.state, self.config.dt)
    }

    pub fn n_samples(&self) -> usize {
        self.config.samples.unwrap_or(self.config.nx.max(self.config.ny))
    }

    pub fn snapshot(&self) -> Result<FieldSnapshot> {
        FieldSnapshot::capture(
            &self.disc,
            &self.state.temperature,
            &self.state.fuel,
            self.state.step,
            self.state.time,
            self.n_samples(),
        )
    }

    /// Writes the sampled fields (and raw coefficients if configured).
    pub fn write_output(&self) -> Result<Vec<PathBuf>> {
        let dir = &self.config.out_dir;
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut files = self.snapshot()?.write(dir, self.config.pgm)?;
        if self.config.dump_coeffs {
            let step = self.state.step;
            for (stem, grid) in [("out", &self.state.temperature), ("fuel", &self.state.fuel)] {
                let path = dir.join(format!("{stem}_{step}.coeffs"));
                write_coeffs(&path, grid)?;
                files.push(path);
            }
        }
        Ok(files)
    }

    /// Runs the configured number of steps. With `write`, snapshots go out
    /// every `output_every` steps and at the last step.
    pub fn run(&mut self, write: bool) -> Result<RunReport> {
        let mut report = RunReport::default();
        let steps = self.config.steps;
        let every = self.config.output_every;
        for _ in 0..steps {
            let start = Instant::now();
            let outcome = self.step()?;
            report.step_seconds.push(start.elapsed().as_secs_f64());
            let k = self.state.step;
            if outcome.diverged {
                log::error!("temperature diverged at step {k}, t = {:.6e}", self.state.time);
                report.diverged_at = Some(k);
                break;
            }
            if write && ((every > 0 && k.is_multiple_of(every)) || k == steps) {
                log::info!("step {k}");
                report.files.extend(self.write_output()?);
            }
        }
        report.steps = self.state.step;
        report.time = self.state.time;
        Ok(report)
    }
}
