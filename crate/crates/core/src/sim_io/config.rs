//! Flat `key = value` scenario files.
//!
//! ```text
//! # comment
//! mesh = 100
//! degree = 2
//! scheme = pr
//! dt = 1e-5
//! wind.0 = 0 0.5 1.0 0.5
//! fuel = csv maps/vina.csv
//! param.a_r = 1
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::physics::{ModelParams, WindField, WindSegment};
use crate::schemes::SchemeKind;

/// Smooth initial hot spot `T0 + Tcomb · bump`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ignition {
    pub center: [f64; 2],
    pub r_inner: f64,
    pub r_outer: f64,
    pub t0: f64,
    pub t_comb: f64,
}

impl Default for Ignition {
    fn default() -> Self {
        Self {
            center: [50.0, 50.0],
            r_inner: 10.0,
            r_outer: 30.0,
            t0: 300.0,
            t_comb: 1200.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FuelSource {
    Constant(f64),
    Csv { path: PathBuf, scale: f64, strict: bool },
}

impl Default for FuelSource {
    fn default() -> Self {
        FuelSource::Constant(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub nx: usize,
    pub ny: usize,
    pub degree: usize,
    /// `[x_a, x_b, y_a, y_b]`.
    pub domain: [f64; 4],
    pub scheme: SchemeKind,
    pub dt: f64,
    pub steps: usize,
    /// Snapshot period in steps; 0 writes only the final state.
    pub output_every: usize,
    pub threads: usize,
    pub params: ModelParams,
    /// Empty means calm.
    pub wind: Vec<WindSegment>,
    pub ignition: Ignition,
    pub fuel: FuelSource,
    /// Also use the fuel map as a static combustion availability factor.
    pub fuel_availability: bool,
    pub out_dir: PathBuf,
    /// Samples per direction in snapshots minus one; defaults to the mesh size.
    pub samples: Option<usize>,
    pub pgm: bool,
    pub dump_coeffs: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            nx: 100,
            ny: 100,
            degree: 2,
            domain: [0.0, 100.0, 0.0, 100.0],
            scheme: SchemeKind::PeacemanRachford,
            dt: 1e-6,
            steps: 120,
            output_every: 0,
            threads: 1,
            params: ModelParams::default(),
            wind: Vec::new(),
            ignition: Ignition::default(),
            fuel: FuelSource::default(),
            fuel_availability: false,
            out_dir: PathBuf::from("out"),
            samples: None,
            pgm: false,
            dump_coeffs: false,
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse()
        .map_err(|_| Error::config(format!("{key}: expected a number, got {v:?}")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| Error::config(format!("{key}: expected a non-negative integer, got {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::config(format!("{key}: expected true or false, got {other:?}"))),
    }
}

fn parse_floats<const N: usize>(key: &str, v: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = v.split_whitespace().collect();
    if parts.len() != N {
        return Err(Error::config(format!("{key}: expected {N} numbers, got {v:?}")));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = parse_f64(key, p)?;
    }
    Ok(out)
}

impl ScenarioConfig {
    pub fn wind_field(&self) -> WindField {
        if self.wind.is_empty() {
            WindField::calm()
        } else {
            WindField::Schedule(self.wind.clone())
        }
    }

    pub fn horizon(&self) -> f64 {
        self.dt * self.steps as f64
    }

    /// Applies one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "mesh" => {
                let n = parse_usize(key, v)?;
                self.nx = n;
                self.ny = n;
            }
            "mesh.x" => self.nx = parse_usize(key, v)?,
            "mesh.y" => self.ny = parse_usize(key, v)?,
            "degree" => self.degree = parse_usize(key, v)?,
            "domain" => self.domain = parse_floats::<4>(key, v)?,
            "scheme" => self.scheme = v.parse()?,
            "dt" => self.dt = parse_f64(key, v)?,
            "steps" => self.steps = parse_usize(key, v)?,
            "output_every" => self.output_every = parse_usize(key, v)?,
            "threads" => self.threads = parse_usize(key, v)?,
            "ignition.center" => self.ignition.center = parse_floats::<2>(key, v)?,
            "ignition.r" => self.ignition.r_inner = parse_f64(key, v)?,
            "ignition.R" => self.ignition.r_outer = parse_f64(key, v)?,
            "ignition.t0" => self.ignition.t0 = parse_f64(key, v)?,
            "ignition.tcomb" => self.ignition.t_comb = parse_f64(key, v)?,
            "fuel" => self.fuel = parse_fuel(v, &self.fuel)?,
            "fuel.scale" | "fuel.strict" => match &mut self.fuel {
                FuelSource::Csv { scale, strict, .. } => {
                    if key == "fuel.scale" {
                        *scale = parse_f64(key, v)?;
                    } else {
                        *strict = parse_bool(key, v)?;
                    }
                }
                FuelSource::Constant(_) => {
                    return Err(Error::config(format!("{key} requires `fuel = csv <path>` first")))
                }
            },
            "fuel.availability" => self.fuel_availability = parse_bool(key, v)?,
            "out_dir" => self.out_dir = PathBuf::from(v),
            "samples" => self.samples = Some(parse_usize(key, v)?),
            "pgm" => self.pgm = parse_bool(key, v)?,
            "dump_coeffs" => self.dump_coeffs = parse_bool(key, v)?,
            _ => {
                if let Some(name) = key.strip_prefix("param.") {
                    self.params.set(name, parse_f64(key, v)?)?;
                } else if let Some(idx) = key.strip_prefix("wind.") {
                    let idx = parse_usize(key, idx)?;
                    let [start, end, bx, by] = parse_floats::<4>(key, v)?;
                    let seg = WindSegment {
                        start,
                        end,
                        velocity: [bx, by],
                    };
                    if idx < self.wind.len() {
                        self.wind[idx] = seg;
                    } else if idx == self.wind.len() {
                        self.wind.push(seg);
                    } else {
                        return Err(Error::config(format!(
                            "{key}: wind segments must be numbered consecutively from 0"
                        )));
                    }
                } else {
                    return Err(Error::config(format!("unknown key {key:?}")));
                }
            }
        }
        Ok(())
    }

    /// Parses a scenario file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text, "<config>")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Format {
                path: origin.to_string(),
                row: n + 1,
                column: 1,
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            self.set(k.trim(), v).map_err(|e| Error::Format {
                path: origin.to_string(),
                row: n + 1,
                column: 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// Loads a file over the current values; relative fuel paths resolve
    /// against the file's directory.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.apply_text(&text, &path.display().to_string())?;
        if let FuelSource::Csv { path: csv, .. } = &mut self.fuel {
            if csv.is_relative() {
                if let Some(dir) = path.parent() {
                    *csv = dir.join(&*csv);
                }
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_file(path)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::config("degree must be >= 1"));
        }
        if self.degree > crate::bspline::MAX_DEGREE {
            return Err(Error::config(format!(
                "degree must be <= {}",
                crate::bspline::MAX_DEGREE
            )));
        }
        if self.nx < 1 || self.ny < 1 {
            return Err(Error::config("mesh size must be >= 1"));
        }
        let [xa, xb, ya, yb] = self.domain;
        if !(xa < xb && ya < yb) || self.domain.iter().any(|v| !v.is_finite()) {
            return Err(Error::config(format!("invalid domain {:?}", self.domain)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::config(format!("dt must be positive, got {}", self.dt)));
        }
        if self.threads < 1 {
            return Err(Error::config("threads must be >= 1"));
        }
        let ig = &self.ignition;
        if !(ig.r_inner >= 0.0 && ig.r_outer > ig.r_inner) {
            return Err(Error::config("ignition radii must satisfy 0 <= r < R"));
        }
        match &self.fuel {
            FuelSource::Constant(c) if !(0.0..=1.0).contains(c) => {
                return Err(Error::config(format!("constant fuel must lie in [0, 1], got {c}")))
            }
            FuelSource::Csv { scale, .. } if !(*scale >= 0.0) => {
                return Err(Error::config("fuel.scale must be non-negative"))
            }
            _ => {}
        }
        if self.samples == Some(0) {
            return Err(Error::config("samples must be >= 1"));
        }
        self.params.validate()?;
        if !self.wind.is_empty() {
            self.wind_field().validate(self.horizon())?;
        }
        Ok(())
    }

    /// Serializes every field; `parse(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("mesh.x", self.nx.to_string());
        kv("mesh.y", self.ny.to_string());
        kv("degree", self.degree.to_string());
        let d = self.domain;
        kv("domain", format!("{:?} {:?} {:?} {:?}", d[0], d[1], d[2], d[3]));
        kv("scheme", self.scheme.to_string());
        kv("dt", format!("{:?}", self.dt));
        kv("steps", self.steps.to_string());
        kv("output_every", self.output_every.to_string());
        kv("threads", self.threads.to_string());
        let ig = &self.ignition;
        kv("ignition.center", format!("{:?} {:?}", ig.center[0], ig.center[1]));
        kv("ignition.r", format!("{:?}", ig.r_inner));
        kv("ignition.R", format!("{:?}", ig.r_outer));
        kv("ignition.t0", format!("{:?}", ig.t0));
        kv("ignition.tcomb", format!("{:?}", ig.t_comb));
        match &self.fuel {
            FuelSource::Constant(c) => kv("fuel", format!("{c:?}")),
            FuelSource::Csv { path, scale, strict } => {
                kv("fuel", format!("csv {}", path.display()));
                kv("fuel.scale", format!("{scale:?}"));
                kv("fuel.strict", strict.to_string());
            }
        }
        kv("fuel.availability", self.fuel_availability.to_string());
        kv("out_dir", self.out_dir.display().to_string());
        if let Some(n) = self.samples {
            kv("samples", n.to_string());
        }
        kv("pgm", self.pgm.to_string());
        kv("dump_coeffs", self.dump_coeffs.to_string());
        for key in ModelParams::KEYS {
            kv(
                &format!("param.{key}"),
                format!("{:?}", self.params.get(key).unwrap_or(f64::NAN)),
            );
        }
        for (i, w) in self.wind.iter().enumerate() {
            kv(
                &format!("wind.{i}"),
                format!("{:?} {:?} {:?} {:?}", w.start, w.end, w.velocity[0], w.velocity[1]),
            );
        }
        s
    }
}

/// `fuel = <number>` or `fuel = csv <path>`; a bare path ending in `.csv` is
/// also accepted.
fn parse_fuel(v: &str, current: &FuelSource) -> Result<FuelSource> {
    let (scale, strict) = match current {
        FuelSource::Csv { scale, strict, .. } => (*scale, *strict),
        FuelSource::Constant(_) => (crate::fuelmap::DEFAULT_AVAILABILITY_SCALE, false),
    };
    if let Some(path) = v.strip_prefix("csv ") {
        return Ok(FuelSource::Csv {
            path: PathBuf::from(path.trim()),
            scale,
            strict,
        });
    }
    if let Ok(c) = v.parse::<f64>() {
        return Ok(FuelSource::Constant(c));
    }
    if v.to_ascii_lowercase().ends_with(".csv") {
        return Ok(FuelSource::Csv {
            path: PathBuf::from(v),
            scale,
            strict,
        });
    }
    Err(Error::config(format!(
        "fuel: expected a constant or `csv <path>`, got {v:?}"
    )))
}
