//! Sampled field output (`out_<step>.data`, `fuel_<step>.data`), optional PGM
//! mirrors, raw coefficient dumps, and re-projection of sampled data.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::assembly::Discretization;
use crate::bspline::BsplineSpace;
use crate::error::{Error, Result};
use crate::kron::{kron_solve, CoefficientGrid};
use crate::operators1d::BandedMatrix;

/// Basis values of one space at uniformly spaced sample points.
struct SampleBasis {
    first: Vec<usize>,
    values: Vec<Vec<f64>>,
    coords: Vec<f64>,
}

impl SampleBasis {
    fn new(space: &BsplineSpace, n_samples: usize) -> Result<Self> {
        let (a, b) = space.domain();
        let mut out = Self {
            first: Vec::with_capacity(n_samples + 1),
            values: Vec::with_capacity(n_samples + 1),
            coords: Vec::with_capacity(n_samples + 1),
        };
        for k in 0..=n_samples {
            // Exact endpoints so the last sample never leaves the domain.
            let x = if k == n_samples {
                b
            } else {
                a + (b - a) * k as f64 / n_samples as f64
            };
            let (first, values, _) = space.eval_nonzero(x)?;
            out.first.push(first);
            out.values.push(values);
            out.coords.push(x);
        }
        Ok(out)
    }
}

/// Field values on a uniform `(n + 1) × (n + 1)` grid, stored with `y` as the
/// outer index.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub n_samples: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledField {
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.xs.len() + ix]
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

/// Evaluates a field at the uniform sample grid.
pub fn sample_field(disc: &Discretization, grid: &CoefficientGrid, n_samples: usize) -> Result<SampledField> {
    if n_samples == 0 {
        return Err(Error::config("sample count must be >= 1"));
    }
    let bx = SampleBasis::new(disc.space_x(), n_samples)?;
    let by = SampleBasis::new(disc.space_y(), n_samples)?;
    let m = n_samples + 1;
    let mut values = Vec::with_capacity(m * m);
    for jy in 0..m {
        let (fy, vy) = (by.first[jy], &by.values[jy]);
        for ix in 0..m {
            let (fx, vx) = (bx.first[ix], &bx.values[ix]);
            let mut s = 0.0;
            for (a, wa) in vx.iter().enumerate() {
                let mut inner = 0.0;
                for (b, wb) in vy.iter().enumerate() {
                    inner += grid.get(fx + a, fy + b) * wb;
                }
                s += wa * inner;
            }
            values.push(s);
        }
    }
    Ok(SampledField {
        n_samples,
        xs: bx.coords,
        ys: by.coords,
        values,
    })
}

/// One output frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot {
    pub step: usize,
    pub time: f64,
    pub temperature: SampledField,
    pub fuel: SampledField,
}

impl FieldSnapshot {
    pub fn capture(
        disc: &Discretization,
        temperature: &CoefficientGrid,
        fuel: &CoefficientGrid,
        step: usize,
        time: f64,
        n_samples: usize,
    ) -> Result<Self> {
        Ok(Self {
            step,
            time,
            temperature: sample_field(disc, temperature, n_samples)?,
            fuel: sample_field(disc, fuel, n_samples)?,
        })
    }

    /// Writes `out_<step>.data` and `fuel_<step>.data` (plus `.pgm` mirrors
    /// when asked) into `dir` and returns the paths written.
    pub fn write(&self, dir: &Path, pgm: bool) -> Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for (stem, field) in [("out", &self.temperature), ("fuel", &self.fuel)] {
            let path = dir.join(format!("{stem}_{}.data", self.step));
            write_data(&path, field)?;
            written.push(path);
            if pgm {
                let path = dir.join(format!("{stem}_{}.pgm", self.step));
                write_pgm(&path, field)?;
                written.push(path);
            }
        }
        Ok(written)
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(bytes))
        .map_err(|e| Error::io(path, e))
}

/// `x y value` per line, `y` outer, 17 significant digits.
pub fn format_data(field: &SampledField) -> String {
    let mut s = String::with_capacity(field.values.len() * 72);
    for (jy, y) in field.ys.iter().enumerate() {
        for (ix, x) in field.xs.iter().enumerate() {
            let _ = writeln!(s, "{x:.16e} {y:.16e} {:.16e}", field.get(ix, jy));
        }
    }
    s
}

pub fn write_data(path: &Path, field: &SampledField) -> Result<()> {
    write_file(path, format_data(field).as_bytes())
}

/// Binary greyscale image, min → black, max → white, top row at maximum `y`.
pub fn write_pgm(path: &Path, field: &SampledField) -> Result<()> {
    let (w, h) = (field.xs.len(), field.ys.len());
    let (lo, hi) = field.min_max();
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    for jy in (0..h).rev() {
        for ix in 0..w {
            let v = ((field.get(ix, jy) - lo) / span * 255.0).round();
            bytes.push(v.clamp(0.0, 255.0) as u8);
        }
    }
    write_file(path, &bytes)
}

/// Parses a `.data` file into `(x, y, value)` triples.
pub fn read_data(path: &Path) -> Result<Vec<[f64; 3]>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_data(&text, &path.display().to_string())
}

pub fn parse_data(text: &str, origin: &str) -> Result<Vec<[f64; 3]>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut triple = [0.0; 3];
        let mut parts = line.split_whitespace();
        for (c, slot) in triple.iter_mut().enumerate() {
            let tok = parts.next().ok_or_else(|| Error::Format {
                path: origin.into(),
                row: n + 1,
                column: c + 1,
                message: "expected three values".into(),
            })?;
            *slot = tok.parse().map_err(|_| Error::Format {
                path: origin.into(),
                row: n + 1,
                column: c + 1,
                message: format!("not a number: {tok:?}"),
            })?;
        }
        if parts.next().is_some() {
            return Err(Error::Format {
                path: origin.into(),
                row: n + 1,
                column: 4,
                message: "expected three values".into(),
            });
        }
        out.push(triple);
    }
    Ok(out)
}

/// Rebuilds a [`SampledField`] from `.data` triples on a uniform grid.
pub fn field_from_triples(triples: &[[f64; 3]]) -> Result<SampledField> {
    let m = (triples.len() as f64).sqrt().round() as usize;
    if m < 2 || m * m != triples.len() {
        return Err(Error::config(format!(
            "{} samples do not form a square grid",
            triples.len()
        )));
    }
    let xs: Vec<f64> = triples[..m].iter().map(|t| t[0]).collect();
    let ys: Vec<f64> = (0..m).map(|j| triples[j * m][1]).collect();
    Ok(SampledField {
        n_samples: m - 1,
        xs,
        ys,
        values: triples.iter().map(|t| t[2]).collect(),
    })
}

/// First nonzero index and values of the basis at one point.
type BasisRow = (usize, Vec<f64>);

/// Collocation normal matrix `Bᵀ B` (banded) and the rows of `B`.
fn normal_matrix(space: &BsplineSpace, coords: &[f64]) -> Result<(BandedMatrix, Vec<BasisRow>)> {
    let n = space.n_dof();
    let p = space.degree();
    let mut ata = BandedMatrix::zeros(n, p);
    let mut rows = Vec::with_capacity(coords.len());
    for &x in coords {
        let (first, values, _) = space.eval_nonzero(x)?;
        for (a, va) in values.iter().enumerate() {
            for (b, vb) in values.iter().enumerate() {
                ata.add(first + a, first + b, va * vb);
            }
        }
        rows.push((first, values));
    }
    Ok((ata, rows))
}

/// Least-squares tensor fit of sampled values onto the spline space. Needs at
/// least `n_dof` distinct samples per direction to be well posed; sampling at
/// twice the mesh resolution is enough for any degree up to the mesh size.
pub fn reproject(disc: &Discretization, field: &SampledField) -> Result<CoefficientGrid> {
    let (nx, ny) = disc.dofs();
    let (mx, my) = (field.xs.len(), field.ys.len());
    if mx < nx || my < ny {
        return Err(Error::config(format!(
            "{mx}x{my} samples cannot determine {nx}x{ny} coefficients"
        )));
    }
    let (ata_x, rows_x) = normal_matrix(disc.space_x(), &field.xs)?;
    let (ata_y, rows_y) = normal_matrix(disc.space_y(), &field.ys)?;
    // rhs = (B_x ⊗ B_y)ᵀ v with v indexed [ix][jy].
    let mut rhs = CoefficientGrid::zeros(nx, ny);
    for (ix, (fx, vx)) in rows_x.iter().enumerate() {
        for (jy, (fy, vy)) in rows_y.iter().enumerate() {
            let v = field.get(ix, jy);
            for (a, wa) in vx.iter().enumerate() {
                for (b, wb) in vy.iter().enumerate() {
                    let i = fx + a;
                    let j = fy + b;
                    rhs.set(i, j, rhs.get(i, j) + wa * wb * v);
                }
            }
        }
    }
    kron_solve(&ata_x.factor()?, &ata_y.factor()?, &rhs)
}

/// Raw coefficients: a `nx ny` header then one value per line in storage order.
pub fn write_coeffs(path: &Path, grid: &CoefficientGrid) -> Result<()> {
    let mut s = format!("{} {}\n", grid.nx(), grid.ny());
    for v in grid.values() {
        let _ = writeln!(s, "{v:.16e}");
    }
    write_file(path, s.as_bytes())
}

pub fn read_coeffs(path: &Path) -> Result<CoefficientGrid> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let origin = path.display().to_string();
    let bad = |row: usize, message: String| Error::Format {
        path: origin.clone(),
        row,
        column: 1,
        message,
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad(1, "missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad(1, format!("bad header {header:?}")))?;
    let [nx, ny] = dims[..] else {
        return Err(bad(1, format!("bad header {header:?}")));
    };
    let values = lines
        .enumerate()
        .map(|(k, l)| {
            l.trim()
                .parse::<f64>()
                .map_err(|_| bad(k + 2, format!("not a number: {l:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CoefficientGrid::from_values(nx, ny, values)
}
