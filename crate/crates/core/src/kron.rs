//! Kronecker-structured 2D operators `A_x ⊗ A_y` applied and inverted as
//! sequences of independent 1D banded operations along grid lines.
//!
//! Grids are stored x-major: entry `(i, j)` lives at `i * ny + j`, so y-lines
//! are contiguous. With that layout `vec(T)` is acted on by `A_x ⊗ A_y` where
//! `A_x` works on the first (x) index and `A_y` on the second.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators1d::{BandedLu, BandedMatrix};

/// Tensor of B-spline coefficients over a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    nx: usize,
    ny: usize,
    values: Vec<f64>,
}

impl CoefficientGrid {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self::filled(nx, ny, 0.0)
    }

    pub fn filled(nx: usize, ny: usize, value: f64) -> Self {
        Self {
            nx,
            ny,
            values: vec![value; nx * ny],
        }
    }

    pub fn from_values(nx: usize, ny: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != nx * ny {
            return Err(Error::DimensionMismatch {
                expected: nx * ny,
                actual: values.len(),
            });
        }
        Ok(Self { nx, ny, values })
    }

    pub fn from_fn(nx: usize, ny: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                values.push(f(i, j));
            }
        }
        Self { nx, ny, values }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ny + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.ny + j] = v;
    }

    /// False once any coefficient is NaN or infinite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn fill(&mut self, v: f64) {
        self.values.fill(v);
    }

    /// `self += scale * other`.
    pub fn axpy(&mut self, scale: f64, other: &CoefficientGrid) {
        debug_assert_eq!(self.dims(), other.dims());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += scale * b;
        }
    }

    pub fn max_abs_diff(&self, other: &CoefficientGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn check_dims(&self, nx: usize, ny: usize) -> Result<()> {
        if self.nx != nx {
            return Err(Error::DimensionMismatch {
                expected: nx,
                actual: self.nx,
            });
        }
        if self.ny != ny {
            return Err(Error::DimensionMismatch {
                expected: ny,
                actual: self.ny,
            });
        }
        Ok(())
    }
}

fn transpose(src: &[f64], rows: usize, cols: usize, dst: &mut [f64]) {
    const BLOCK: usize = 32;
    for ib in (0..rows).step_by(BLOCK) {
        for jb in (0..cols).step_by(BLOCK) {
            for i in ib..(ib + BLOCK).min(rows) {
                for j in jb..(jb + BLOCK).min(cols) {
                    dst[j * rows + i] = src[i * cols + j];
                }
            }
        }
    }
}

/// Runs `f` on every x-line (fixed `j`) of an x-major grid.
fn for_each_x_line(values: &mut [f64], nx: usize, ny: usize, f: impl Fn(&mut [f64]) + Sync) {
    let mut t = vec![0.0; nx * ny];
    transpose(values, nx, ny, &mut t);
    t.par_chunks_mut(nx).for_each(&f);
    transpose(&t, ny, nx, values);
}

/// Solves `(A_x ⊗ A_y) vec(T) = vec(rhs)`: `A_y` along each of the `N_x`
/// y-lines, then `A_x` along each of the `N_y` x-lines.
pub fn kron_solve(lu_x: &BandedLu, lu_y: &BandedLu, rhs: &CoefficientGrid) -> Result<CoefficientGrid> {
    let mut out = rhs.clone();
    kron_solve_in_place(lu_x, lu_y, &mut out)?;
    Ok(out)
}

pub fn kron_solve_in_place(lu_x: &BandedLu, lu_y: &BandedLu, grid: &mut CoefficientGrid) -> Result<()> {
    grid.check_dims(lu_x.n(), lu_y.n())?;
    let (nx, ny) = grid.dims();
    grid.values
        .par_chunks_mut(ny)
        .for_each(|line| lu_y.solve_in_place(line));
    for_each_x_line(&mut grid.values, nx, ny, |line| lu_x.solve_in_place(line));
    Ok(())
}

/// `vec(out) = (A_x ⊗ A_y) vec(T)`.
pub fn kron_apply(a_x: &BandedMatrix, a_y: &BandedMatrix, t: &CoefficientGrid) -> Result<CoefficientGrid> {
    t.check_dims(a_x.n(), a_y.n())?;
    let (nx, ny) = t.dims();
    let mut out = t.clone();
    out.values.par_chunks_mut(ny).for_each(|line| {
        let input = line.to_vec();
        a_y.mul_vec_into(&input, line);
    });
    for_each_x_line(&mut out.values, nx, ny, |line| {
        let input = line.to_vec();
        a_x.mul_vec_into(&input, line);
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_banded(rng: &mut ChaCha8Rng, n: usize, w: usize) -> BandedMatrix {
        let mut a = BandedMatrix::zeros(n, w);
        for i in 0..n {
            for j in a.band_columns(i) {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
            a.add(i, i, 2.0 + 2.0 * w as f64);
        }
        a
    }

    fn dense_kron(a: &BandedMatrix, b: &BandedMatrix) -> Vec<f64> {
        let (na, nb) = (a.n(), b.n());
        let n = na * nb;
        let mut k = vec![0.0; n * n];
        for i in 0..na {
            for kk in 0..na {
                for j in 0..nb {
                    for l in 0..nb {
                        k[(i * nb + j) * n + kk * nb + l] = a.get(i, kk) * b.get(j, l);
                    }
                }
            }
        }
        k
    }

    #[test]
    fn identity_and_diagonal() {
        let rhs = CoefficientGrid::from_fn(3, 4, |i, j| (i * 4 + j) as f64);
        let id_x = BandedMatrix::identity(3).factor().unwrap();
        let id_y = BandedMatrix::identity(4).factor().unwrap();
        assert_eq!(kron_solve(&id_x, &id_y, &rhs).unwrap(), rhs);

        let dx = BandedMatrix::diagonal(&[2.0; 3]).factor().unwrap();
        let dy = BandedMatrix::diagonal(&[4.0; 4]).factor().unwrap();
        let out = kron_solve(&dx, &dy, &CoefficientGrid::filled(3, 4, 1.0)).unwrap();
        assert!(out.values().iter().all(|&v| v == 0.125));
    }

    #[test]
    fn apply_matches_dense_kronecker() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_banded(&mut rng, 3, 1);
        let b = random_banded(&mut rng, 3, 2);
        let t = CoefficientGrid::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
        let out = kron_apply(&a, &b, &t).unwrap();
        let k = dense_kron(&a, &b);
        for r in 0..9 {
            let oracle: f64 = (0..9).map(|c| k[r * 9 + c] * t.values()[c]).sum();
            assert!((out.values()[r] - oracle).abs() < 1e-12);
        }
        assert_eq!(
            kron_apply(&BandedMatrix::identity(3), &BandedMatrix::identity(3), &t).unwrap(),
            t
        );
    }

    #[test]
    fn apply_then_solve_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_banded(&mut rng, 9, 2);
        let b = random_banded(&mut rng, 6, 3);
        let t = CoefficientGrid::from_fn(9, 6, |_, _| rng.gen_range(-1.0..1.0));
        let y = kron_apply(&a, &b, &t).unwrap();
        let back = kron_solve(&a.factor().unwrap(), &b.factor().unwrap(), &y).unwrap();
        assert!(back.max_abs_diff(&t) < 1e-11);
    }

    #[test]
    fn dimension_mismatch() {
        let lu = BandedMatrix::identity(3).factor().unwrap();
        assert!(kron_solve(&lu, &lu, &CoefficientGrid::zeros(3, 4)).is_err());
        let id = BandedMatrix::identity(3);
        assert!(kron_apply(&id, &id, &CoefficientGrid::zeros(4, 3)).is_err());
    }

    #[test]
    fn solve_agrees_with_dense_oracle_small_grids() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for nx in 1..=8 {
            for ny in 1..=8 {
                if nx * ny > 64 {
                    continue;
                }
                let a = random_banded(&mut rng, nx, (nx - 1).min(2));
                let b = random_banded(&mut rng, ny, (ny - 1).min(1));
                let rhs = CoefficientGrid::from_fn(nx, ny, |_, _| rng.gen_range(-1.0..1.0));
                let x = kron_solve(&a.factor().unwrap(), &b.factor().unwrap(), &rhs).unwrap();
                let k = dense_kron(&a, &b);
                let n = nx * ny;
                for r in 0..n {
                    let lhs: f64 = (0..n).map(|c| k[r * n + c] * x.values()[c]).sum();
                    assert!((lhs - rhs.values()[r]).abs() < 1e-10);
                }
            }
        }
    }
}
