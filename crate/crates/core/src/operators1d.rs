//! Banded 1D mass, stiffness and advection matrices, their linear
//! combinations, and a banded LU factorization with partial pivoting.

use crate::bspline::{BasisTable, BsplineSpace, QuadRule};
use crate::error::{Error, Result};

/// Square matrix with nonzeros confined to `|i - j| <= half_bandwidth`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    half_bandwidth: usize,
    /// Row-major band: entry (i, j) at `i * (2w + 1) + (j + w - i)`.
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        Self {
            n,
            half_bandwidth,
            data: vec![0.0; n * (2 * half_bandwidth + 1)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, 0);
        m.data.fill(1.0);
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self {
            n: values.len(),
            half_bandwidth: 0,
            data: values.to_vec(),
        }
    }

    /// Builds a banded matrix from a dense row-major array, dropping entries
    /// outside the band.
    pub fn from_dense(n: usize, half_bandwidth: usize, dense: &[f64]) -> Self {
        assert_eq!(dense.len(), n * n);
        let mut m = Self::zeros(n, half_bandwidth);
        for i in 0..n {
            for j in m.band_columns(i) {
                m.set(i, j, dense[i * n + j]);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    fn width(&self) -> usize {
        2 * self.half_bandwidth + 1
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) <= self.half_bandwidth
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        i * self.width() + (j + self.half_bandwidth - i)
    }

    /// Columns `j` within the band of row `i`.
    pub fn band_columns(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.half_bandwidth)..(i + self.half_bandwidth + 1).min(self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.data[self.offset(i, j)]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(self.in_band(i, j), "({i}, {j}) outside band");
        let off = self.offset(i, j);
        self.data[off] = value;
    }

    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        assert!(self.in_band(i, j), "({i}, {j}) outside band");
        let off = self.offset(i, j);
        self.data[off] += value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n, self.half_bandwidth);
        for i in 0..self.n {
            for j in self.band_columns(i) {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `out = self * x`.
    pub fn mul_vec_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        let w = self.half_bandwidth;
        let width = self.width();
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * width..(i + 1) * width];
            let mut s = 0.0;
            for j in self.band_columns(i) {
                s += row[j + w - i] * x[j];
            }
            *o = s;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.mul_vec_into(x, &mut out);
        out
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.band_columns(i).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for i in 0..self.n {
            for j in self.band_columns(i) {
                sums[j] += self.get(i, j);
            }
        }
        sums
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in self.band_columns(i) {
                d[i * n + j] = self.get(i, j);
            }
        }
        d
    }

    /// `self + scale * other`, with the result carrying the wider band.
    pub fn add_scaled(&self, scale: f64, other: &BandedMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let w = self.half_bandwidth.max(other.half_bandwidth);
        let mut out = Self::zeros(self.n, w);
        for i in 0..self.n {
            for j in out.band_columns(i) {
                out.set(i, j, self.get(i, j) + scale * other.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn factor(&self) -> Result<BandedLu> {
        BandedLu::new(self)
    }
}

/// Integrand selector for 1D Galerkin matrices.
#[derive(Clone, Copy)]
enum Integrand {
    Mass,
    Stiffness,
    Advection,
}

fn assemble(space: &BsplineSpace, quad: &QuadRule, kind: Integrand) -> BandedMatrix {
    let p = space.degree();
    let table = BasisTable::new(space, quad.clone());
    let mut m = BandedMatrix::zeros(space.n_dof(), p);
    for e in 0..space.n_elements() {
        let first = table.first_index(e);
        for (q, &w) in quad.weights(e).iter().enumerate() {
            let v = table.values(e, q);
            let d = table.derivs(e, q);
            for a in 0..=p {
                for b in 0..=p {
                    let integrand = match kind {
                        Integrand::Mass => v[a] * v[b],
                        Integrand::Stiffness => d[a] * d[b],
                        Integrand::Advection => d[a] * v[b],
                    };
                    m.add(first + a, first + b, w * integrand);
                }
            }
        }
    }
    m
}

/// `M[i][k] = ∫ B_i B_k`.
pub fn assemble_mass(space: &BsplineSpace, quad: &QuadRule) -> BandedMatrix {
    assemble(space, quad, Integrand::Mass)
}

/// `K[i][k] = ∫ B_i' B_k'`.
pub fn assemble_stiffness(space: &BsplineSpace, quad: &QuadRule) -> BandedMatrix {
    assemble(space, quad, Integrand::Stiffness)
}

/// `G[i][k] = ∫ B_i' B_k`. Row `i` carries the differentiated function, so the
/// Galerkin matrix of `b ∂_s` (test rows, trial columns) is `Gᵀ`.
pub fn assemble_advection(space: &BsplineSpace, quad: &QuadRule) -> BandedMatrix {
    assemble(space, quad, Integrand::Advection)
}

/// The three pure 1D matrices of one direction.
#[derive(Debug, Clone)]
pub struct DirectionMatrices {
    pub mass: BandedMatrix,
    pub stiffness: BandedMatrix,
    pub advection: BandedMatrix,
}

impl DirectionMatrices {
    pub fn assemble(space: &BsplineSpace) -> Self {
        let quad = QuadRule::for_space(space);
        Self {
            mass: assemble_mass(space, &quad),
            stiffness: assemble_stiffness(space, &quad),
            advection: assemble_advection(space, &quad),
        }
    }

    pub fn form(&self, gamma: f64, delta: f64, reaction: f64) -> Result<BandedMatrix> {
        form_operator(&self.mass, &self.stiffness, &self.advection, gamma, delta, reaction)
    }
}

/// `M + γ K + δ Gᵀ + ρ_c M`: mass plus scaled diffusion, transport along the
/// direction (acting on trial coefficients) and a mass-multiple reaction term.
pub fn form_operator(
    mass: &BandedMatrix,
    stiffness: &BandedMatrix,
    advection: &BandedMatrix,
    gamma: f64,
    delta: f64,
    reaction: f64,
) -> Result<BandedMatrix> {
    for m in [stiffness, advection] {
        if m.n() != mass.n() {
            return Err(Error::DimensionMismatch {
                expected: mass.n(),
                actual: m.n(),
            });
        }
    }
    let w = mass
        .half_bandwidth()
        .max(stiffness.half_bandwidth())
        .max(advection.half_bandwidth());
    let mut out = BandedMatrix::zeros(mass.n(), w);
    for i in 0..mass.n() {
        for j in out.band_columns(i) {
            let v = (1.0 + reaction) * mass.get(i, j) + gamma * stiffness.get(i, j) + delta * advection.get(j, i);
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Banded LU factors `P A = L U`, with up to `2w` superdiagonals of fill in `U`.
#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    /// Row `i` stores columns `i - kl ..= i + 2 kl` at offset `j + kl - i`.
    upper: Vec<f64>,
    lower: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn new(a: &BandedMatrix) -> Result<Self> {
        let n = a.n();
        let kl = a.half_bandwidth();
        let width = 3 * kl + 1;
        let idx = |i: usize, j: usize| i * width + (j + kl - i);
        let mut upper = vec![0.0; n * width];
        for i in 0..n {
            for j in a.band_columns(i) {
                upper[idx(i, j)] = a.get(i, j);
            }
        }
        let mut lower = vec![0.0; n * kl];
        let mut pivots = vec![0; n];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut piv = k;
            let mut best = upper[idx(k, k)].abs();
            for r in k + 1..=last_row {
                let v = upper[idx(r, k)].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::SingularPivot { column: k });
            }
            pivots[k] = piv;
            let last_col = (k + 2 * kl).min(n - 1);
            if piv != k {
                for j in k..=last_col {
                    upper.swap(idx(k, j), idx(piv, j));
                }
            }
            let diag = upper[idx(k, k)];
            for i in k + 1..=last_row {
                let l = upper[idx(i, k)] / diag;
                lower[k * kl + (i - k - 1)] = l;
                upper[idx(i, k)] = 0.0;
                if l != 0.0 {
                    for j in k + 1..=last_col {
                        upper[idx(i, j)] -= l * upper[idx(k, j)];
                    }
                }
            }
        }
        Ok(Self {
            n,
            kl,
            upper,
            lower,
            pivots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Solves `A x = rhs` in place.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.n;
        let kl = self.kl;
        let width = 3 * kl + 1;
        debug_assert_eq!(x.len(), n);
        for k in 0..n {
            let piv = self.pivots[k];
            if piv != k {
                x.swap(k, piv);
            }
            let xk = x[k];
            let last_row = (k + kl).min(n - 1);
            for i in k + 1..=last_row {
                x[i] -= self.lower[k * kl + (i - k - 1)] * xk;
            }
        }
        for i in (0..n).rev() {
            let row = &self.upper[i * width..(i + 1) * width];
            let last_col = (i + 2 * kl).min(n - 1);
            let mut s = x[i];
            for j in i + 1..=last_col {
                s -= row[j + kl - i] * x[j];
            }
            x[i] = s / row[kl];
        }
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: rhs.len(),
            });
        }
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x);
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_linear() -> (BsplineSpace, QuadRule) {
        let s = BsplineSpace::new(1, 1, 0.0, 1.0).unwrap();
        let q = QuadRule::for_space(&s);
        (s, q)
    }

    fn assert_dense(m: &BandedMatrix, expected: &[f64], tol: f64) {
        let d = m.to_dense();
        for (a, b) in d.iter().zip(expected) {
            assert!((a - b).abs() < tol, "{d:?} vs {expected:?}");
        }
    }

    /// Dense assembly that evaluates every basis function at every
    /// quadrature point through the public point evaluator.
    fn dense_oracle(space: &BsplineSpace, f: impl Fn(f64, f64, f64, f64) -> f64) -> Vec<f64> {
        let n = space.n_dof();
        let quad = QuadRule::with_points(space, space.degree() + 3);
        let mut out = vec![0.0; n * n];
        for e in 0..space.n_elements() {
            for (&x, &w) in quad.points(e).iter().zip(quad.weights(e)) {
                let mut val = vec![0.0; n];
                let mut der = vec![0.0; n];
                let (first, v, d) = space.eval_nonzero(x).unwrap();
                val[first..first + v.len()].copy_from_slice(&v);
                der[first..first + d.len()].copy_from_slice(&d);
                for i in 0..n {
                    for k in 0..n {
                        out[i * n + k] += w * f(val[i], der[i], val[k], der[k]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn single_element_linear_matrices() {
        let (s, q) = unit_linear();
        assert_dense(
            &assemble_mass(&s, &q),
            &[1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0],
            1e-14,
        );
        assert_dense(&assemble_stiffness(&s, &q), &[1.0, -1.0, -1.0, 1.0], 1e-14);
        assert_dense(&assemble_advection(&s, &q), &[-0.5, -0.5, 0.5, 0.5], 1e-14);
    }

    #[test]
    fn dense_oracle_agreement() {
        let s = BsplineSpace::new(2, 3, 0.0, 3.0).unwrap();
        let q = QuadRule::for_space(&s);
        let n = s.n_dof();
        let m = assemble_mass(&s, &q).to_dense();
        let oracle = dense_oracle(&s, |vi, _, vk, _| vi * vk);
        (0..n * n).for_each(|i| assert!((m[i] - oracle[i]).abs() < 1e-13));

        let s = BsplineSpace::new(2, 4, 0.0, 1.0).unwrap();
        let q = QuadRule::for_space(&s);
        let n = s.n_dof();
        let k = assemble_stiffness(&s, &q).to_dense();
        let oracle = dense_oracle(&s, |_, di, _, dk| di * dk);
        (0..n * n).for_each(|i| assert!((k[i] - oracle[i]).abs() < 1e-13));
        let g = assemble_advection(&s, &q).to_dense();
        let oracle = dense_oracle(&s, |_, di, vk, _| di * vk);
        (0..n * n).for_each(|i| assert!((g[i] - oracle[i]).abs() < 1e-13));
    }

    #[test]
    fn partition_of_unity_identities() {
        for p in 1..=4 {
            let s = BsplineSpace::new(p, 9, 2.0, 7.0).unwrap();
            let d = DirectionMatrices::assemble(&s);
            let total: f64 = d.mass.row_sums().iter().sum();
            assert!((total - 5.0).abs() < 1e-12);
            assert!(d.stiffness.row_sums().iter().all(|r| r.abs() < 1e-12));
            assert!(d.advection.col_sums().iter().all(|c| c.abs() < 1e-12));
            // Row sums of G: B_i(b) - B_i(a).
            let rows = d.advection.row_sums();
            let n = s.n_dof();
            for (i, r) in rows.iter().enumerate() {
                let expected = (i == n - 1) as i32 as f64 - (i == 0) as i32 as f64;
                assert!((r - expected).abs() < 1e-12);
            }
            // Integration by parts: G + Gᵀ = [B_i B_k] evaluated between a and b.
            for i in 0..n {
                for k in 0..n {
                    let sym = d.advection.get(i, k) + d.advection.get(k, i);
                    let boundary = if i == n - 1 && k == n - 1 {
                        1.0
                    } else if i == 0 && k == 0 {
                        -1.0
                    } else {
                        0.0
                    };
                    assert!((sym - boundary).abs() < 1e-12);
                }
            }
            // Symmetry of mass and stiffness.
            for i in 0..n {
                for k in 0..n {
                    assert!((d.mass.get(i, k) - d.mass.get(k, i)).abs() < 1e-14);
                    assert!((d.stiffness.get(i, k) - d.stiffness.get(k, i)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn mass_is_positive_definite() {
        // Cholesky on the dense matrix succeeds.
        let s = BsplineSpace::new(3, 6, 0.0, 1.0).unwrap();
        let m = assemble_mass(&s, &QuadRule::for_space(&s));
        let n = m.n();
        let mut a = m.to_dense();
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= a[j * n + k] * a[j * n + k];
            }
            assert!(d > 0.0);
            let d = d.sqrt();
            a[j * n + j] = d;
            for i in j + 1..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= a[i * n + k] * a[j * n + k];
                }
                a[i * n + j] = s / d;
            }
        }
    }

    #[test]
    fn translation_invariance() {
        let s1 = BsplineSpace::new(2, 8, 0.0, 4.0).unwrap();
        let s2 = BsplineSpace::new(2, 8, 10.0, 14.0).unwrap();
        let d1 = DirectionMatrices::assemble(&s1);
        let d2 = DirectionMatrices::assemble(&s2);
        for (a, b) in [
            (&d1.mass, &d2.mass),
            (&d1.stiffness, &d2.stiffness),
            (&d1.advection, &d2.advection),
        ] {
            for (x, y) in a.to_dense().iter().zip(b.to_dense()) {
                assert!((x - y).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn form_operator_cases() {
        let (s, _) = unit_linear();
        let d = DirectionMatrices::assemble(&s);
        assert_eq!(d.form(0.0, 0.0, 0.0).unwrap(), d.mass);
        let a = d.form(1.0, 0.0, 0.0).unwrap();
        assert_dense(&a, &[4.0 / 3.0, -5.0 / 6.0, -5.0 / 6.0, 4.0 / 3.0], 1e-14);

        let s = BsplineSpace::new(2, 5, 0.0, 2.0).unwrap();
        let d = DirectionMatrices::assemble(&s);
        let (g, dl, r) = (0.3, -1.7, 0.25);
        let a = d.form(g, dl, r).unwrap().to_dense();
        let n = s.n_dof();
        let (m, k, adv) = (d.mass.to_dense(), d.stiffness.to_dense(), d.advection.to_dense());
        for i in 0..n {
            for j in 0..n {
                let oracle = m[i * n + j] + g * k[i * n + j] + dl * adv[j * n + i] + r * m[i * n + j];
                assert!((a[i * n + j] - oracle).abs() < 1e-14);
            }
        }

        let other = BsplineSpace::new(2, 6, 0.0, 2.0).unwrap();
        let k2 = assemble_stiffness(&other, &QuadRule::for_space(&other));
        assert!(form_operator(&d.mass, &k2, &d.advection, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn solve_identity_and_mass() {
        let lu = BandedMatrix::identity(5).factor().unwrap();
        let rhs = [1.0, -2.0, 3.0, 0.5, 7.0];
        assert_eq!(lu.solve(&rhs).unwrap(), rhs.to_vec());

        let (s, q) = unit_linear();
        let lu = assemble_mass(&s, &q).factor().unwrap();
        let x = lu.solve(&[0.5, 0.5]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
        assert!(lu.solve(&[1.0]).is_err());
    }

    fn dense_solve(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut m = a.to_vec();
        let mut x = b.to_vec();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| m[i * n + k].abs().total_cmp(&m[j * n + k].abs()))
                .unwrap();
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            x.swap(k, piv);
            for i in k + 1..n {
                let l = m[i * n + k] / m[k * n + k];
                for j in k..n {
                    m[i * n + j] -= l * m[k * n + j];
                }
                x[i] -= l * x[k];
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= m[i * n + j] * x[j];
            }
            x[i] = s / m[i * n + i];
        }
        x
    }

    #[test]
    fn random_banded_against_dense_lu() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for w in 1..=3 {
            let n = 20;
            let mut a = BandedMatrix::zeros(n, w);
            for i in 0..n {
                for j in a.band_columns(i) {
                    a.set(i, j, rng.gen_range(-1.0..1.0));
                }
                a.add(i, i, 2.0 * w as f64 + 1.0);
            }
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let x = a.factor().unwrap().solve(&b).unwrap();
            let oracle = dense_solve(n, &a.to_dense(), &b);
            for (u, v) in x.iter().zip(&oracle) {
                assert!((u - v).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        // [[0, 1], [1, 0]] requires a row swap.
        let a = BandedMatrix::from_dense(2, 1, &[0.0, 1.0, 1.0, 0.0]);
        let x = a.factor().unwrap().solve(&[2.0, 3.0]).unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
    }

    #[test]
    fn singular_matrix_reported() {
        let a = BandedMatrix::from_dense(3, 1, &[1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(a.factor(), Err(Error::SingularPivot { .. })));
    }

    #[test]
    fn residual_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = BsplineSpace::new(3, 40, 0.0, 100.0).unwrap();
        let d = DirectionMatrices::assemble(&s);
        let a = d.form(0.4, 0.7, 0.01).unwrap();
        let lu = a.factor().unwrap();
        for _ in 0..100 {
            let b: Vec<f64> = (0..a.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let x = lu.solve(&b).unwrap();
            let r = a.mul_vec(&x);
            let num: f64 = r.iter().zip(&b).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
            let den: f64 = b.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(num / den < 1e-12);
        }
    }
}
