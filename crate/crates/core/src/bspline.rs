//! Open uniform B-spline spaces on an interval, basis evaluation by the
//! Cox–de Boor recurrence and element-wise Gauss–Legendre quadrature.

use crate::error::{Error, Result};

/// Degree-`p` B-spline basis on a uniform mesh of `[a, b]` with an open knot vector.
#[derive(Debug, Clone, PartialEq)]
pub struct BsplineSpace {
    degree: usize,
    n_elements: usize,
    a: f64,
    b: f64,
    knots: Vec<f64>,
}

impl BsplineSpace {
    pub fn new(degree: usize, n_elements: usize, a: f64, b: f64) -> Result<Self> {
        if degree < 1 {
            return Err(Error::config("B-spline degree must be >= 1"));
        }
        if n_elements < 1 {
            return Err(Error::config("number of elements must be >= 1"));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::config(format!("invalid interval [{a}, {b}]")));
        }
        let h = (b - a) / n_elements as f64;
        let mut knots = Vec::with_capacity(n_elements + 2 * degree + 1);
        knots.extend(std::iter::repeat_n(a, degree + 1));
        knots.extend((1..n_elements).map(|i| a + i as f64 * h));
        knots.extend(std::iter::repeat_n(b, degree + 1));
        Ok(Self {
            degree,
            n_elements,
            a,
            b,
            knots,
        })
    }

    /// Builds a space from an explicit knot vector. Only open knot vectors with
    /// uniformly spaced simple interior knots are accepted.
    pub fn from_knots(degree: usize, knots: &[f64]) -> Result<Self> {
        if degree < 1 || knots.len() < 2 * degree + 2 {
            return Err(Error::config("knot vector too short for degree"));
        }
        let a = knots[0];
        let b = knots[knots.len() - 1];
        let n_elements = knots.len() - 2 * degree - 1;
        let space = Self::new(degree, n_elements, a, b)?;
        let tol = 1e-12 * (b - a);
        let uniform = space.knots.iter().zip(knots).all(|(u, v)| (u - v).abs() <= tol);
        if !uniform {
            return Err(Error::config(
                "only open knot vectors with uniform interior knots are supported",
            ));
        }
        Ok(space)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_dof(&self) -> usize {
        self.n_elements + self.degree
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Element width.
    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.n_elements as f64
    }

    pub fn element_bounds(&self, e: usize) -> (f64, f64) {
        let h = self.h();
        let lo = self.a + e as f64 * h;
        let hi = if e + 1 == self.n_elements {
            self.b
        } else {
            self.a + (e + 1) as f64 * h
        };
        (lo, hi)
    }

    /// Element containing `x`; the right endpoint belongs to the last element.
    pub fn element_of(&self, x: f64) -> Result<usize> {
        if !(x >= self.a && x <= self.b) {
            return Err(Error::OutOfDomain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        let e = ((x - self.a) / self.h()).floor() as usize;
        Ok(e.min(self.n_elements - 1))
    }

    /// Values and first derivatives of the `p + 1` basis functions that are
    /// nonzero at `x`. Returns the global index of the first of them.
    pub fn eval_nonzero_into(&self, x: f64, values: &mut [f64], derivs: &mut [f64]) -> Result<usize> {
        let e = self.element_of(x)?;
        self.eval_on_element(e, x, values, derivs);
        Ok(e)
    }

    pub fn eval_nonzero(&self, x: f64) -> Result<(usize, Vec<f64>, Vec<f64>)> {
        let mut values = vec![0.0; self.degree + 1];
        let mut derivs = vec![0.0; self.degree + 1];
        let first = self.eval_nonzero_into(x, &mut values, &mut derivs)?;
        Ok((first, values, derivs))
    }

    /// Cox–de Boor evaluation on element `e` (knot span `e + p`). `x` may lie
    /// anywhere in the closure of the element.
    pub(crate) fn eval_on_element(&self, e: usize, x: f64, values: &mut [f64], derivs: &mut [f64]) {
        let p = self.degree;
        let span = e + p;
        let u = &self.knots;
        debug_assert!(values.len() > p && derivs.len() > p);

        let mut left = [0.0f64; MAX_DEGREE + 1];
        let mut right = [0.0f64; MAX_DEGREE + 1];
        let mut lower = [0.0f64; MAX_DEGREE + 1];
        assert!(p <= MAX_DEGREE, "degree {p} exceeds supported maximum {MAX_DEGREE}");

        values[0] = 1.0;
        for j in 1..=p {
            if j == p {
                lower[..p].copy_from_slice(&values[..p]);
            }
            left[j] = x - u[span + 1 - j];
            right[j] = u[span + j] - x;
            let mut saved = 0.0;
            for r in 0..j {
                let temp = values[r] / (right[r + 1] + left[j - r]);
                values[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            values[j] = saved;
        }
        if p == 0 {
            derivs[0] = 0.0;
            return;
        }

        let pf = p as f64;
        for r in 0..=p {
            let i = span - p + r;
            let mut d = 0.0;
            if r > 0 {
                d += lower[r - 1] / (u[i + p] - u[i]);
            }
            if r < p {
                d -= lower[r] / (u[i + p + 1] - u[i + 1]);
            }
            derivs[r] = pf * d;
        }
    }
}

/// Highest supported spline degree.
pub const MAX_DEGREE: usize = 8;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess, refined by Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (pn, dpn) = legendre(n, z);
            dp = dpn;
            let dz = pn / dpn;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, dpn) = legendre(n, z);
        if dpn != 0.0 {
            dp = dpn;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, dp)
}

/// Gauss–Legendre points and weights mapped onto every element of a space.
#[derive(Debug, Clone)]
pub struct QuadRule {
    n_points: usize,
    /// `points[e * n_points + q]`
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    /// `p + 1` points per element, exact for the degree-`2p` mass integrand.
    pub fn for_space(space: &BsplineSpace) -> Self {
        Self::with_points(space, space.degree() + 1)
    }

    pub fn with_points(space: &BsplineSpace, n_points: usize) -> Self {
        let (ref_nodes, ref_weights) = gauss_legendre(n_points);
        let ne = space.n_elements();
        let mut points = Vec::with_capacity(ne * n_points);
        let mut weights = Vec::with_capacity(ne * n_points);
        for e in 0..ne {
            let (lo, hi) = space.element_bounds(e);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (z, w) in ref_nodes.iter().zip(&ref_weights) {
                points.push(mid + half * z);
                weights.push(half * w);
            }
        }
        Self {
            n_points,
            points,
            weights,
        }
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_elements(&self) -> usize {
        self.points.len() / self.n_points
    }

    pub fn points(&self, e: usize) -> &[f64] {
        &self.points[e * self.n_points..(e + 1) * self.n_points]
    }

    pub fn weights(&self, e: usize) -> &[f64] {
        &self.weights[e * self.n_points..(e + 1) * self.n_points]
    }
}

/// Basis values and derivatives tabulated at every quadrature point of a space.
#[derive(Debug, Clone)]
pub struct BasisTable {
    degree: usize,
    quad: QuadRule,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl BasisTable {
    pub fn new(space: &BsplineSpace, quad: QuadRule) -> Self {
        let nb = space.degree() + 1;
        let nq = quad.n_points();
        let ne = space.n_elements();
        let mut values = vec![0.0; ne * nq * nb];
        let mut derivs = vec![0.0; ne * nq * nb];
        for e in 0..ne {
            for (q, &x) in quad.points(e).iter().enumerate() {
                let off = (e * nq + q) * nb;
                space.eval_on_element(e, x, &mut values[off..off + nb], &mut derivs[off..off + nb]);
            }
        }
        Self {
            degree: space.degree(),
            quad,
            values,
            derivs,
        }
    }

    pub fn quad(&self) -> &QuadRule {
        &self.quad
    }

    pub fn n_basis(&self) -> usize {
        self.degree + 1
    }

    /// Global index of the first basis function supported on element `e`.
    pub fn first_index(&self, e: usize) -> usize {
        e
    }

    pub fn values(&self, e: usize, q: usize) -> &[f64] {
        let nb = self.n_basis();
        let off = (e * self.quad.n_points() + q) * nb;
        &self.values[off..off + nb]
    }

    pub fn derivs(&self, e: usize, q: usize) -> &[f64] {
        let nb = self.n_basis();
        let off = (e * self.quad.n_points() + q) * nb;
        &self.derivs[off..off + nb]
    }
}
