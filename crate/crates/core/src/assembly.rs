//! Weak-form assembly over the tensor-product mesh.
//!
//! The element loop runs in parallel over strips of elements (fixed `x`
//! element index). Each strip fills a private buffer; buffers are scattered
//! into the global vector strictly in element order, so the result does not
//! depend on the number of workers.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bspline::{BasisTable, BsplineSpace, QuadRule};
use crate::error::{Error, Result};
use crate::fuelmap::FuelMap;
use crate::kron::{kron_solve_in_place, CoefficientGrid};
use crate::operators1d::{BandedLu, DirectionMatrices};
use crate::physics::{unit_rate, DerivedCoeffs, FieldPoint, ModelParams};

/// Prescribed source `f(x, y, t)`.
pub type PointSource = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Right-hand-side load vector; same layout as [`CoefficientGrid`].
pub type RhsGrid = CoefficientGrid;

/// Fields evaluated at one quadrature point.
#[derive(Debug, Clone, Copy)]
pub struct QuadPoint {
    pub pos: [f64; 2],
    /// Flat quadrature-point index, `(ex * nq + qx) * (ney * nq) + ey * nq + qy`.
    pub index: usize,
    pub fields: [FieldPoint; 2],
}

/// Value of an integrand: `volumetric * v + flux · ∇v`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Integrand {
    pub volumetric: f64,
    pub flux: [f64; 2],
}

impl Integrand {
    pub fn volumetric(v: f64) -> Self {
        Self {
            volumetric: v,
            flux: [0.0, 0.0],
        }
    }
}

/// Tensor-product B-spline discretization of a rectangle.
#[derive(Debug)]
pub struct Discretization {
    space_x: BsplineSpace,
    space_y: BsplineSpace,
    table_x: BasisTable,
    table_y: BasisTable,
    pub dir_x: DirectionMatrices,
    pub dir_y: DirectionMatrices,
    mass_lu_x: BandedLu,
    mass_lu_y: BandedLu,
}

impl Discretization {
    pub fn new(space_x: BsplineSpace, space_y: BsplineSpace) -> Result<Self> {
        let table_x = BasisTable::new(&space_x, QuadRule::for_space(&space_x));
        let table_y = BasisTable::new(&space_y, QuadRule::for_space(&space_y));
        let dir_x = DirectionMatrices::assemble(&space_x);
        let dir_y = DirectionMatrices::assemble(&space_y);
        let mass_lu_x = dir_x.mass.factor()?;
        let mass_lu_y = dir_y.mass.factor()?;
        Ok(Self {
            space_x,
            space_y,
            table_x,
            table_y,
            dir_x,
            dir_y,
            mass_lu_x,
            mass_lu_y,
        })
    }

    /// Square `n × n` element mesh of degree `p` on `[a, b]²`.
    pub fn square(p: usize, n: usize, a: f64, b: f64) -> Result<Self> {
        Self::new(BsplineSpace::new(p, n, a, b)?, BsplineSpace::new(p, n, a, b)?)
    }

    pub fn space_x(&self) -> &BsplineSpace {
        &self.space_x
    }

    pub fn space_y(&self) -> &BsplineSpace {
        &self.space_y
    }

    pub fn dofs(&self) -> (usize, usize) {
        (self.space_x.n_dof(), self.space_y.n_dof())
    }

    pub fn mass_lu(&self) -> (&BandedLu, &BandedLu) {
        (&self.mass_lu_x, &self.mass_lu_y)
    }

    pub fn zeros(&self) -> CoefficientGrid {
        let (nx, ny) = self.dofs();
        CoefficientGrid::zeros(nx, ny)
    }

    pub fn constant(&self, v: f64) -> CoefficientGrid {
        let (nx, ny) = self.dofs();
        CoefficientGrid::filled(nx, ny, v)
    }

    /// Number of quadrature points along each axis.
    pub fn quad_counts(&self) -> (usize, usize) {
        (
            self.space_x.n_elements() * self.table_x.quad().n_points(),
            self.space_y.n_elements() * self.table_y.quad().n_points(),
        )
    }

    /// Physical coordinates of every quadrature point, indexed like
    /// [`QuadPoint::index`].
    pub fn quad_positions(&self) -> Vec<[f64; 2]> {
        let (qx, qy) = (self.table_x.quad(), self.table_y.quad());
        let xs: Vec<f64> = (0..qx.n_elements()).flat_map(|e| qx.points(e).to_vec()).collect();
        let ys: Vec<f64> = (0..qy.n_elements()).flat_map(|e| qy.points(e).to_vec()).collect();
        xs.iter().flat_map(|&x| ys.iter().map(move |&y| [x, y])).collect()
    }

    /// Evaluates a field and its gradient at an arbitrary point.
    pub fn eval(&self, grid: &CoefficientGrid, x: f64, y: f64) -> Result<FieldPoint> {
        let p = self.space_x.degree();
        let r = self.space_y.degree();
        let mut vx = vec![0.0; p + 1];
        let mut dx = vec![0.0; p + 1];
        let mut vy = vec![0.0; r + 1];
        let mut dy = vec![0.0; r + 1];
        let ix = self.space_x.eval_nonzero_into(x, &mut vx, &mut dx)?;
        let iy = self.space_y.eval_nonzero_into(y, &mut vy, &mut dy)?;
        let mut out = FieldPoint::default();
        for a in 0..=p {
            for b in 0..=r {
                let c = grid.get(ix + a, iy + b);
                out.value += c * vx[a] * vy[b];
                out.grad[0] += c * dx[a] * vy[b];
                out.grad[1] += c * vx[a] * dy[b];
            }
        }
        Ok(out)
    }

    fn check(&self, grid: &CoefficientGrid) -> Result<()> {
        let (nx, ny) = self.dofs();
        if grid.dims() != (nx, ny) {
            return Err(Error::DimensionMismatch {
                expected: nx * ny,
                actual: grid.nx() * grid.ny(),
            });
        }
        Ok(())
    }

    /// Assembles `∫ (volumetric v + flux·∇v)` for every basis function `v`.
    /// `fields` (at most two) are evaluated at each quadrature point and
    /// handed to the integrand in order.
    pub fn assemble<F>(&self, fields: &[&CoefficientGrid], integrand: F) -> Result<RhsGrid>
    where
        F: Fn(&QuadPoint) -> Integrand + Sync,
    {
        assert!(fields.len() <= 2, "at most two fields per assembly pass");
        for f in fields {
            self.check(f)?;
        }
        let (nx, ny) = self.dofs();
        let mut out = CoefficientGrid::zeros(nx, ny);
        let nex = self.space_x.n_elements();
        let ney = self.space_y.n_elements();
        let nbx = self.table_x.n_basis();
        let nby = self.table_y.n_basis();
        let local = nbx * nby;

        // Bounded memory: strips are computed in parallel batches and
        // scattered in element order after each batch.
        let batch = 64.max(4 * rayon::current_num_threads());
        let mut start = 0;
        while start < nex {
            let end = (start + batch).min(nex);
            let strips: Vec<Vec<f64>> = (start..end)
                .into_par_iter()
                .map(|ex| {
                    let mut buf = vec![0.0; ney * local];
                    for ey in 0..ney {
                        self.element_load(ex, ey, fields, &integrand, &mut buf[ey * local..(ey + 1) * local]);
                    }
                    buf
                })
                .collect();
            for (k, buf) in strips.iter().enumerate() {
                let ex = start + k;
                let ix = self.table_x.first_index(ex);
                for ey in 0..ney {
                    let iy = self.table_y.first_index(ey);
                    let el = &buf[ey * local..(ey + 1) * local];
                    for a in 0..nbx {
                        let row = &mut out.values_mut()[(ix + a) * ny + iy..(ix + a) * ny + iy + nby];
                        for (b, slot) in row.iter_mut().enumerate() {
                            *slot += el[a * nby + b];
                        }
                    }
                }
            }
            start = end;
        }
        Ok(out)
    }

    fn element_load<F>(&self, ex: usize, ey: usize, fields: &[&CoefficientGrid], integrand: &F, out: &mut [f64])
    where
        F: Fn(&QuadPoint) -> Integrand,
    {
        let qx = self.table_x.quad();
        let qy = self.table_y.quad();
        let nqx = qx.n_points();
        let nqy = qy.n_points();
        let ney = self.space_y.n_elements();
        let nbx = self.table_x.n_basis();
        let nby = self.table_y.n_basis();
        let ix = self.table_x.first_index(ex);
        let iy = self.table_y.first_index(ey);
        let row_len = ney * nqy;

        for (i, (&x, &wx)) in qx.points(ex).iter().zip(qx.weights(ex)).enumerate() {
            let vx = self.table_x.values(ex, i);
            let dx = self.table_x.derivs(ex, i);
            for (j, (&y, &wy)) in qy.points(ey).iter().zip(qy.weights(ey)).enumerate() {
                let vy = self.table_y.values(ey, j);
                let dy = self.table_y.derivs(ey, j);
                let mut point = QuadPoint {
                    pos: [x, y],
                    index: (ex * nqx + i) * row_len + ey * nqy + j,
                    fields: [FieldPoint::default(); 2],
                };
                for (slot, grid) in point.fields.iter_mut().zip(fields) {
                    let mut fp = FieldPoint::default();
                    for a in 0..nbx {
                        let base = (ix + a) * grid.ny() + iy;
                        let coeffs = &grid.values()[base..base + nby];
                        let (mut s, mut sy) = (0.0, 0.0);
                        for b in 0..nby {
                            s += coeffs[b] * vy[b];
                            sy += coeffs[b] * dy[b];
                        }
                        fp.value += vx[a] * s;
                        fp.grad[0] += dx[a] * s;
                        fp.grad[1] += vx[a] * sy;
                    }
                    *slot = fp;
                }
                let f = integrand(&point);
                let w = wx * wy;
                for a in 0..nbx {
                    let cv = w * f.volumetric * vx[a];
                    let cx = w * f.flux[0] * dx[a];
                    let cy = w * f.flux[1] * vx[a];
                    for b in 0..nby {
                        out[a * nby + b] += cv * vy[b] + cx * vy[b] + cy * dy[b];
                    }
                }
            }
        }
    }

    /// Solves `(M_x ⊗ M_y) c = rhs`.
    pub fn mass_solve(&self, rhs: &mut RhsGrid) -> Result<()> {
        kron_solve_in_place(&self.mass_lu_x, &self.mass_lu_y, rhs)
    }

    /// L2 projection of a function onto the spline space.
    pub fn project<F>(&self, f: F) -> Result<CoefficientGrid>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        let mut rhs = self.assemble(&[], |q| Integrand::volumetric(f(q.pos[0], q.pos[1])))?;
        self.mass_solve(&mut rhs)?;
        Ok(rhs)
    }

    /// Integrates `f(point)` over the domain with the element quadrature;
    /// partial sums are combined in a fixed order.
    pub fn integrate<F>(&self, fields: &[&CoefficientGrid], f: F) -> Result<f64>
    where
        F: Fn(&QuadPoint) -> f64 + Sync,
    {
        for g in fields {
            self.check(g)?;
        }
        let nex = self.space_x.n_elements();
        let ney = self.space_y.n_elements();
        let nbx = self.table_x.n_basis();
        let nby = self.table_y.n_basis();
        let partial: Vec<f64> = (0..nex)
            .into_par_iter()
            .map(|ex| {
                let mut sum = 0.0;
                let mut scratch = vec![0.0; nbx * nby];
                for ey in 0..ney {
                    // Reuse the load kernel with a unit test function: the sum of
                    // all local entries is ∫ f Σ B = ∫ f.
                    scratch.fill(0.0);
                    self.element_load(
                        ex,
                        ey,
                        fields,
                        &|q: &QuadPoint| Integrand::volumetric(f(q)),
                        &mut scratch,
                    );
                    sum += scratch.iter().sum::<f64>();
                }
                sum
            })
            .collect();
        Ok(partial.iter().sum())
    }
}

/// Static fuel availability `η` tabulated at every quadrature point.
#[derive(Debug, Clone)]
pub struct AvailabilityTable {
    values: Vec<f64>,
}

impl AvailabilityTable {
    pub fn from_map(disc: &Discretization, map: &FuelMap) -> Result<Self> {
        let (a, b) = disc.space_x().domain();
        let (c, d) = disc.space_y().domain();
        let values = disc
            .quad_positions()
            .iter()
            .map(|&[x, y]| map.sample(x, y, [a, b, c, d]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    pub fn uniform(disc: &Discretization, eta: f64) -> Self {
        let (nx, ny) = disc.quad_counts();
        Self {
            values: vec![eta; nx * ny],
        }
    }

    pub fn at(&self, index: usize) -> f64 {
        self.values[index]
    }
}

/// Explicit part of the temperature equation, integrated against test functions.
#[derive(Clone)]
pub struct SourceModel {
    pub params: ModelParams,
    pub coeffs: DerivedCoeffs,
    /// Include combustion, T⁴ radiation, nonlinear radiative diffusion and the
    /// constant ambient forcing.
    pub nonlinear: bool,
    pub availability: Option<Arc<AvailabilityTable>>,
    /// Additional prescribed source `f(x, y, t)`, e.g. a manufactured forcing.
    pub extra: Option<PointSource>,
}

impl std::fmt::Debug for SourceModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SourceModel")
            .field("coeffs", &self.coeffs)
            .field("nonlinear", &self.nonlinear)
            .field("availability", &self.availability.is_some())
            .field("extra", &self.extra.is_some())
            .finish()
    }
}

impl SourceModel {
    pub fn physical(params: ModelParams) -> Self {
        let coeffs = params.coefficients();
        Self {
            params,
            coeffs,
            nonlinear: true,
            availability: None,
            extra: None,
        }
    }

    /// Linear operator coefficients only; the explicit forcing is zero unless
    /// an `extra` source is attached.
    pub fn linear(coeffs: DerivedCoeffs) -> Self {
        Self {
            params: ModelParams::default(),
            coeffs,
            nonlinear: false,
            availability: None,
            extra: None,
        }
    }

    pub fn with_extra(mut self, f: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.extra = Some(Arc::new(f));
        self
    }

    pub fn is_time_dependent(&self) -> bool {
        self.extra.is_some()
    }

    fn eta(&self, index: usize) -> f64 {
        self.availability.as_ref().map_or(1.0, |a| a.at(index))
    }

    /// Pointwise integrand of the explicit forcing `F`.
    pub fn integrand(&self, q: &QuadPoint, t: f64) -> Integrand {
        let mut out = Integrand::default();
        if self.nonlinear {
            let c = &self.coeffs;
            let temp = q.fields[0];
            let fuel = q.fields[1].value;
            let u = temp.value;
            let eta = self.eta(q.index);
            let ignition = c.ignition * eta * unit_rate(u, fuel * eta, &self.params);
            out.volumetric = ignition + c.forcing - c.radiation * u.powi(4);
            let k = -c.nonlinear_diffusion * u * u * u;
            out.flux = [k * temp.grad[0], k * temp.grad[1]];
        }
        if let Some(f) = &self.extra {
            out.volumetric += f(q.pos[0], q.pos[1], t);
        }
        out
    }
}

/// Assembles the unweighted explicit forcing vector `F(T, fuel, t)`.
pub fn assemble_forcing(
    disc: &Discretization,
    temperature: &CoefficientGrid,
    fuel: &CoefficientGrid,
    source: &SourceModel,
    t: f64,
) -> Result<RhsGrid> {
    disc.assemble(&[temperature, fuel], |q| source.integrand(q, t))
}

/// One explicit Euler step of fuel consumption, projected back onto the
/// spline space. Coefficients are clamped to `[0, min(1, previous)]`, so fuel
/// never grows.
pub fn update_fuel(
    disc: &Discretization,
    fuel: &CoefficientGrid,
    temperature: &CoefficientGrid,
    tau: f64,
    source: &SourceModel,
) -> Result<CoefficientGrid> {
    let params = &source.params;
    let mut rhs = disc.assemble(&[temperature, fuel], |q| {
        let u = q.fields[0].value;
        let f = q.fields[1].value;
        let eta = source.eta(q.index);
        let rate = eta * params.a_r * unit_rate(u, f * eta, params);
        Integrand::volumetric(f - tau * params.fuel_rate * rate * f)
    })?;
    disc.mass_solve(&mut rhs)?;
    for (new, &old) in rhs.values_mut().iter_mut().zip(fuel.values()) {
        *new = new.clamp(0.0, old.clamp(0.0, 1.0));
    }
    Ok(rhs)
}
