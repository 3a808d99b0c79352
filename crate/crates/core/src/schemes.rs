//! Time integrators for the coupled temperature and fuel system.
//!
//! The linear part of the temperature equation is split by direction,
//!
//! ```text
//! A_x = C_diff K_x + C_adv b_x G_xᵀ − C_react M_x
//! A_y = C_diff K_y + C_adv b_y G_yᵀ
//! ```
//!
//! so that the semi-discrete system reads
//! `(M_x⊗M_y) T' = −(A_x⊗M_y + M_x⊗A_y) T + F(T, fuel, t)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::ThreadPool;

use crate::assembly::{assemble_forcing, update_fuel, Discretization, RhsGrid, SourceModel};
use crate::error::{Error, Result};
use crate::kron::{kron_apply, kron_solve, CoefficientGrid};
use crate::operators1d::{BandedLu, BandedMatrix};
use crate::physics::WindField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Explicit,
    PeacemanRachford,
    StrangCN,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [SchemeKind::Explicit, SchemeKind::PeacemanRachford, SchemeKind::StrangCN];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Explicit => "explicit",
            SchemeKind::PeacemanRachford => "pr",
            SchemeKind::StrangCN => "strang",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "explicit" | "euler" => Ok(SchemeKind::Explicit),
            "pr" | "peaceman-rachford" | "peaceman_rachford" | "adi" => Ok(SchemeKind::PeacemanRachford),
            "strang" | "strang-cn" | "strang_cn" | "cn" => Ok(SchemeKind::StrangCN),
            other => Err(Error::config(format!(
                "unknown scheme {other:?} (expected explicit, pr or strang)"
            ))),
        }
    }
}

/// Temperature and fuel coefficients at a time level.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub temperature: CoefficientGrid,
    pub fuel: CoefficientGrid,
    pub time: f64,
    pub step: usize,
}

impl State {
    pub fn new(temperature: CoefficientGrid, fuel: CoefficientGrid) -> Result<Self> {
        if temperature.dims() != fuel.dims() {
            return Err(Error::DimensionMismatch {
                expected: temperature.values().len(),
                actual: fuel.values().len(),
            });
        }
        Ok(Self {
            temperature,
            fuel,
            time: 0.0,
            step: 0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepOutcome {
    /// The new temperature has non-finite entries or exceeds the divergence limit.
    pub diverged: bool,
    /// Direction operators were refactored for this step.
    pub rebuilt: bool,
}

/// Factored left and unfactored right operators of one scheme for fixed `τ`
/// and wind.
#[derive(Debug, Clone)]
struct DirectionOperators {
    tau: f64,
    wind: [f64; 2],
    x_left: Option<BandedLu>,
    x_right: BandedMatrix,
    y_left: Option<BandedLu>,
    y_right: BandedMatrix,
}

pub struct Integrator {
    disc: Arc<Discretization>,
    source: SourceModel,
    wind: WindField,
    scheme: SchemeKind,
    /// Advance the fuel field after each temperature step.
    pub evolve_fuel: bool,
    /// Temperatures beyond this magnitude count as divergence.
    pub divergence_limit: f64,
    ops: Option<DirectionOperators>,
    pool: Option<Arc<ThreadPool>>,
}

impl fmt::Debug for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrator")
            .field("scheme", &self.scheme)
            .field("dofs", &self.disc.dofs())
            .field("source", &self.source)
            .field("wind", &self.wind)
            .field("evolve_fuel", &self.evolve_fuel)
            .finish()
    }
}

impl Integrator {
    pub fn new(disc: Arc<Discretization>, source: SourceModel, wind: WindField, scheme: SchemeKind) -> Self {
        Self {
            disc,
            source,
            wind,
            scheme,
            evolve_fuel: true,
            divergence_limit: f64::INFINITY,
            ops: None,
            pool: None,
        }
    }

    /// Runs every step inside `pool`, which bounds the worker count.
    pub fn with_pool(mut self, pool: Arc<ThreadPool>) -> Self {
        self.pool = Some(pool);
        self
    }

    pub fn with_threads(self, threads: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
        Ok(self.with_pool(Arc::new(pool)))
    }

    pub fn scheme(&self) -> SchemeKind {
        self.scheme
    }

    pub fn discretization(&self) -> &Arc<Discretization> {
        &self.disc
    }

    pub fn source(&self) -> &SourceModel {
        &self.source
    }

    /// Advances `state` by `tau`. On divergence the state still holds the
    /// offending values and the outcome is flagged.
    pub fn step(&mut self, state: &mut State, tau: f64) -> Result<StepOutcome> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::config(format!("time step must be positive, got {tau}")));
        }
        match self.pool.clone() {
            Some(pool) => pool.install(|| self.step_inner(state, tau)),
            None => self.step_inner(state, tau),
        }
    }

    fn step_inner(&mut self, state: &mut State, tau: f64) -> Result<StepOutcome> {
        let wind = self.wind.at(state.time + 0.5 * tau);
        let rebuilt = self.prepare(tau, wind)?;
        let t_new = match self.scheme {
            SchemeKind::Explicit => self.step_explicit(state, tau)?,
            SchemeKind::PeacemanRachford => self.step_peaceman_rachford(state, tau)?,
            SchemeKind::StrangCN => self.step_strang_cn(state, tau)?,
        };
        let limit = self.divergence_limit;
        let diverged = t_new.values().iter().any(|v| !v.is_finite() || v.abs() > limit);
        if self.evolve_fuel && !diverged {
            state.fuel = update_fuel(&self.disc, &state.fuel, &state.temperature, tau, &self.source)?;
        }
        state.temperature = t_new;
        state.time += tau;
        state.step += 1;
        Ok(StepOutcome { diverged, rebuilt })
    }

    fn forcing(&self, temperature: &CoefficientGrid, fuel: &CoefficientGrid, t: f64) -> Result<RhsGrid> {
        assemble_forcing(&self.disc, temperature, fuel, &self.source, t)
    }

    /// `M + s·A` along x (with reaction) or y.
    fn x_operator(&self, s: f64, wind: [f64; 2]) -> Result<BandedMatrix> {
        let c = &self.source.coeffs;
        self.disc
            .dir_x
            .form(s * c.diffusion, s * c.advection * wind[0], -s * c.reaction)
    }

    fn y_operator(&self, s: f64, wind: [f64; 2]) -> Result<BandedMatrix> {
        let c = &self.source.coeffs;
        self.disc.dir_y.form(s * c.diffusion, s * c.advection * wind[1], 0.0)
    }

    fn prepare(&mut self, tau: f64, wind: [f64; 2]) -> Result<bool> {
        if let Some(ops) = &self.ops {
            if ops.tau == tau && ops.wind == wind {
                return Ok(false);
            }
        }
        let ops = match self.scheme {
            SchemeKind::Explicit => DirectionOperators {
                tau,
                wind,
                x_left: None,
                x_right: self.x_operator(-tau, wind)?,
                y_left: None,
                // Plain A_y: its product with M_x is subtracted separately.
                y_right: self.y_operator(1.0, wind)?.add_scaled(-1.0, &self.disc.dir_y.mass)?,
            },
            SchemeKind::PeacemanRachford => {
                let w = 0.5 * tau;
                DirectionOperators {
                    tau,
                    wind,
                    x_left: Some(self.x_operator(w, wind)?.factor()?),
                    x_right: self.x_operator(-w, wind)?,
                    y_left: Some(self.y_operator(w, wind)?.factor()?),
                    y_right: self.y_operator(-w, wind)?,
                }
            }
            SchemeKind::StrangCN => {
                let wx = 0.25 * tau;
                let wy = 0.5 * tau;
                DirectionOperators {
                    tau,
                    wind,
                    x_left: Some(self.x_operator(wx, wind)?.factor()?),
                    x_right: self.x_operator(-wx, wind)?,
                    y_left: Some(self.y_operator(wy, wind)?.factor()?),
                    y_right: self.y_operator(-wy, wind)?,
                }
            }
        };
        log::debug!("{} operators rebuilt for tau={tau} wind={wind:?}", self.scheme);
        self.ops = Some(ops);
        Ok(true)
    }

    fn ops(&self) -> &DirectionOperators {
        self.ops.as_ref().expect("operators prepared before stepping")
    }

    /// `(M_x⊗M_y) T_{n+1} = ((M_x − τA_x)⊗M_y − τ M_x⊗A_y) T_n + τ F(T_n, t_n)`.
    fn step_explicit(&self, state: &State, tau: f64) -> Result<CoefficientGrid> {
        let ops = self.ops();
        let (mx, my) = (&self.disc.dir_x.mass, &self.disc.dir_y.mass);
        let t = &state.temperature;
        let mut rhs = kron_apply(&ops.x_right, my, t)?;
        rhs.axpy(-tau, &kron_apply(mx, &ops.y_right, t)?);
        rhs.axpy(tau, &self.forcing(t, &state.fuel, state.time)?);
        self.disc.mass_solve(&mut rhs)?;
        Ok(rhs)
    }

    fn step_peaceman_rachford(&self, state: &State, tau: f64) -> Result<CoefficientGrid> {
        let ops = self.ops();
        let (mx, my) = (&self.disc.dir_x.mass, &self.disc.dir_y.mass);
        let (lu_mx, lu_my) = self.disc.mass_lu();
        let f = self.forcing(&state.temperature, &state.fuel, state.time + 0.5 * tau)?;

        let mut rhs = kron_apply(mx, &ops.y_right, &state.temperature)?;
        rhs.axpy(0.5 * tau, &f);
        let half = kron_solve(left(&ops.x_left), lu_my, &rhs)?;

        let mut rhs = kron_apply(&ops.x_right, my, &half)?;
        rhs.axpy(0.5 * tau, &f);
        kron_solve(lu_mx, left(&ops.y_left), &rhs)
    }

    fn step_strang_cn(&self, state: &State, tau: f64) -> Result<CoefficientGrid> {
        let ops = self.ops();
        let (mx, my) = (&self.disc.dir_x.mass, &self.disc.dir_y.mass);
        let (lu_mx, lu_my) = self.disc.mass_lu();
        let t0 = state.time;
        let f0 = self.forcing(&state.temperature, &state.fuel, t0)?;
        let fh = if self.source.is_time_dependent() {
            self.forcing(&state.temperature, &state.fuel, t0 + 0.5 * tau)?
        } else {
            f0.clone()
        };

        let mut rhs = kron_apply(&ops.x_right, my, &state.temperature)?;
        rhs.axpy(0.25 * tau, &fh);
        rhs.axpy(0.25 * tau, &f0);
        let first = kron_solve(left(&ops.x_left), lu_my, &rhs)?;

        let rhs = kron_apply(mx, &ops.y_right, &first)?;
        let second = kron_solve(lu_mx, left(&ops.y_left), &rhs)?;

        let f1 = self.forcing(&second, &state.fuel, t0 + tau)?;
        let mut rhs = kron_apply(&ops.x_right, my, &second)?;
        rhs.axpy(0.25 * tau, &f1);
        rhs.axpy(0.25 * tau, &fh);
        kron_solve(left(&ops.x_left), lu_my, &rhs)
    }
}

fn left(lu: &Option<BandedLu>) -> &BandedLu {
    lu.as_ref().expect("implicit scheme has factored left operators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::DerivedCoeffs;

    fn disc(p: usize, n: usize) -> Arc<Discretization> {
        Arc::new(Discretization::square(p, n, 0.0, 100.0).unwrap())
    }

    fn linear(coeffs: DerivedCoeffs) -> SourceModel {
        SourceModel::linear(coeffs)
    }

    fn state(d: &Discretization, f: impl FnMut(usize, usize) -> f64) -> State {
        let (nx, ny) = d.dofs();
        State::new(CoefficientGrid::from_fn(nx, ny, f), d.constant(1.0)).unwrap()
    }

    #[test]
    fn scheme_names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(k.name().parse::<SchemeKind>().unwrap(), k);
        }
        assert!("rk4".parse::<SchemeKind>().is_err());
    }

    #[test]
    fn zero_coefficients_are_identity() {
        let d = disc(2, 5);
        for k in SchemeKind::ALL {
            let mut it = Integrator::new(d.clone(), linear(DerivedCoeffs::zero()), WindField::calm(), k);
            let mut s = state(&d, |i, j| (i * 7 + j * 3) as f64 * 0.1);
            let before = s.temperature.clone();
            let out = it.step(&mut s, 0.5).unwrap();
            assert!(!out.diverged);
            assert!(s.temperature.max_abs_diff(&before) < 1e-12, "{k}");
            assert_eq!(s.step, 1);
            assert_eq!(s.time, 0.5);
        }
    }

    #[test]
    fn explicit_reaction_matches_scalar_forward_euler() {
        let d = disc(2, 4);
        let c = DerivedCoeffs {
            reaction: -0.3,
            ..DerivedCoeffs::zero()
        };
        let mut it = Integrator::new(d.clone(), linear(c), WindField::calm(), SchemeKind::Explicit);
        let mut s = state(&d, |_, _| 2.0);
        it.step(&mut s, 0.1).unwrap();
        let expect = 2.0 * (1.0 - 0.1 * 0.3);
        assert!(s.temperature.values().iter().all(|v| (v - expect).abs() < 1e-10));
    }

    #[test]
    fn constants_preserved_by_diffusion_and_advection() {
        let d = disc(2, 6);
        let c = DerivedCoeffs {
            diffusion: 0.4,
            advection: 0.5,
            ..DerivedCoeffs::zero()
        };
        for k in SchemeKind::ALL {
            let mut it = Integrator::new(d.clone(), linear(c), WindField::Constant([0.0, 0.0]), k);
            let mut s = state(&d, |_, _| 417.0);
            for _ in 0..3 {
                it.step(&mut s, 0.25).unwrap();
            }
            assert!(s.temperature.values().iter().all(|v| (v - 417.0).abs() < 1e-9), "{k}");
        }
    }

    #[test]
    fn operators_cached_until_tau_or_wind_changes() {
        let d = disc(1, 4);
        let wind = WindField::Schedule(vec![
            crate::physics::WindSegment {
                start: 0.0,
                end: 1.0,
                velocity: [1.0, 0.0],
            },
            crate::physics::WindSegment {
                start: 1.0,
                end: 10.0,
                velocity: [0.0, 1.0],
            },
        ]);
        let c = DerivedCoeffs {
            advection: 0.5,
            diffusion: 0.1,
            ..DerivedCoeffs::zero()
        };
        let mut it = Integrator::new(d.clone(), linear(c), wind, SchemeKind::PeacemanRachford);
        let mut s = state(&d, |i, _| i as f64);
        let rebuilt: Vec<bool> = (0..4).map(|_| it.step(&mut s, 0.5).unwrap().rebuilt).collect();
        assert_eq!(rebuilt, vec![true, false, true, false]);
        assert!(it.step(&mut s, 0.25).unwrap().rebuilt);
    }

    #[test]
    fn divergence_is_flagged() {
        let d = disc(1, 3);
        let c = DerivedCoeffs {
            reaction: 1e3,
            ..DerivedCoeffs::zero()
        };
        let mut it = Integrator::new(d.clone(), linear(c), WindField::calm(), SchemeKind::Explicit);
        it.divergence_limit = 1e6;
        let mut s = state(&d, |_, _| 1.0);
        let mut flagged = false;
        for _ in 0..10 {
            if it.step(&mut s, 1.0).unwrap().diverged {
                flagged = true;
                break;
            }
        }
        assert!(flagged);
    }

    #[test]
    fn rejects_bad_tau() {
        let d = disc(1, 3);
        let mut it = Integrator::new(
            d.clone(),
            linear(DerivedCoeffs::zero()),
            WindField::calm(),
            SchemeKind::StrangCN,
        );
        let mut s = state(&d, |_, _| 1.0);
        assert!(it.step(&mut s, 0.0).is_err());
        assert!(it.step(&mut s, f64::NAN).is_err());
    }

    // Dense oracle helpers over the full tensor space.

    fn dense_kron(a: &[f64], na: usize, b: &[f64], nb: usize) -> Vec<f64> {
        let n = na * nb;
        let mut k = vec![0.0; n * n];
        for i in 0..na {
            for p in 0..na {
                for j in 0..nb {
                    for q in 0..nb {
                        k[(i * nb + j) * n + p * nb + q] = a[i * na + p] * b[j * nb + q];
                    }
                }
            }
        }
        k
    }

    fn dense_axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + s * y).collect()
    }

    fn matvec(a: &[f64], x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n).map(|r| (0..n).map(|c| a[r * n + c] * x[c]).sum()).collect()
    }

    fn dense_solve(a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut m = a.to_vec();
        let mut x = b.to_vec();
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs()))
                .unwrap();
            for k in 0..n {
                m.swap(c * n + k, p * n + k);
            }
            x.swap(c, p);
            for r in c + 1..n {
                let f = m[r * n + c] / m[c * n + c];
                for k in c..n {
                    m[r * n + k] -= f * m[c * n + k];
                }
                x[r] -= f * x[c];
            }
        }
        for c in (0..n).rev() {
            let s: f64 = (c + 1..n).map(|k| m[c * n + k] * x[k]).sum();
            x[c] = (x[c] - s) / m[c * n + c];
        }
        x
    }

    struct Dense {
        n: usize,
        mx: Vec<f64>,
        my: Vec<f64>,
        ax: Vec<f64>,
        ay: Vec<f64>,
    }

    fn dense_parts(d: &Discretization, c: &DerivedCoeffs, wind: [f64; 2]) -> Dense {
        let (dx, dy) = (&d.dir_x, &d.dir_y);
        let n = dx.mass.n();
        let mut ax: Vec<f64> = dx.stiffness.to_dense().iter().map(|v| v * c.diffusion).collect();
        let gxt = dx.advection.transpose().to_dense();
        ax = dense_axpy(&ax, c.advection * wind[0], &gxt);
        ax = dense_axpy(&ax, -c.reaction, &dx.mass.to_dense());
        let mut ay: Vec<f64> = dy.stiffness.to_dense().iter().map(|v| v * c.diffusion).collect();
        ay = dense_axpy(&ay, c.advection * wind[1], &dy.advection.transpose().to_dense());
        Dense {
            n,
            mx: dx.mass.to_dense(),
            my: dy.mass.to_dense(),
            ax,
            ay,
        }
    }

    fn oracle_setup() -> (Arc<Discretization>, DerivedCoeffs, [f64; 2], State) {
        // p = 1 with three elements gives four functions per direction.
        let d = disc(1, 3);
        let c = DerivedCoeffs {
            diffusion: 30.0,
            advection: 0.5,
            reaction: -0.2,
            ..DerivedCoeffs::zero()
        };
        let s = state(&d, |i, j| 300.0 + 50.0 * (i as f64) - 20.0 * (j as f64 * j as f64));
        (d, c, [2.0, -3.0], s)
    }

    #[test]
    fn peaceman_rachford_matches_dense_oracle() {
        let (d, c, wind, mut s) = oracle_setup();
        let tau = 0.7;
        let g = dense_parts(&d, &c, wind);
        let n = g.n;
        let x0 = s.temperature.values().to_vec();
        let lhs1 = dense_kron(&dense_axpy(&g.mx, 0.5 * tau, &g.ax), n, &g.my, n);
        let rhs1 = dense_kron(&g.mx, n, &dense_axpy(&g.my, -0.5 * tau, &g.ay), n);
        let half = dense_solve(&lhs1, &matvec(&rhs1, &x0));
        let lhs2 = dense_kron(&g.mx, n, &dense_axpy(&g.my, 0.5 * tau, &g.ay), n);
        let rhs2 = dense_kron(&dense_axpy(&g.mx, -0.5 * tau, &g.ax), n, &g.my, n);
        let oracle = dense_solve(&lhs2, &matvec(&rhs2, &half));

        let mut it = Integrator::new(d, linear(c), WindField::Constant(wind), SchemeKind::PeacemanRachford);
        it.step(&mut s, tau).unwrap();
        for (a, b) in s.temperature.values().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn strang_matches_dense_substeps() {
        let (d, c, wind, mut s) = oracle_setup();
        let tau = 0.4;
        let g = dense_parts(&d, &c, wind);
        let n = g.n;
        let x0 = s.temperature.values().to_vec();
        let xl = dense_kron(&dense_axpy(&g.mx, 0.25 * tau, &g.ax), n, &g.my, n);
        let xr = dense_kron(&dense_axpy(&g.mx, -0.25 * tau, &g.ax), n, &g.my, n);
        let yl = dense_kron(&g.mx, n, &dense_axpy(&g.my, 0.5 * tau, &g.ay), n);
        let yr = dense_kron(&g.mx, n, &dense_axpy(&g.my, -0.5 * tau, &g.ay), n);
        let a = dense_solve(&xl, &matvec(&xr, &x0));
        let b = dense_solve(&yl, &matvec(&yr, &a));
        let oracle = dense_solve(&xl, &matvec(&xr, &b));

        let mut it = Integrator::new(d, linear(c), WindField::Constant(wind), SchemeKind::StrangCN);
        it.step(&mut s, tau).unwrap();
        for (a, b) in s.temperature.values().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn explicit_matches_dense_oracle_with_forcing() {
        let (d, c, wind, mut s) = oracle_setup();
        let tau = 0.05;
        let g = dense_parts(&d, &c, wind);
        let n = g.n;
        let source = linear(c).with_extra(|x, y, t| 1.0 + 0.01 * x - 0.02 * y + t);
        let f = assemble_forcing(&d, &s.temperature, &s.fuel, &source, 0.0).unwrap();
        let x0 = s.temperature.values().to_vec();
        let mass = dense_kron(&g.mx, n, &g.my, n);
        let op = dense_axpy(&dense_kron(&g.ax, n, &g.my, n), 1.0, &dense_kron(&g.mx, n, &g.ay, n));
        let rhs = dense_axpy(
            &dense_axpy(&matvec(&mass, &x0), -tau, &matvec(&op, &x0)),
            tau,
            f.values(),
        );
        let oracle = dense_solve(&mass, &rhs);

        let mut it = Integrator::new(d, source, WindField::Constant(wind), SchemeKind::Explicit);
        it.step(&mut s, tau).unwrap();
        for (a, b) in s.temperature.values().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let d = disc(2, 12);
        let mut results = Vec::new();
        for threads in [1, 2, 8] {
            let src = SourceModel::physical(Default::default());
            let mut it = Integrator::new(d.clone(), src, WindField::Constant([1.0, 0.5]), SchemeKind::StrangCN)
                .with_threads(threads)
                .unwrap();
            let mut s = state(&d, |i, j| {
                if (5..9).contains(&i) && (5..9).contains(&j) {
                    1200.0
                } else {
                    300.0
                }
            });
            for _ in 0..2 {
                it.step(&mut s, 1e-3).unwrap();
            }
            results.push(s);
        }
        assert_eq!(results[0], results[1]);
        assert_eq!(results[0], results[2]);
    }
}
