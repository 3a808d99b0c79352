//! Physical parameters of the reduced energy-balance model, the normalized
//! coefficients used by the time integrators, and pointwise source terms.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Physical constants and empirical coefficients of the fire model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Specific heat capacity, J/(kg K).
    pub c_p: f64,
    /// Gas density, kg/m^3.
    pub rho: f64,
    /// Thermal conductivity, W/(m K).
    pub kappa: f64,
    /// Stefan–Boltzmann constant, W/(m^2 K^4).
    pub sigma: f64,
    pub emissivity: f64,
    /// Enthalpy correction coefficient.
    pub c_h: f64,
    /// Specific combustion enthalpy, J/kg. Negative.
    pub h_c: f64,
    /// Wind reduction coefficient.
    pub c_w: f64,
    /// Convective heat transfer coefficient, W/(m^2 K).
    pub chi: f64,
    pub t_amb: f64,
    pub t_ig: f64,
    /// Radiative absorption length, m.
    pub delta_x: f64,
    /// Vertical emission length, m.
    pub delta_z: f64,
    /// Arrhenius prefactor, 1/s.
    pub a_r: f64,
    /// Activation temperature, K.
    pub t_a: f64,
    /// Molar mass ratio M / M1.
    pub molar_ratio: f64,
    pub combustion_scale: f64,
    /// Fuel consumption per unit reaction rate.
    pub fuel_rate: f64,
    /// Minimum fuel availability for combustion.
    pub fuel_threshold: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        let emissivity = 0.05;
        Self {
            c_p: 1.0,
            rho: 1.293,
            kappa: 0.3,
            sigma: 5.67e-8,
            emissivity,
            c_h: 1.0,
            h_c: -70.0,
            c_w: 0.5,
            chi: 2e-2,
            t_amb: 300.0,
            t_ig: 800.0,
            delta_x: 3.5e-2 / emissivity,
            delta_z: 1.5 * emissivity,
            a_r: 1.0,
            t_a: 300.0,
            molar_ratio: 1.0,
            combustion_scale: 1e4,
            fuel_rate: 3e2,
            fuel_threshold: 0.2,
        }
    }
}

impl ModelParams {
    /// Names accepted by [`ModelParams::set`], in serialization order.
    pub const KEYS: [&'static str; 19] = [
        "c_p",
        "rho",
        "kappa",
        "sigma",
        "emissivity",
        "c_h",
        "h_c",
        "c_w",
        "chi",
        "t_amb",
        "t_ig",
        "delta_x",
        "delta_z",
        "a_r",
        "t_a",
        "molar_ratio",
        "combustion_scale",
        "fuel_rate",
        "fuel_threshold",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "c_p" => &mut self.c_p,
            "rho" => &mut self.rho,
            "kappa" => &mut self.kappa,
            "sigma" => &mut self.sigma,
            "emissivity" => &mut self.emissivity,
            "c_h" => &mut self.c_h,
            "h_c" => &mut self.h_c,
            "c_w" => &mut self.c_w,
            "chi" => &mut self.chi,
            "t_amb" => &mut self.t_amb,
            "t_ig" => &mut self.t_ig,
            "delta_x" => &mut self.delta_x,
            "delta_z" => &mut self.delta_z,
            "a_r" => &mut self.a_r,
            "t_a" => &mut self.t_a,
            "molar_ratio" => &mut self.molar_ratio,
            "combustion_scale" => &mut self.combustion_scale,
            "fuel_rate" => &mut self.fuel_rate,
            "fuel_threshold" => &mut self.fuel_threshold,
            _ => return None,
        })
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot(key).map(|v| *v)
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match self.slot(key) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::config(format!("unknown model parameter {key:?}"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("c_p", self.c_p),
            ("rho", self.rho),
            ("kappa", self.kappa),
            ("sigma", self.sigma),
            ("t_amb", self.t_amb),
            ("t_ig", self.t_ig),
            ("delta_x", self.delta_x),
            ("delta_z", self.delta_z),
            ("t_a", self.t_a),
            ("molar_ratio", self.molar_ratio),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        let non_negative = [
            ("c_h", self.c_h),
            ("c_w", self.c_w),
            ("chi", self.chi),
            ("a_r", self.a_r),
            ("combustion_scale", self.combustion_scale),
            ("fuel_rate", self.fuel_rate),
            ("fuel_threshold", self.fuel_threshold),
        ];
        for (name, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::config(format!("{name} must be non-negative, got {v}")));
            }
        }
        if !(self.emissivity > 0.0 && self.emissivity <= 1.0) {
            return Err(Error::config("emissivity must lie in (0, 1]"));
        }
        if !(self.h_c < 0.0) {
            return Err(Error::config("combustion enthalpy h_c must be negative"));
        }
        Ok(())
    }

    /// Heat capacity per unit volume, `ρ c_p`.
    pub fn heat_capacity(&self) -> f64 {
        self.rho * self.c_p
    }

    pub fn coefficients(&self) -> DerivedCoeffs {
        DerivedCoeffs::from_params(self)
    }
}

/// Coefficients of the temperature equation after division by `ρ c_p`:
///
/// ```text
/// T_t + C_adv b·∇T − C_diff ΔT − C_react T
///     = ∇·(C_nl T³ ∇T) + C_ign η 1[T > T_ig, fuel > thr] T exp(−T_a/T) + C_forcing − C_rad T⁴
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoeffs {
    pub diffusion: f64,
    pub advection: f64,
    /// Negative: the left-hand side carries `−C_react T`, a decay.
    pub reaction: f64,
    pub radiation: f64,
    pub nonlinear_diffusion: f64,
    pub forcing: f64,
    pub ignition: f64,
}

impl DerivedCoeffs {
    pub fn from_params(p: &ModelParams) -> Self {
        let rc = p.heat_capacity();
        let se = p.sigma * p.emissivity;
        Self {
            diffusion: p.kappa / rc,
            advection: p.c_w,
            reaction: -p.chi / rc,
            radiation: se / (p.delta_z * rc),
            nonlinear_diffusion: 4.0 * se * p.delta_x / rc,
            forcing: (p.chi * p.t_amb + se * p.t_amb.powi(4) / p.delta_z) / rc,
            ignition: -p.combustion_scale * p.c_h * p.h_c * p.molar_ratio * p.a_r / p.c_p,
        }
    }

    /// All coefficients zero: a pure mass system.
    pub fn zero() -> Self {
        Self {
            diffusion: 0.0,
            advection: 0.0,
            reaction: 0.0,
            radiation: 0.0,
            nonlinear_diffusion: 0.0,
            forcing: 0.0,
            ignition: 0.0,
        }
    }
}

/// Ignition-gated Arrhenius rate `1[T > T_ig ∧ fuel > thr] · A_r · T · exp(−T_a / T)`.
pub fn reaction_rate(t: f64, fuel: f64, params: &ModelParams) -> f64 {
    if t > params.t_ig && fuel > params.fuel_threshold {
        params.a_r * t * (-params.t_a / t).exp()
    } else {
        0.0
    }
}

/// Same as [`reaction_rate`] with `A_r = 1`.
pub(crate) fn unit_rate(t: f64, fuel: f64, params: &ModelParams) -> f64 {
    if t > params.t_ig && fuel > params.fuel_threshold {
        t * (-params.t_a / t).exp()
    } else {
        0.0
    }
}

/// Temperature value and gradient at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPoint {
    pub value: f64,
    pub grad: [f64; 2],
}

/// Integrand pieces of the energy balance at one point, in physical units:
/// `volumetric` multiplies the test function and `flux` its gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceContribution {
    pub volumetric: f64,
    pub flux: [f64; 2],
}

/// Full right-hand side of the energy balance at one point: combustion scaled
/// by the static availability `eta`, wind transport, Newton cooling, vertical
/// radiation, and the conductive plus radiative horizontal flux.
pub fn source_terms(t: FieldPoint, fuel: f64, eta: f64, wind: [f64; 2], params: &ModelParams) -> SourceContribution {
    let p = params;
    let r = eta * reaction_rate(t.value, fuel * eta, p);
    let r_c = -p.combustion_scale * p.rho * p.c_h * p.h_c * p.molar_ratio * r;
    let q_w = -p.rho * p.c_w * p.c_p * (wind[0] * t.grad[0] + wind[1] * t.grad[1]);
    let q_conv = p.chi * (p.t_amb - t.value);
    let q_rz = p.sigma * p.emissivity / p.delta_z * (p.t_amb.powi(4) - t.value.powi(4));
    let conductivity = p.kappa + 4.0 * p.sigma * p.emissivity * p.delta_x * t.value.powi(3);
    SourceContribution {
        volumetric: r_c + q_w + q_conv + q_rz,
        flux: [-conductivity * t.grad[0], -conductivity * t.grad[1]],
    }
}

/// One constant wind vector over `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindSegment {
    pub start: f64,
    pub end: f64,
    pub velocity: [f64; 2],
}

/// Spatially uniform wind velocity, m/s, as a function of time.
#[derive(Clone)]
pub enum WindField {
    Constant([f64; 2]),
    Schedule(Vec<WindSegment>),
    Function(Arc<dyn Fn(f64) -> [f64; 2] + Send + Sync>),
}

impl fmt::Debug for WindField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindField::Constant(b) => f.debug_tuple("Constant").field(b).finish(),
            WindField::Schedule(s) => f.debug_tuple("Schedule").field(s).finish(),
            WindField::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl PartialEq for WindField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (WindField::Constant(a), WindField::Constant(b)) => a == b,
            (WindField::Schedule(a), WindField::Schedule(b)) => a == b,
            _ => false,
        }
    }
}

impl Default for WindField {
    fn default() -> Self {
        WindField::Constant([0.0, 0.0])
    }
}

impl WindField {
    pub fn calm() -> Self {
        Self::default()
    }

    /// Velocity at time `t`. Times past the last segment keep its velocity.
    pub fn at(&self, t: f64) -> [f64; 2] {
        match self {
            WindField::Constant(b) => *b,
            WindField::Schedule(segments) => segments
                .iter()
                .find(|s| t >= s.start && t < s.end)
                .or_else(|| segments.iter().rev().find(|s| t >= s.end))
                .or_else(|| segments.first())
                .map(|s| s.velocity)
                .unwrap_or([0.0, 0.0]),
            WindField::Function(f) => f(t),
        }
    }

    /// Checks that a schedule is ordered, gap-free and covers `[0, horizon]`.
    pub fn validate(&self, horizon: f64) -> Result<()> {
        let WindField::Schedule(segments) = self else {
            return Ok(());
        };
        let Some(first) = segments.first() else {
            return Err(Error::config("wind schedule has no segments"));
        };
        if first.start > 0.0 {
            return Err(Error::config("wind schedule must start at t = 0"));
        }
        for pair in segments.windows(2) {
            if (pair[1].start - pair[0].end).abs() > 1e-12 * pair[0].end.abs().max(1.0) {
                return Err(Error::config(format!(
                    "wind schedule gap or overlap at t = {}",
                    pair[0].end
                )));
            }
        }
        for s in segments {
            if !(s.end > s.start) || !s.velocity.iter().all(|v| v.is_finite()) {
                return Err(Error::config("invalid wind segment"));
            }
        }
        let last = segments.last().map(|s| s.end).unwrap_or(0.0);
        if last < horizon * (1.0 - 1e-12) {
            return Err(Error::config(format!(
                "wind schedule ends at {last} before the simulation horizon {horizon}"
            )));
        }
        Ok(())
    }
}
