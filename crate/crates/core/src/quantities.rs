//! Physical constants, material parameters, evaluation points and the
//! dimensionless variables used by every force formula.
//!
//! Everything is SI internally. The CLI converts from μm and eV at the boundary.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, CasimirError, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// One electron-volt in joules.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;
/// One micrometre in metres.
pub const MICROMETRE: f64 = 1e-6;

/// Temperature used when a run does not specify one, K.
pub const DEFAULT_TEMPERATURE: f64 = 300.0;
/// Plasma frequency of aluminium, eV (ħω_p).
pub const ALUMINIUM_PLASMA_EV: f64 = 12.5;
/// Smallest admissible ratio R/a for the proximity force approximation.
pub const MIN_RADIUS_RATIO: f64 = 100.0;

/// The three constants every formula is written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
}

impl PhysicalConstants {
    /// CODATA exact/recommended values.
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: SPEED_OF_LIGHT,
        k_b: BOLTZMANN,
    };

    /// Thermal time β = ħ/(k_B T).
    pub fn beta(&self, temperature: f64) -> Result<f64> {
        if !(temperature > 0.0) {
            return Err(domain(format!("beta needs T > 0, got {temperature}")));
        }
        Ok(self.hbar / (self.k_b * temperature))
    }
}

/// Permittivity law on the imaginary frequency axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaterialModel {
    /// Perfect reflector, ε = ∞ at every frequency.
    IdealMetal,
    /// ε(iξ) = 1 + ω_p²/ξ².
    Plasma { omega_p: f64 },
    /// ε(iξ) = 1 + ω_p²/(ξ(ξ+γ)).
    Drude { omega_p: f64, gamma: f64 },
    /// Frequency-independent ε₀ > 1.
    Dielectric { eps0: f64 },
}

impl MaterialModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        let m = MaterialModel::Plasma { omega_p };
        m.validate()?;
        Ok(m)
    }

    /// Plasma model from ħω_p given in eV.
    pub fn plasma_ev(hbar_omega_p_ev: f64) -> Result<Self> {
        Self::plasma(ev_to_angular_frequency(hbar_omega_p_ev))
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        let m = MaterialModel::Drude { omega_p, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn drude_ev(hbar_omega_p_ev: f64, hbar_gamma_ev: f64) -> Result<Self> {
        Self::drude(
            ev_to_angular_frequency(hbar_omega_p_ev),
            ev_to_angular_frequency(hbar_gamma_ev),
        )
    }

    pub fn dielectric(eps0: f64) -> Result<Self> {
        let m = MaterialModel::Dielectric { eps0 };
        m.validate()?;
        Ok(m)
    }

    /// Plasma model with ħω_p = 12.5 eV.
    pub fn aluminium() -> Self {
        MaterialModel::Plasma {
            omega_p: ev_to_angular_frequency(ALUMINIUM_PLASMA_EV),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MaterialModel::IdealMetal => Ok(()),
            MaterialModel::Plasma { omega_p } => positive("omega_p", omega_p),
            MaterialModel::Drude { omega_p, gamma } => {
                positive("omega_p", omega_p)?;
                if !(gamma >= 0.0) || !gamma.is_finite() {
                    return Err(domain(format!("gamma must be >= 0, got {gamma}")));
                }
                Ok(())
            }
            MaterialModel::Dielectric { eps0 } => {
                if !(eps0 > 1.0) || !eps0.is_finite() {
                    return Err(domain(format!("eps0 must be > 1, got {eps0}")));
                }
                Ok(())
            }
        }
    }

    pub fn plasma_frequency(&self) -> Option<f64> {
        match *self {
            MaterialModel::Plasma { omega_p } | MaterialModel::Drude { omega_p, .. } => Some(omega_p),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MaterialModel::IdealMetal => "ideal",
            MaterialModel::Plasma { .. } => "plasma",
            MaterialModel::Drude { .. } => "drude",
            MaterialModel::Dielectric { .. } => "dielectric",
        }
    }

    /// Fails for models whose finite-temperature force is not defined.
    pub fn ensure_finite_temperature_force(&self) -> Result<()> {
        match self {
            MaterialModel::Drude { .. } => Err(CasimirError::Indeterminate(
                "finite-temperature force requested with the Drude model".into(),
            )),
            _ => Ok(()),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Converts ħω in eV into ω in rad/s.
pub fn ev_to_angular_frequency(energy_ev: f64) -> f64 {
    energy_ev * ELECTRON_VOLT / HBAR
}

/// Geometry and thermal state of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvaluationPoint {
    /// Separation a (the mean separation a₀ when roughness is present), m.
    pub separation: f64,
    /// Temperature, K.
    pub temperature: f64,
    /// Sphere (lens) curvature radius, m.
    pub radius: Option<f64>,
}

impl EvaluationPoint {
    pub fn new(separation: f64, temperature: f64) -> Result<Self> {
        if !(separation > 0.0) || !separation.is_finite() {
            return Err(domain(format!("separation must be > 0, got {separation}")));
        }
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return Err(domain(format!("temperature must be >= 0, got {temperature}")));
        }
        Ok(EvaluationPoint {
            separation,
            temperature,
            radius: None,
        })
    }

    pub fn with_radius(self, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(domain(format!("radius must be > 0, got {radius}")));
        }
        if radius < MIN_RADIUS_RATIO * self.separation {
            return Err(CasimirError::Config(format!(
                "proximity force approximation needs R >= {MIN_RADIUS_RATIO} a \
                 (R = {radius:e} m, a = {:e} m)",
                self.separation
            )));
        }
        Ok(EvaluationPoint {
            radius: Some(radius),
            ..self
        })
    }

    /// Convenience constructor in micrometres and kelvin.
    pub fn micrometres(separation_um: f64, temperature: f64) -> Result<Self> {
        Self::new(separation_um * MICROMETRE, temperature)
    }

    pub fn at_separation(&self, separation: f64) -> Result<Self> {
        let p = EvaluationPoint::new(separation, self.temperature)?;
        match self.radius {
            Some(r) => p.with_radius(r),
            None => Ok(p),
        }
    }

    pub fn require_radius(&self) -> Result<f64> {
        self.radius
            .ok_or_else(|| CasimirError::Config("sphere-plate geometry needs a curvature radius".into()))
    }

    pub fn effective_temperature(&self) -> f64 {
        effective_temperature_unchecked(self.separation)
    }

    /// t = T_eff/T; `None` at T = 0.
    pub fn t(&self) -> Option<f64> {
        (self.temperature > 0.0).then(|| self.effective_temperature() / self.temperature)
    }

    pub fn require_t(&self) -> Result<f64> {
        self.t()
            .ok_or_else(|| domain("operation needs T > 0 (t is infinite at T = 0)"))
    }

    pub fn dimensionless(&self, model: &MaterialModel) -> Result<DimensionlessState> {
        let t = self.require_t()?;
        let delta_ratio = match model {
            MaterialModel::IdealMetal => 0.0,
            _ => penetration_ratio(model, self.separation)?,
        };
        Ok(DimensionlessState { t, delta_ratio })
    }
}

/// Dimensionless parameters of a finite-temperature evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessState {
    /// t = T_eff/T.
    pub t: f64,
    /// δ₀/a.
    pub delta_ratio: f64,
}

impl DimensionlessState {
    /// x_l = 2aξ_l/c = 2πl/t.
    pub fn matsubara_x(&self, l: u64) -> f64 {
        2.0 * PI * l as f64 / self.t
    }
}

/// T_eff with k_B T_eff = ħc/(2a).
pub fn effective_temperature(separation: f64) -> Result<f64> {
    if !(separation > 0.0) {
        return Err(domain(format!("separation must be > 0, got {separation}")));
    }
    Ok(effective_temperature_unchecked(separation))
}

fn effective_temperature_unchecked(separation: f64) -> f64 {
    HBAR * SPEED_OF_LIGHT / (2.0 * separation * BOLTZMANN)
}

/// Penetration depth δ₀ = c/ω_p.
pub fn penetration_depth(model: &MaterialModel) -> Result<f64> {
    model
        .plasma_frequency()
        .map(|wp| SPEED_OF_LIGHT / wp)
        .ok_or_else(|| {
            CasimirError::UnsupportedModel(format!("{} model has no plasma frequency", model.name()))
        })
}

/// Plasma wavelength λ_p = 2πδ₀.
pub fn plasma_wavelength(model: &MaterialModel) -> Result<f64> {
    Ok(2.0 * PI * penetration_depth(model)?)
}

/// δ₀/a.
pub fn penetration_ratio(model: &MaterialModel, separation: f64) -> Result<f64> {
    if !(separation > 0.0) {
        return Err(domain(format!("separation must be > 0, got {separation}")));
    }
    Ok(penetration_depth(model)? / separation)
}

/// Matsubara frequency ξ_l = 2πl k_B T/ħ.
pub fn matsubara_frequency(l: i64, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(domain(format!(
            "Matsubara frequencies need T > 0, got {temperature}"
        )));
    }
    Ok(2.0 * PI * l as f64 * BOLTZMANN * temperature / HBAR)
}

/// Field polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Transverse magnetic (∥).
    Par,
    /// Transverse electric (⊥).
    Perp,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Par, Mode::Perp];
}

/// A quantity carried separately for the two polarizations.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ModeSplit {
    pub par: f64,
    pub perp: f64,
}

impl ModeSplit {
    pub fn new(par: f64, perp: f64) -> Self {
        ModeSplit { par, perp }
    }

    pub fn total(&self) -> f64 {
        self.par + self.perp
    }

    pub fn get(&self, mode: Mode) -> f64 {
        match mode {
            Mode::Par => self.par,
            Mode::Perp => self.perp,
        }
    }

    /// ∥/⊥.
    pub fn ratio(&self) -> f64 {
        self.par / self.perp
    }

    pub fn scale(&self, s: f64) -> Self {
        ModeSplit::new(self.par * s, self.perp * s)
    }

    pub fn add(&self, o: &ModeSplit) -> Self {
        ModeSplit::new(self.par + o.par, self.perp + o.perp)
    }
}

/// Interaction geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Plates,
    Sphere,
}
