//! Low- and high-temperature limits of the thermal correction, the
//! correction factor k = Δ_T F / F(T = 0), total-force assembly and the
//! choice of formula for a given separation and temperature.
//!
//! The low-temperature forms keep power laws in 1/t and the largest
//! exponentially small terms in e^{−2πt}; the two parts are reported
//! separately. Correction factors from the low-temperature method use the
//! power-law part only, which is how the reference tables were built.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::lifshitz::{self, QuadratureSettings};
use crate::perturbative::{self, model_delta};
use crate::quantities::{
    effective_temperature, EvaluationPoint, Geometry, MaterialModel, ModeSplit, HBAR, MICROMETRE,
    SPEED_OF_LIGHT,
};
use crate::specfun::{ZETA3, ZETA5};

/// Temperature at which the separation thresholds below were calibrated.
const CALIBRATION_TEMPERATURE: f64 = 300.0;
/// Below this separation (at 300 K) the low-temperature forms are accurate.
const LOW_T_SEPARATION_UM: f64 = 2.0;
/// Above these separations (at 300 K) the high-temperature forms are accurate.
const HIGH_T_SEPARATION_PLATES_UM: f64 = 7.0;
const HIGH_T_SEPARATION_SPHERE_UM: f64 = 6.0;

/// How the thermal correction is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed form, exact in temperature, second order in δ₀/a.
    Exact,
    LowT,
    HighT,
    /// Full Lifshitz evaluation, no expansion.
    Numeric,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::LowT => "lowT",
            Method::HighT => "highT",
            Method::Numeric => "numeric",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Some(Method::Exact),
            "lowt" | "low_t" | "low" => Some(Method::LowT),
            "hight" | "high_t" | "high" => Some(Method::HighT),
            "numeric" => Some(Method::Numeric),
            _ => None,
        }
    }
}

/// An asymptotic correction split into power-law and exponentially small parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptotic {
    pub power_law: f64,
    pub exponential: f64,
}

impl Asymptotic {
    pub fn total(&self) -> f64 {
        self.power_law + self.exponential
    }
}

fn plates_prefactor(a: f64) -> f64 {
    -HBAR * SPEED_OF_LIGHT / (8.0 * PI * PI * a.powi(4))
}

fn sphere_prefactor(point: &EvaluationPoint) -> Result<f64> {
    let a = point.separation;
    Ok(-HBAR * SPEED_OF_LIGHT * point.require_radius()? / (4.0 * PI * a.powi(3)))
}

fn check_delta(d: f64) -> Result<()> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(domain(format!("delta ratio must be >= 0, got {d}")));
    }
    Ok(())
}

fn low_t_warn(t: f64) {
    if t <= 1.0 {
        log::warn!("low-temperature form used at t = {t:.3} <= 1");
    }
}

fn high_t_warn(t: f64) {
    if t >= 1.0 {
        log::warn!("high-temperature form used at t = {t:.3} >= 1");
    }
}

/// Brace of an asymptotic form by power of δ: power-law and exponential parts.
#[derive(Debug, Clone, Copy)]
struct Orders {
    power: [f64; 3],
    exp: [f64; 3],
}

impl Orders {
    fn eval(&self, d: f64, max_order: usize, prefactor: f64) -> (Asymptotic, [f64; 3]) {
        let mut by_order = [0.0; 3];
        let mut a = Asymptotic {
            power_law: 0.0,
            exponential: 0.0,
        };
        for k in 0..=max_order.min(2) {
            let w = prefactor * d.powi(k as i32);
            a.power_law += w * self.power[k];
            a.exponential += w * self.exp[k];
            by_order[k] = w * self.power[k];
        }
        (a, by_order)
    }
}

fn low_t_plates_orders(t: f64) -> Orders {
    let e = (-2.0 * PI * t).exp();
    let pi4 = PI.powi(4);
    Orders {
        power: [pi4 / (90.0 * t.powi(4)), PI * ZETA3 / t.powi(3), 0.0],
        exp: [
            -(4.0 * PI.powi(3) / t) * e,
            -16.0 * pi4 * e,
            -36.0 * PI.powi(5) * t * e,
        ],
    }
}

fn high_t_plates_orders(t: f64) -> Orders {
    let pi4 = PI.powi(4);
    let z = PI * ZETA3 / t;
    Orders {
        power: [
            z - pi4 / 30.0,
            -3.0 * z + 8.0 * pi4 / 45.0,
            12.0 * z - 4.0 * pi4 / 5.0,
        ],
        exp: [0.0; 3],
    }
}

fn low_t_sphere_orders(t: f64) -> Orders {
    let e = (-2.0 * PI * t).exp();
    let pi4 = PI.powi(4);
    Orders {
        power: [
            PI * ZETA3 / (2.0 * t.powi(3)) - pi4 / (90.0 * t.powi(4)),
            PI * ZETA3 / t.powi(3) - 2.0 * pi4 / (45.0 * t.powi(4)),
            -PI * ZETA5 / t.powi(5),
        ],
        exp: [
            2.0 * PI * PI / (t * t) * e,
            8.0 * PI.powi(3) / t * e,
            16.0 * pi4 * e,
        ],
    }
}

fn high_t_sphere_orders(t: f64) -> Orders {
    let pi4 = PI.powi(4);
    let z = PI * ZETA3 / t;
    Orders {
        power: [
            z / 2.0 - pi4 / 90.0,
            -z + 2.0 * pi4 / 45.0,
            3.0 * z - 4.0 * pi4 / 25.0,
        ],
        exp: [0.0; 3],
    }
}

/// Low-temperature correction for two plates, N/m². Zero at T = 0.
pub fn low_t_plates(point: &EvaluationPoint, delta_ratio: f64) -> Result<Asymptotic> {
    check_delta(delta_ratio)?;
    let Some(t) = point.t() else {
        return Ok(Asymptotic {
            power_law: 0.0,
            exponential: 0.0,
        });
    };
    low_t_warn(t);
    Ok(low_t_plates_orders(t)
        .eval(delta_ratio, 2, plates_prefactor(point.separation))
        .0)
}

/// High-temperature correction for two plates, N/m².
pub fn high_t_plates(point: &EvaluationPoint, delta_ratio: f64) -> Result<f64> {
    check_delta(delta_ratio)?;
    let t = point.require_t()?;
    high_t_warn(t);
    Ok(high_t_plates_orders(t)
        .eval(delta_ratio, 2, plates_prefactor(point.separation))
        .0
        .total())
}

/// Low-temperature correction for a sphere above a plate, N. Zero at T = 0.
pub fn low_t_sphere(point: &EvaluationPoint, delta_ratio: f64) -> Result<Asymptotic> {
    check_delta(delta_ratio)?;
    let p = sphere_prefactor(point)?;
    let Some(t) = point.t() else {
        return Ok(Asymptotic {
            power_law: 0.0,
            exponential: 0.0,
        });
    };
    low_t_warn(t);
    Ok(low_t_sphere_orders(t).eval(delta_ratio, 2, p).0)
}

/// High-temperature correction for a sphere above a plate, N.
pub fn high_t_sphere(point: &EvaluationPoint, delta_ratio: f64) -> Result<f64> {
    check_delta(delta_ratio)?;
    let p = sphere_prefactor(point)?;
    let t = point.require_t()?;
    high_t_warn(t);
    Ok(high_t_sphere_orders(t).eval(delta_ratio, 2, p).0.total())
}

/// Thermal correction by any method, with whatever breakdown it provides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correction {
    pub method: Method,
    pub value: f64,
    pub per_mode: Option<ModeSplit>,
    /// Contributions at (δ₀/a)^0,1,2.
    pub by_order: Option<[f64; 3]>,
    /// Exponentially small part left out of `value` (low-temperature method).
    pub omitted_exponential: f64,
    pub l_terms_used: u64,
    pub error_estimate: f64,
}

/// Thermal correction for `geometry` by `method`, truncated at `max_order`
/// in δ₀/a where that applies.
pub fn correction(
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
    method: Method,
    max_order: usize,
    q: &QuadratureSettings,
) -> Result<Correction> {
    if let MaterialModel::Drude { .. } = model {
        model.ensure_finite_temperature_force()?;
    }
    if geometry == Geometry::Sphere {
        point.require_radius()?;
    }
    let blank = Correction {
        method,
        value: 0.0,
        per_mode: None,
        by_order: None,
        omitted_exponential: 0.0,
        l_terms_used: 0,
        error_estimate: 0.0,
    };
    match method {
        Method::Exact => {
            if point.temperature == 0.0 {
                model_delta(model, point.separation)?;
                return Ok(Correction {
                    per_mode: Some(ModeSplit::default()),
                    by_order: Some([0.0; 3]),
                    ..blank
                });
            }
            let full = perturbative::delta_t(geometry, point, model)?;
            let s = full.truncated(max_order);
            let mut by_order = [0.0; 3];
            for (k, v) in by_order.iter_mut().enumerate().take(max_order.min(2) + 1) {
                *v = s.order(k);
            }
            // Orders dropped by the caller, plus a bound on the O(δ³) term.
            // The coefficients need not shrink order by order (the parallel
            // mode at low temperature), so both last orders feed the bound.
            let d = model_delta(model, point.separation)?;
            let dropped: f64 = (max_order + 1..3).map(|k| full.order(k).abs()).sum();
            let next = (full.order(2).abs() * d).max(full.order(1).abs() * d * d);
            let err = (dropped + next).max(f64::EPSILON * s.total.abs());
            Ok(Correction {
                value: s.total,
                per_mode: Some(s.per_mode),
                by_order: Some(by_order),
                l_terms_used: s.l_terms_used,
                error_estimate: err,
                ..blank
            })
        }
        Method::LowT | Method::HighT => {
            let d = model_delta(model, point.separation)?;
            let prefactor = match geometry {
                Geometry::Plates => plates_prefactor(point.separation),
                Geometry::Sphere => sphere_prefactor(point)?,
            };
            let Some(t) = point.t() else {
                if method == Method::HighT {
                    point.require_t()?;
                }
                return Ok(Correction {
                    by_order: Some([0.0; 3]),
                    ..blank
                });
            };
            let orders = match (geometry, method) {
                (Geometry::Plates, Method::LowT) => low_t_plates_orders(t),
                (Geometry::Sphere, Method::LowT) => low_t_sphere_orders(t),
                (Geometry::Plates, _) => high_t_plates_orders(t),
                (Geometry::Sphere, _) => high_t_sphere_orders(t),
            };
            if method == Method::LowT {
                low_t_warn(t);
            } else {
                high_t_warn(t);
            }
            let (a, by_order) = orders.eval(d, max_order, prefactor);
            Ok(Correction {
                value: a.power_law,
                by_order: Some(by_order),
                omitted_exponential: a.exponential,
                error_estimate: a.exponential.abs(),
                ..blank
            })
        }
        Method::Numeric => {
            let f = lifshitz::force(geometry, point, model, q)?;
            Ok(Correction {
                value: f.temperature_correction,
                per_mode: Some(f.correction_per_mode),
                l_terms_used: f.l_max,
                error_estimate: f.error_estimate,
                ..blank
            })
        }
    }
}

/// Correction factor with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KFactor {
    pub k: f64,
    pub correction: Correction,
    /// Numerical zero-temperature force.
    pub zero_temperature: f64,
}

/// k = Δ_T F / F(T = 0); the denominator is always the numerical l = 0 term.
pub fn k_factor(
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
    method: Method,
    q: &QuadratureSettings,
) -> Result<KFactor> {
    let correction = correction(geometry, point, model, method, 2, q)?;
    let zero_temperature = lifshitz::zero_temperature_force(geometry, point, model, q)?;
    Ok(KFactor {
        k: correction.value / zero_temperature,
        correction,
        zero_temperature,
    })
}

/// (1 + k)·F(T = 0) with the pieces that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TotalForce {
    pub geometry: Geometry,
    pub zero_temperature: f64,
    pub correction: Correction,
    pub total: f64,
    pub k: f64,
    pub error_estimate: f64,
}

pub fn total_force(
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
    method: Method,
    max_order: usize,
    q: &QuadratureSettings,
) -> Result<TotalForce> {
    let correction = correction(geometry, point, model, method, max_order, q)?;
    let (zero_temperature, t0_err) = match method {
        // Reuse the numerical evaluation already done for the correction.
        Method::Numeric => {
            let f = lifshitz::force(geometry, point, model, q)?;
            (f.t0_part, 0.0)
        }
        _ => {
            let f0 = lifshitz::zero_temperature_force(geometry, point, model, q)?;
            (f0, q.rel_tol * f0.abs())
        }
    };
    Ok(TotalForce {
        geometry,
        zero_temperature,
        correction,
        total: zero_temperature + correction.value,
        k: correction.value / zero_temperature,
        error_estimate: correction.error_estimate + t0_err,
    })
}

/// Temperature regime of an evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    LowT,
    Transition,
    HighT,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub recommended: Method,
    /// Separations bounding the transition window at this temperature, m.
    pub low_t_below: f64,
    pub high_t_above: f64,
    /// The same bounds expressed in t.
    pub t_low: f64,
    pub t_high: f64,
}

fn t_at_calibration(separation_um: f64) -> f64 {
    effective_temperature(separation_um * MICROMETRE).unwrap_or(f64::INFINITY) / CALIBRATION_TEMPERATURE
}

/// Thresholds in t: low-temperature forms for t ≥ t_low, high-temperature
/// forms for t ≤ t_high.
pub fn regime_thresholds(geometry: Geometry) -> (f64, f64) {
    let high = match geometry {
        Geometry::Plates => HIGH_T_SEPARATION_PLATES_UM,
        Geometry::Sphere => HIGH_T_SEPARATION_SPHERE_UM,
    };
    (t_at_calibration(LOW_T_SEPARATION_UM), t_at_calibration(high))
}

/// Classifies by t, so the same rule applies at any temperature.
pub fn regime_recommendation(geometry: Geometry, point: &EvaluationPoint) -> RegimeReport {
    let (t_low, t_high) = regime_thresholds(geometry);
    let t = point.t().unwrap_or(f64::INFINITY);
    let (regime, recommended) = if t >= t_low {
        (Regime::LowT, Method::LowT)
    } else if t <= t_high {
        (Regime::HighT, Method::HighT)
    } else {
        (Regime::Transition, Method::Exact)
    };
    // a = ħc/(2 k_B T t)
    let sep = |tt: f64| {
        if point.temperature > 0.0 {
            point.separation * point.t().unwrap_or(0.0) / tt
        } else {
            f64::INFINITY
        }
    };
    RegimeReport {
        regime,
        recommended,
        low_t_below: sep(t_low),
        high_t_above: sep(t_high),
        t_low,
        t_high,
    }
}
