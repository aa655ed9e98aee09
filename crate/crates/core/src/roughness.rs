//! Geometric averaging of the force over a rough surface.
//!
//! The local separation is a(x, y) = a₀ + f(x, y), where f combines the
//! deviations of both surfaces and has zero mean over the patch. The rough
//! force is the patch average of the flat force evaluated at a(x, y).

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::path::Path;

use crate::asymptotics::{self, Method};
use crate::error::{domain, CasimirError, Result};
use crate::lifshitz::QuadratureSettings;
use crate::quantities::{effective_temperature, EvaluationPoint, Geometry, MaterialModel, MICROMETRE};

/// Samples per period for the analytic profiles.
pub const DEFAULT_SAMPLES: usize = 64;

const NANOMETRE: f64 = 1e-9;

/// Combined surface deviation f; lengths in metres.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Flat,
    /// f = A sin(2πx/period + phase), averaged over one period.
    Sinusoidal {
        amplitude: f64,
        period: f64,
        phase: f64,
    },
    /// Half the patch at +A, half at −A.
    TwoPoint {
        amplitude: f64,
    },
    /// Heights per cell, row-major; the patch is the whole grid.
    Grid {
        heights: Vec<Vec<f64>>,
        cell: f64,
    },
}

impl Profile {
    /// Largest excursion towards the other surface, max(−f).
    pub fn max_approach(&self) -> f64 {
        match self {
            Profile::Flat => 0.0,
            Profile::Sinusoidal { amplitude, .. } | Profile::TwoPoint { amplitude } => amplitude.abs(),
            Profile::Grid { heights, .. } => heights
                .iter()
                .flatten()
                .fold(f64::NEG_INFINITY, |m, h| m.max(-h))
                .max(0.0),
        }
    }

    /// Patch side length L, when the profile defines one.
    pub fn patch(&self) -> Option<f64> {
        match self {
            Profile::Sinusoidal { period, .. } => Some(*period),
            Profile::Grid { heights, cell } => {
                let cols = heights.first().map_or(0, |r| r.len());
                Some(cell * heights.len().max(cols) as f64)
            }
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Profile::Flat => Ok(()),
            Profile::Sinusoidal {
                amplitude,
                period,
                phase,
            } => {
                if !amplitude.is_finite() || !(*period > 0.0) || !phase.is_finite() {
                    return Err(domain(
                        "sinusoidal profile needs finite amplitude and phase, period > 0",
                    ));
                }
                Ok(())
            }
            Profile::TwoPoint { amplitude } => {
                if !amplitude.is_finite() {
                    return Err(domain("two-point amplitude must be finite"));
                }
                Ok(())
            }
            Profile::Grid { heights, cell } => {
                if !(*cell > 0.0) {
                    return Err(domain(format!("grid cell must be > 0, got {cell}")));
                }
                let cols = heights.first().map_or(0, |r| r.len());
                if cols == 0 || heights.iter().any(|r| r.len() != cols) {
                    return Err(domain("grid must be a non-empty rectangle"));
                }
                if heights.iter().flatten().any(|h| !h.is_finite()) {
                    return Err(domain("grid heights must be finite"));
                }
                Ok(())
            }
        }
    }

    /// Pointwise sum of two grids of the same shape (one per surface).
    pub fn combine_grids(&self, other: &Profile) -> Result<Profile> {
        match (self, other) {
            (Profile::Grid { heights: a, cell: ca }, Profile::Grid { heights: b, cell: cb }) => {
                if ca != cb || a.len() != b.len() || a.iter().zip(b).any(|(r, s)| r.len() != s.len()) {
                    return Err(domain("grids must share cell size and shape"));
                }
                let heights = a
                    .iter()
                    .zip(b)
                    .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
                    .collect();
                Ok(Profile::Grid { heights, cell: *ca })
            }
            _ => Err(domain("only grid profiles can be combined")),
        }
    }
}

/// Removes the patch mean from f; the removed mean is returned so it can be
/// folded into a₀.
pub fn enforce_zero_mean(profile: &Profile) -> Result<(Profile, f64)> {
    profile.validate()?;
    match profile {
        Profile::Grid { heights, cell } => {
            let n = heights.iter().map(|r| r.len()).sum::<usize>() as f64;
            let mean = heights.iter().flatten().sum::<f64>() / n;
            let centred = heights
                .iter()
                .map(|r| r.iter().map(|h| h - mean).collect())
                .collect();
            Ok((
                Profile::Grid {
                    heights: centred,
                    cell: *cell,
                },
                mean,
            ))
        }
        // The analytic profiles have zero mean by construction.
        other => Ok((other.clone(), 0.0)),
    }
}

/// Rough-surface force and its flat reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AveragedForce {
    pub value: f64,
    pub flat_value: f64,
    /// value / flat_value.
    pub enhancement: f64,
    /// Force evaluations averaged.
    pub samples: usize,
    pub formula_used: Option<Method>,
}

/// Separations sampled by the averaging rule, each with equal weight.
fn sample_separations(profile: &Profile, a0: f64, samples: usize) -> Vec<f64> {
    match profile {
        Profile::Flat => vec![a0],
        Profile::Sinusoidal { amplitude, phase, .. } => (0..samples)
            .map(|i| {
                let theta = 2.0 * PI * (i as f64 + 0.5) / samples as f64 + phase;
                a0 + amplitude * theta.sin()
            })
            .collect(),
        Profile::TwoPoint { amplitude } => vec![a0 - amplitude, a0 + amplitude],
        Profile::Grid { heights, .. } => heights.iter().flatten().map(|h| a0 + h).collect(),
    }
}

/// Patch average of `force(a)` over a(x, y) = a₀ + f(x, y).
///
/// Evaluations run in parallel; the sum is taken in sample order.
pub fn averaged_force<F>(profile: &Profile, a0: f64, force: F) -> Result<AveragedForce>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    profile.validate()?;
    if !(a0 > 0.0) || !a0.is_finite() {
        return Err(domain(format!("mean separation must be > 0, got {a0}")));
    }
    let approach = profile.max_approach();
    if a0 - approach <= 0.0 {
        return Err(domain(format!(
            "surfaces touch: roughness reaches {approach:e} m at mean separation {a0:e} m"
        )));
    }
    let flat_value = force(a0)?;
    if let Profile::Flat = profile {
        return Ok(AveragedForce {
            value: flat_value,
            flat_value,
            enhancement: 1.0,
            samples: 1,
            formula_used: None,
        });
    }
    let seps = sample_separations(profile, a0, DEFAULT_SAMPLES);
    let values: Vec<f64> = seps.par_iter().map(|&a| force(a)).collect::<Result<_>>()?;
    let value = values.iter().sum::<f64>() / values.len() as f64;
    Ok(AveragedForce {
        value,
        flat_value,
        enhancement: value / flat_value,
        samples: values.len(),
        formula_used: None,
    })
}

/// Which force formula to average at this point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RoughnessFormula {
    LowTAsymptotic,
    ExactSeries,
    /// Roughness corrections are negligible here.
    Negligible,
}

impl RoughnessFormula {
    /// The thermal-correction method to use; `Negligible` falls back to the
    /// exact series.
    pub fn method(&self) -> Method {
        match self {
            RoughnessFormula::LowTAsymptotic => Method::LowT,
            RoughnessFormula::ExactSeries | RoughnessFormula::Negligible => Method::Exact,
        }
    }
}

fn t_at_300(separation_um: f64) -> f64 {
    effective_temperature(separation_um * MICROMETRE).unwrap_or(f64::INFINITY) / 300.0
}

/// Low-temperature forms below 3 μm, the exact series up to 5 μm, and a
/// negligible flag beyond (all at 300 K; the rule is applied in t).
pub fn recommended_force_method_for_roughness(point: &EvaluationPoint) -> RoughnessFormula {
    let t = point.t().unwrap_or(f64::INFINITY);
    if t > t_at_300(3.0) {
        RoughnessFormula::LowTAsymptotic
    } else if t >= t_at_300(5.0) {
        RoughnessFormula::ExactSeries
    } else {
        RoughnessFormula::Negligible
    }
}

/// Rough-surface total force using the recommended formula (or `method`).
pub fn averaged_total_force(
    profile: &Profile,
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
    method: Option<Method>,
    q: &QuadratureSettings,
) -> Result<AveragedForce> {
    let method = method.unwrap_or_else(|| recommended_force_method_for_roughness(point).method());
    let f = |a: f64| -> Result<f64> {
        let p = point.at_separation(a)?;
        Ok(asymptotics::total_force(geometry, &p, model, method, 2, q)?.total)
    };
    let mut out = averaged_force(profile, point.separation, f)?;
    out.formula_used = Some(method);
    Ok(out)
}

/// Parses a grid profile: a `cell_nm=<value>` header line, then rows of
/// heights in nm separated by whitespace or commas. Lines starting with `#`
/// are ignored. The mean is removed; it is returned in metres.
pub fn parse_grid(text: &str) -> Result<(Profile, f64)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CasimirError::Config("grid profile is empty".into()))?;
    let cell_nm: f64 = header
        .strip_prefix("cell_nm=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| {
            CasimirError::Config(format!("grid header must be `cell_nm=<value>`, got `{header}`"))
        })?;
    let mut heights = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map(|h| h * NANOMETRE)
                    .map_err(|_| CasimirError::Config(format!("grid row {}: cannot parse `{s}`", i + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        heights.push(row);
    }
    let raw = Profile::Grid {
        heights,
        cell: cell_nm * NANOMETRE,
    };
    raw.validate().map_err(|e| CasimirError::Config(e.to_string()))?;
    enforce_zero_mean(&raw)
}

pub fn load_grid(path: &Path) -> Result<(Profile, f64)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CasimirError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_grid(&text)
}
