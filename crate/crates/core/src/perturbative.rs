//! Closed-form temperature corrections, exact in temperature and expanded to
//! second order in the relative penetration depth δ = δ₀/a.
//!
//! Each (geometry, mode, order) coefficient is a function of b = lt built from
//! derivatives of S(b) = (π/2)coth(πb) − 1/(2b) and of the dilog sine
//! integral. The brackets were re-derived and checked against direct
//! quadrature of the expanded integrands. Where they differ from the
//! published closed forms the derived version is used:
//!
//! * plates ∥, first order: the published bracket pairs +(πlt)² with
//!   −3(πlt)²; the correct coefficient is
//!   2S''/b + 2S''' − 4S'/b² + 4S/b³.
//! * every second-order bracket (plates ∥, plates ⊥, the plate total and
//!   the sphere ∥ term) as published fails the quadrature check; the forms
//!   below pass it to 1e-12.
//!
//! For b < 1/2 the coefficients are summed from their Taylor series (the
//! negative powers cancel identically); above that they are split into a
//! power law and an exponentially small remainder, which avoids the
//! cancellation between 1/b⁴ and coth/sinh² terms.

use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{domain, CasimirError, Result};
use crate::quantities::{EvaluationPoint, Geometry, MaterialModel, Mode, ModeSplit, HBAR, SPEED_OF_LIGHT};
use crate::specfun::{coth_tail_derivative, hurwitz_unchecked, log_dilog_tail, zeta_even};

/// Above this δ₀/a the expansion is refused.
pub const MAX_DELTA_RATIO: f64 = 0.3;
/// Above this δ₀/a a warning is logged.
pub const WARN_DELTA_RATIO: f64 = 0.16;

const SERIES_SWITCH: f64 = 0.5;
const SERIES_TERMS: usize = 70;

#[derive(Debug, Clone, Copy)]
enum Atom {
    /// n-th derivative of S.
    S(u32),
    /// The dilog sine integral.
    SineIntegral,
}

/// coef · b^pow · atom(b)
#[derive(Debug, Clone, Copy)]
struct Term(f64, i32, Atom);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Tail {
    /// n-th derivative of π/(e^{2πb} − 1).
    Coth(u32),
    /// −(b/2)ln(1 − e^{−2πb}) + Li₂(e^{−2πb})/(4π).
    LogDilog,
}

fn terms(geometry: Geometry, mode: Mode, order: usize) -> &'static [Term] {
    use Atom::*;
    match (geometry, mode, order) {
        (Geometry::Plates, _, 0) => &[Term(-1.0, -1, S(2))],
        (Geometry::Plates, Mode::Perp, 1) => &[Term(6.0, -1, S(2)), Term(2.0, 0, S(3))],
        (Geometry::Plates, Mode::Perp, 2) => {
            &[Term(-24.0, -1, S(2)), Term(-16.0, 0, S(3)), Term(-2.0, 1, S(4))]
        }
        (Geometry::Plates, Mode::Par, 1) => &[
            Term(2.0, -1, S(2)),
            Term(2.0, 0, S(3)),
            Term(-4.0, -2, S(1)),
            Term(4.0, -3, S(0)),
        ],
        (Geometry::Plates, Mode::Par, 2) => &[Term(-8.0, 0, S(3)), Term(-2.0, 1, S(4))],
        (Geometry::Sphere, _, 0) => &[Term(1.0, -2, S(1)), Term(-1.0, -3, S(0))],
        (Geometry::Sphere, Mode::Perp, 1) => &[Term(-2.0, -1, S(2))],
        (Geometry::Sphere, Mode::Perp, 2) => &[Term(6.0, -1, S(2)), Term(2.0, 0, S(3))],
        (Geometry::Sphere, Mode::Par, 1) => {
            &[Term(-2.0, -1, S(2)), Term(4.0, -2, S(1)), Term(-4.0, -3, S(0))]
        }
        (Geometry::Sphere, Mode::Par, 2) => &[
            Term(2.0, 0, S(3)),
            Term(-2.0, -1, S(2)),
            Term(8.0, -2, S(1)),
            Term(24.0, -3, S(0)),
            Term(-48.0, -5, SineIntegral),
        ],
        _ => panic!("perturbative order must be 0, 1 or 2, got {order}"),
    }
}

/// Coefficient function in both of its numerical representations.
#[derive(Debug, Clone)]
struct Coefficient {
    /// Taylor coefficients c_n of b^n.
    series: Vec<f64>,
    /// Largest dropped negative-power coefficient (should be round-off).
    #[cfg_attr(not(test), allow(dead_code))]
    series_residual: f64,
    /// (coefficient, exponent) of the power-law part.
    power: Vec<(f64, i32)>,
    /// (coefficient, exponent, tail) of the exponentially small part.
    exp: Vec<(f64, i32, Tail)>,
}

fn falling(m: i64, n: u32) -> f64 {
    (0..n as i64).map(|j| (m - j) as f64).product()
}

impl Coefficient {
    fn build(terms: &[Term]) -> Coefficient {
        let mut series: BTreeMap<i32, f64> = BTreeMap::new();
        let mut power: BTreeMap<i32, f64> = BTreeMap::new();
        let mut exp: BTreeMap<(i32, Tail), f64> = BTreeMap::new();
        let signed_zeta = |k: usize| {
            let z = zeta_even(k as u32);
            if k % 2 == 1 {
                z
            } else {
                -z
            }
        };
        for &Term(c, p, atom) in terms {
            match atom {
                Atom::S(n) => {
                    // S = Σ_k (−1)^{k+1} ζ(2k) b^{2k−1}
                    for k in 1..=SERIES_TERMS {
                        let e = 2 * k as i64 - 1;
                        let f = falling(e, n);
                        if f != 0.0 {
                            *series.entry((e - n as i64) as i32 + p).or_default() += c * signed_zeta(k) * f;
                        }
                    }
                    // S = π/2 − 1/(2b) + π/(e^{2πb} − 1)
                    if n == 0 {
                        *power.entry(p).or_default() += c * PI / 2.0;
                    }
                    let m = -0.5 * falling(-1, n);
                    *power.entry(p - 1 - n as i32).or_default() += c * m;
                    *exp.entry((p, Tail::Coth(n))).or_default() += c;
                }
                Atom::SineIntegral => {
                    // Σ_k (−1)^{k+1} (2k/(2k+1)) ζ(2k) b^{2k+1}
                    for k in 1..=SERIES_TERMS {
                        let w = 2.0 * k as f64 / (2.0 * k as f64 + 1.0);
                        *series.entry(2 * k as i32 + 1 + p).or_default() += c * w * signed_zeta(k);
                    }
                    // πb²/4 − π/24 + b²·π/(e^{2πb} − 1) + tail
                    *power.entry(p + 2).or_default() += c * PI / 4.0;
                    *power.entry(p).or_default() -= c * PI / 24.0;
                    *exp.entry((p + 2, Tail::Coth(0))).or_default() += c;
                    *exp.entry((p, Tail::LogDilog)).or_default() += c;
                }
            }
        }
        let mut residual = 0.0f64;
        let max_e = series.keys().copied().max().unwrap_or(0).max(0);
        let mut dense = vec![0.0; max_e as usize + 1];
        for (&e, &v) in &series {
            if e < 0 {
                residual = residual.max(v.abs());
            } else {
                dense[e as usize] += v;
            }
        }
        let scale = power.values().fold(1.0f64, |m, v| m.max(v.abs()));
        Coefficient {
            series: dense,
            series_residual: residual,
            power: power
                .into_iter()
                .filter(|(_, v)| v.abs() > 1e-13 * scale)
                .map(|(e, v)| (v, e))
                .collect(),
            exp: exp
                .into_iter()
                .filter(|(_, v)| *v != 0.0)
                .map(|((e, t), v)| (v, e, t))
                .collect(),
        }
    }

    fn eval_series(&self, b: f64) -> f64 {
        self.series.iter().rev().fold(0.0, |acc, c| acc * b + c)
    }

    fn eval_power(&self, b: f64) -> f64 {
        self.power.iter().map(|&(c, e)| c * b.powi(e)).sum()
    }

    fn eval_exp(&self, b: f64) -> f64 {
        self.exp
            .iter()
            .map(|&(c, e, tail)| {
                let v = match tail {
                    Tail::Coth(n) => coth_tail_derivative(n, b),
                    Tail::LogDilog => log_dilog_tail(b),
                };
                c * b.powi(e) * v
            })
            .sum()
    }

    fn eval(&self, b: f64) -> f64 {
        if b < SERIES_SWITCH {
            self.eval_series(b)
        } else {
            self.eval_power(b) + self.eval_exp(b)
        }
    }

    /// Σ_{l≥1} f(lt), with the power-law part summed through Hurwitz zeta.
    fn lsum(&self, t: f64) -> (f64, u64) {
        let l0 = ((SERIES_SWITCH / t).ceil() as u64).max(1);
        let l0 = if (l0 as f64) * t < SERIES_SWITCH {
            l0 + 1
        } else {
            l0
        };
        let mut head = 0.0;
        for l in 1..l0 {
            head += self.eval_series(l as f64 * t);
        }
        let power: f64 = self
            .power
            .iter()
            .map(|&(c, e)| {
                debug_assert!(e <= -2, "power-law part must be summable");
                c * t.powi(e) * hurwitz_unchecked(-e as f64, l0 as f64)
            })
            .sum();
        let mut tail = 0.0;
        let mut small = 0;
        let mut l = l0;
        loop {
            let term = self.eval_exp(l as f64 * t);
            tail += term;
            let scale = (head + power + tail).abs();
            if term == 0.0 || term.abs() <= 1e-17 * scale {
                small += 1;
            } else {
                small = 0;
            }
            if small >= 3 {
                break;
            }
            l += 1;
        }
        (head + power + tail, l)
    }
}

fn table() -> &'static [Coefficient; 12] {
    static TABLE: OnceLock<[Coefficient; 12]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(12);
        for g in [Geometry::Plates, Geometry::Sphere] {
            for m in Mode::BOTH {
                for k in 0..3 {
                    v.push(Coefficient::build(terms(g, m, k)));
                }
            }
        }
        v.try_into().expect("twelve coefficient functions")
    })
}

fn coefficient_entry(geometry: Geometry, mode: Mode, order: usize) -> &'static Coefficient {
    assert!(order <= 2, "perturbative order must be 0, 1 or 2, got {order}");
    let g = match geometry {
        Geometry::Plates => 0,
        Geometry::Sphere => 1,
    };
    let m = match mode {
        Mode::Par => 0,
        Mode::Perp => 1,
    };
    &table()[g * 6 + m * 3 + order]
}

/// Per-l coefficient of δ^order at b = lt.
///
/// Plates: Δ_T^mode F = −(ħc/16π²a⁴) Σ_l Σ_k δ^k P_k(lt), with
/// P_k(b) = ½∫₀^∞ y²dy ∫₀^y dx cos(bx) c_k(x, y).
/// Sphere: Δ_T^mode F = (ħcR/8πa³) Σ_l Σ_k δ^k Q_k(lt), with
/// Q_k(b) = ∫₀^∞ y dy ∫₀^y dx cos(bx) c_k(x, y).
pub fn coefficient(geometry: Geometry, mode: Mode, order: usize, b: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(domain(format!("coefficient needs b = lt > 0, got {b}")));
    }
    Ok(coefficient_entry(geometry, mode, order).eval(b))
}

/// Power-law part of a coefficient as (coefficient, exponent) pairs.
pub fn coefficient_power_law(geometry: Geometry, mode: Mode, order: usize) -> Vec<(f64, i32)> {
    coefficient_entry(geometry, mode, order).power.clone()
}

/// Σ_{l≥1} coefficient(lt) and the number of l terms evaluated.
pub fn coefficient_sum(geometry: Geometry, mode: Mode, order: usize, t: f64) -> Result<(f64, u64)> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("l-sum needs t > 0, got {t}")));
    }
    Ok(coefficient_entry(geometry, mode, order).lsum(t))
}

/// Expansion coefficients of an integrand in powers of δ₀/a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ExpansionCoefficients {
    pub fn eval(&self, delta: f64) -> f64 {
        self.c0 + delta * (self.c1 + delta * self.c2)
    }
}

fn check_xy(x: f64, y: f64) -> Result<()> {
    if !(y > 0.0) || !y.is_finite() || !(x >= 0.0) || x > y {
        return Err(domain(format!("need 0 <= x <= y, y > 0; got x = {x}, y = {y}")));
    }
    Ok(())
}

/// Coefficients of [r⁻² e^y − 1]⁻¹ with the plasma permittivity.
pub fn integrand_expansion_plates(x: f64, y: f64, mode: Mode) -> Result<ExpansionCoefficients> {
    check_xy(x, y)?;
    let q = (-y).exp();
    let d = -(-y).exp_m1();
    let bose = q / d;
    let b1 = q / (d * d);
    let b2 = q * (1.0 + q) / (d * d * d);
    Ok(match mode {
        Mode::Par => {
            let u = x * x / y;
            ExpansionCoefficients {
                c0: bose,
                c1: -2.0 * u * b1,
                c2: 2.0 * u * u * b2,
            }
        }
        Mode::Perp => ExpansionCoefficients {
            c0: bose,
            c1: -2.0 * y * b1,
            c2: 2.0 * y * y * b2,
        },
    })
}

/// Coefficients of ln(1 − r² e^{−y}) with the plasma permittivity.
pub fn integrand_expansion_sphere(x: f64, y: f64, mode: Mode) -> Result<ExpansionCoefficients> {
    check_xy(x, y)?;
    let q = (-y).exp();
    let d = -(-y).exp_m1();
    let bose = q / d;
    let b1 = q / (d * d);
    let u = match mode {
        Mode::Par => x * x / y,
        Mode::Perp => y,
    };
    Ok(ExpansionCoefficients {
        c0: d.ln(),
        c1: 2.0 * u * bose,
        c2: -2.0 * u * u * b1,
    })
}

/// ∫₀^∞ (dy/y) e^y/(e^y − 1)² [sin(by) − by cos(by)] in closed form:
/// (πb²/4)coth(πb) − (1/4π)[π²/6 + 2πb ln(1 − e^{−2πb}) − 2π²b²/(e^{2πb} − 1)
/// − Li₂(e^{−2πb})].
pub fn dilog_sine_integral(b: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(domain(format!("dilog sine integral needs b > 0, got {b}")));
    }
    static C: OnceLock<Coefficient> = OnceLock::new();
    let c = C.get_or_init(|| Coefficient::build(&[Term(1.0, 0, Atom::SineIntegral)]));
    Ok(c.eval(b))
}

/// Temperature correction resolved by order and mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionSeries {
    /// Contribution at (δ₀/a)^k for k = 0, 1, 2, already multiplied by δ^k.
    pub by_order: [ModeSplit; 3],
    /// Highest order included in `total` and `per_mode`.
    pub max_order: usize,
    pub per_mode: ModeSplit,
    pub total: f64,
    pub l_terms_used: u64,
}

impl CorrectionSeries {
    pub fn order(&self, k: usize) -> f64 {
        self.by_order[k].total()
    }

    /// Same correction truncated at a lower order.
    pub fn truncated(&self, max_order: usize) -> CorrectionSeries {
        let max_order = max_order.min(2);
        let mut per_mode = ModeSplit::default();
        for k in 0..=max_order {
            per_mode = per_mode.add(&self.by_order[k]);
        }
        CorrectionSeries {
            max_order,
            per_mode,
            total: per_mode.total(),
            ..*self
        }
    }
}

fn delta_guard(delta_ratio: f64) -> Result<()> {
    if !(delta_ratio >= 0.0) || !delta_ratio.is_finite() {
        return Err(domain(format!("delta ratio must be >= 0, got {delta_ratio}")));
    }
    if delta_ratio >= MAX_DELTA_RATIO {
        return Err(domain(format!(
            "delta0/a = {delta_ratio:.4} is outside the perturbative range (< {MAX_DELTA_RATIO})"
        )));
    }
    if delta_ratio > WARN_DELTA_RATIO {
        log::warn!("delta0/a = {delta_ratio:.4}: second-order expansion is marginal");
    }
    Ok(())
}

fn series(geometry: Geometry, point: &EvaluationPoint, delta_ratio: f64) -> Result<CorrectionSeries> {
    delta_guard(delta_ratio)?;
    let t = point.require_t()?;
    let a = point.separation;
    let prefactor = match geometry {
        Geometry::Plates => -HBAR * SPEED_OF_LIGHT / (16.0 * PI * PI * a.powi(4)),
        Geometry::Sphere => HBAR * SPEED_OF_LIGHT * point.require_radius()? / (8.0 * PI * a.powi(3)),
    };
    let mut by_order = [ModeSplit::default(); 3];
    let mut used = 0;
    for (k, slot) in by_order.iter_mut().enumerate() {
        let w = prefactor * delta_ratio.powi(k as i32);
        let (p, lp) = coefficient_entry(geometry, Mode::Par, k).lsum(t);
        let (q, lq) = coefficient_entry(geometry, Mode::Perp, k).lsum(t);
        used = used.max(lp).max(lq);
        *slot = ModeSplit::new(w * p, w * q);
    }
    let per_mode = by_order[0].add(&by_order[1]).add(&by_order[2]);
    Ok(CorrectionSeries {
        by_order,
        max_order: 2,
        per_mode,
        total: per_mode.total(),
        l_terms_used: used,
    })
}

/// One polarization's closed-form correction for two plates, N/m².
pub fn delta_t_plates_mode(point: &EvaluationPoint, delta_ratio: f64, mode: Mode) -> Result<f64> {
    Ok(series(Geometry::Plates, point, delta_ratio)?.per_mode.get(mode))
}

/// One polarization's closed-form correction for sphere above plate, N.
pub fn delta_t_sphere_mode(point: &EvaluationPoint, delta_ratio: f64, mode: Mode) -> Result<f64> {
    Ok(series(Geometry::Sphere, point, delta_ratio)?.per_mode.get(mode))
}

pub(crate) fn model_delta(model: &MaterialModel, a: f64) -> Result<f64> {
    match model {
        MaterialModel::IdealMetal => Ok(0.0),
        MaterialModel::Plasma { .. } => crate::quantities::penetration_ratio(model, a),
        MaterialModel::Drude { .. } => Err(CasimirError::Indeterminate(
            "closed-form temperature correction requested with the Drude model".into(),
        )),
        MaterialModel::Dielectric { .. } => Err(CasimirError::UnsupportedModel(
            "the closed-form corrections are expansions of the plasma model".into(),
        )),
    }
}

/// Full closed-form correction for two plates, N/m².
pub fn delta_t_plates(point: &EvaluationPoint, model: &MaterialModel) -> Result<CorrectionSeries> {
    let delta = model_delta(model, point.separation)?;
    series(Geometry::Plates, point, delta)
}

/// Full closed-form correction for a sphere above a plate, N.
pub fn delta_t_sphere(point: &EvaluationPoint, model: &MaterialModel) -> Result<CorrectionSeries> {
    let delta = model_delta(model, point.separation)?;
    series(Geometry::Sphere, point, delta)
}

pub fn delta_t(
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
) -> Result<CorrectionSeries> {
    match geometry {
        Geometry::Plates => delta_t_plates(point, model),
        Geometry::Sphere => delta_t_sphere(point, model),
    }
}
