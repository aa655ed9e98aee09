//! Permittivity models on the imaginary frequency axis, reflection and
//! scattering coefficients, and the zero-frequency well-posedness analysis.

use serde::Serialize;

use crate::error::{domain, CasimirError, Result};
use crate::quantities::{MaterialModel, SPEED_OF_LIGHT};

/// ε(iξ). The ideal metal is a flag, never a floating-point infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Permittivity {
    Finite(f64),
    Infinite,
}

impl Permittivity {
    pub fn finite(self) -> Option<f64> {
        match self {
            Permittivity::Finite(v) => Some(v),
            Permittivity::Infinite => None,
        }
    }
}

pub fn permittivity(model: &MaterialModel, xi: f64) -> Result<Permittivity> {
    model.validate()?;
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(domain(format!("xi must be finite and >= 0, got {xi}")));
    }
    match *model {
        MaterialModel::IdealMetal => Ok(Permittivity::Infinite),
        MaterialModel::Dielectric { eps0 } => Ok(Permittivity::Finite(eps0)),
        MaterialModel::Plasma { omega_p } => {
            if xi == 0.0 {
                return Err(CasimirError::Pole("plasma permittivity at xi = 0".into()));
            }
            Ok(Permittivity::Finite(1.0 + (omega_p / xi).powi(2)))
        }
        MaterialModel::Drude { omega_p, gamma } => {
            if xi == 0.0 {
                return Err(CasimirError::Pole("Drude permittivity at xi = 0".into()));
            }
            Ok(Permittivity::Finite(
                1.0 + omega_p * omega_p / (xi * (xi + gamma)),
            ))
        }
    }
}

/// Squared reflection coefficient with its complement, kept separately so
/// that 1 − r² does not suffer cancellation when r² → 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ModeReflection {
    pub r_sq: f64,
    pub one_minus_r_sq: f64,
}

impl ModeReflection {
    const PERFECT: ModeReflection = ModeReflection {
        r_sq: 1.0,
        one_minus_r_sq: 0.0,
    };

    /// [r⁻² e^y − 1]⁻¹, the force integrand.
    #[inline]
    pub fn bose(&self, y: f64) -> f64 {
        self.r_sq / (y.exp_m1() + self.one_minus_r_sq)
    }

    /// ln(1 − r² e^{−y}), the free-energy integrand.
    #[inline]
    pub fn log_factor(&self, y: f64) -> f64 {
        let p = self.r_sq * (-y).exp();
        if p < 0.5 {
            (-p).ln_1p()
        } else {
            (self.one_minus_r_sq - self.r_sq * (-y).exp_m1()).ln()
        }
    }
}

/// Material in the dimensionless variables x = 2aξ/c, y = 2aq.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Medium {
    Ideal,
    /// ω̃ = 2aω_p/c.
    Plasma {
        wt: f64,
    },
    /// γ̃ = 2aγ/c.
    Drude {
        wt: f64,
        gt: f64,
    },
    Dielectric {
        eps0: f64,
    },
}

impl Medium {
    pub fn new(model: &MaterialModel, a: f64) -> Result<Medium> {
        model.validate()?;
        if !(a > 0.0) {
            return Err(domain(format!("separation must be > 0, got {a}")));
        }
        let scale = 2.0 * a / SPEED_OF_LIGHT;
        Ok(match *model {
            MaterialModel::IdealMetal => Medium::Ideal,
            MaterialModel::Plasma { omega_p } => Medium::Plasma { wt: scale * omega_p },
            MaterialModel::Drude { omega_p, gamma } => Medium::Drude {
                wt: scale * omega_p,
                gt: scale * gamma,
            },
            MaterialModel::Dielectric { eps0 } => Medium::Dielectric { eps0 },
        })
    }

    /// Reflection of both modes at (x, y), 0 ≤ x ≤ y. x = 0 dispatches to the
    /// zero-frequency limit forms.
    pub fn reflect(&self, x: f64, y: f64) -> Result<(ModeReflection, ModeReflection)> {
        match *self {
            Medium::Ideal => Ok((ModeReflection::PERFECT, ModeReflection::PERFECT)),
            Medium::Plasma { wt } => Ok(plasma_reflection(wt, x, y)),
            Medium::Drude { wt, gt } => {
                if x == 0.0 {
                    if gt == 0.0 {
                        return Ok(plasma_reflection(wt, x, y));
                    }
                    return Err(CasimirError::Indeterminate(
                        "Drude perpendicular reflection at zero frequency".into(),
                    ));
                }
                let m = wt * wt * x / (x + gt);
                Ok(general_reflection(1.0 + m / (x * x), m, y))
            }
            Medium::Dielectric { eps0 } => Ok(general_reflection(eps0, (eps0 - 1.0) * x * x, y)),
        }
    }
}

/// Plasma reflection written with εx² = x² + ω̃², finite at x = 0.
fn plasma_reflection(wt: f64, x: f64, y: f64) -> (ModeReflection, ModeReflection) {
    let w2 = wt * wt;
    let s = (w2 + y * y).sqrt();
    let n = y * (x * x + w2);
    let d = x * x * s;
    let par = ModeReflection {
        r_sq: ((n - d) / (n + d)).powi(2),
        one_minus_r_sq: 4.0 * n * d / (n + d).powi(2),
    };
    (par, perp_reflection(w2, s, y))
}

/// Reflection for finite ε at x > 0 (or any ε when m = (ε−1)x² = 0).
fn general_reflection(eps: f64, m: f64, y: f64) -> (ModeReflection, ModeReflection) {
    let s = (m + y * y).sqrt();
    let ey = eps * y;
    let par = ModeReflection {
        r_sq: ((ey - s) / (ey + s)).powi(2),
        one_minus_r_sq: 4.0 * ey * s / (ey + s).powi(2),
    };
    (par, perp_reflection(m, s, y))
}

fn perp_reflection(m: f64, s: f64, y: f64) -> ModeReflection {
    let sum = s + y;
    ModeReflection {
        r_sq: (m / (sum * sum)).powi(2),
        one_minus_r_sq: 4.0 * s * y / (sum * sum),
    }
}

/// Squared reflection coefficients of both polarizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionSq {
    pub r_par_sq: f64,
    pub r_perp_sq: f64,
}

/// Squared reflection coefficients at dimensionless frequency x and
/// momentum y for plates a apart.
pub fn reflection_sq(model: &MaterialModel, a: f64, x: f64, y: f64) -> Result<ReflectionSq> {
    if !(x >= 0.0) || !(y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(domain(format!("need finite x, y >= 0, got x = {x}, y = {y}")));
    }
    if x > y {
        return Err(domain(format!("need y >= x, got x = {x}, y = {y}")));
    }
    let (p, q) = Medium::new(model, a)?.reflect(x, y)?;
    Ok(ReflectionSq {
        r_par_sq: p.r_sq,
        r_perp_sq: q.r_sq,
    })
}

/// Diagonal scattering coefficients s₁₁ of both polarizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringS11 {
    pub s_par: f64,
    pub s_perp: f64,
}

/// s₁₁ for the gap of width a at imaginary frequency ξ and transverse
/// momentum k⊥.
///
/// For ξ > 0 this is the full scattering solution. At ξ = 0 the limit values
/// are returned with their a-independent factors dropped, which is the form
/// that enters the renormalized free energy.
pub fn scattering_s11(model: &MaterialModel, a: f64, xi: f64, k_perp: f64) -> Result<ScatteringS11> {
    check_gap(a, k_perp)?;
    if xi == 0.0 {
        let report = zero_frequency_report(model, a, k_perp)?;
        let perp = match report.perp_limit {
            ModeLimit::WellDefined { value } => value,
            ModeLimit::Indeterminate => {
                return Err(CasimirError::Indeterminate(format!(
                    "s11 perpendicular for {} at xi = 0",
                    model.name()
                )))
            }
        };
        let par = match report.par_limit {
            ModeLimit::WellDefined { value } => value,
            ModeLimit::Indeterminate => unreachable!("parallel limit is always defined"),
        };
        return Ok(ScatteringS11 {
            s_par: par,
            s_perp: perp,
        });
    }
    let (lp, lq) = ln_scattering_s11(model, a, xi, k_perp)?;
    Ok(ScatteringS11 {
        s_par: lp.exp(),
        s_perp: lq.exp(),
    })
}

/// ln s₁₁ of both modes for ξ > 0, evaluated in log space so that the
/// e^{±qa} factors cannot overflow.
pub fn ln_scattering_s11(model: &MaterialModel, a: f64, xi: f64, k_perp: f64) -> Result<(f64, f64)> {
    check_gap(a, k_perp)?;
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(domain(format!(
            "log scattering coefficients need xi > 0, got {xi}"
        )));
    }
    let q = ((xi / SPEED_OF_LIGHT).powi(2) + k_perp * k_perp).sqrt();
    let decay = (-2.0 * q * a).exp();
    match permittivity(model, xi)? {
        Permittivity::Infinite => {
            // ε → ∞: both coefficients reduce to (1 − e^{−2aq})⁻¹ up to
            // a-linear and constant terms.
            let v = -(-decay).ln_1p();
            Ok((v, v))
        }
        Permittivity::Finite(eps) => {
            let k = (eps * (xi / SPEED_OF_LIGHT).powi(2) + k_perp * k_perp).sqrt();
            let one = |e: f64| {
                let r = (e * q - k) / (e * q + k);
                (4.0 * e * k * q).ln() - 2.0 * (e * q + k).ln() + (k - q) * a - (-(r * r) * decay).ln_1p()
            };
            Ok((one(eps), one(1.0)))
        }
    }
}

fn check_gap(a: f64, k_perp: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("separation must be > 0, got {a}")));
    }
    if !(k_perp > 0.0) || !k_perp.is_finite() {
        return Err(domain(format!("k_perp must be > 0, got {k_perp}")));
    }
    Ok(())
}

/// Zero-frequency value of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ModeLimit {
    WellDefined { value: f64 },
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroFrequencyClass {
    PlasmaWellPosed,
    DielectricWellPosed,
    DrudeIndeterminate,
    IdealByPrescriptionOnly,
}

/// How the scattering problem behaves as ξ → 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroFrequencyReport {
    /// lim ξ²ε(iξ) in rad²/s²; `None` for the ideal metal (ε is infinite).
    pub xi2_eps_limit: Option<f64>,
    /// q₀ = k⊥, 1/m.
    pub q0: f64,
    /// k₀ = √(lim ξ²ε / c² + k⊥²), 1/m.
    pub k0: f64,
    pub q0_equals_k0: bool,
    pub par_limit: ModeLimit,
    pub perp_limit: ModeLimit,
    pub classification: ZeroFrequencyClass,
}

pub fn zero_frequency_report(model: &MaterialModel, a: f64, k_perp: f64) -> Result<ZeroFrequencyReport> {
    model.validate()?;
    check_gap(a, k_perp)?;
    let decay = (-2.0 * a * k_perp).exp();
    let perfect = ModeLimit::WellDefined {
        value: 1.0 / -(-2.0 * a * k_perp).exp_m1(),
    };
    let lim = match *model {
        MaterialModel::IdealMetal => None,
        MaterialModel::Plasma { omega_p } => Some(omega_p * omega_p),
        MaterialModel::Drude { omega_p, gamma: 0.0 } => Some(omega_p * omega_p),
        MaterialModel::Drude { .. } | MaterialModel::Dielectric { .. } => Some(0.0),
    };
    let q0 = k_perp;
    let k0 = match lim {
        Some(l) => (l / SPEED_OF_LIGHT.powi(2) + k_perp * k_perp).sqrt(),
        None => f64::INFINITY,
    };
    let q0_equals_k0 = k0 == q0;
    let (par_limit, perp_limit, classification) = match *model {
        MaterialModel::IdealMetal => (perfect, perfect, ZeroFrequencyClass::IdealByPrescriptionOnly),
        MaterialModel::Dielectric { eps0 } => {
            let ratio = ((eps0 + 1.0) / (eps0 - 1.0)).powi(2);
            (
                ModeLimit::WellDefined {
                    value: 1.0 / (ratio - decay),
                },
                // q₀ = k₀ and unitarity of the lossless medium give s₁₁ = 1.
                ModeLimit::WellDefined { value: 1.0 },
                ZeroFrequencyClass::DielectricWellPosed,
            )
        }
        MaterialModel::Plasma { .. } | MaterialModel::Drude { .. } if !q0_equals_k0 => {
            // Squared ratio, consistent with the reflection coefficient.
            let ratio = ((k0 + q0) / (k0 - q0)).powi(2);
            (
                perfect,
                ModeLimit::WellDefined {
                    value: 1.0 / (ratio - decay),
                },
                ZeroFrequencyClass::PlasmaWellPosed,
            )
        }
        _ => (
            perfect,
            ModeLimit::Indeterminate,
            ZeroFrequencyClass::DrudeIndeterminate,
        ),
    };
    Ok(ZeroFrequencyReport {
        xi2_eps_limit: lim,
        q0,
        k0,
        q0_equals_k0,
        par_limit,
        perp_limit,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::ev_to_angular_frequency;
    use approx::assert_relative_eq;

    fn al() -> MaterialModel {
        MaterialModel::aluminium()
    }

    #[test]
    fn permittivity_examples() {
        let wp = 1e16;
        let p = MaterialModel::Plasma { omega_p: wp };
        assert_eq!(permittivity(&p, wp).unwrap(), Permittivity::Finite(2.0));
        assert!(matches!(permittivity(&p, 0.0), Err(CasimirError::Pole(_))));
        let d = MaterialModel::Dielectric { eps0: 3.0 };
        assert_eq!(permittivity(&d, 0.0).unwrap(), Permittivity::Finite(3.0));
        assert_eq!(permittivity(&d, 1e15).unwrap(), Permittivity::Finite(3.0));
        assert_eq!(
            permittivity(&MaterialModel::IdealMetal, 1e14).unwrap(),
            Permittivity::Infinite
        );
        let dr0 = MaterialModel::Drude {
            omega_p: wp,
            gamma: 0.0,
        };
        for xi in [1e12, 1e14, 1e16, 1e18] {
            let (Permittivity::Finite(e1), Permittivity::Finite(e2)) =
                (permittivity(&dr0, xi).unwrap(), permittivity(&p, xi).unwrap())
            else {
                panic!("finite permittivity expected");
            };
            assert_relative_eq!(e1, e2, max_relative = 1e-14);
        }
    }

    #[test]
    fn drude_converges_to_plasma() {
        let wp = ev_to_angular_frequency(12.5);
        let p = MaterialModel::Plasma { omega_p: wp };
        for xi in [1e11, 1e13, 1e15, 1e17] {
            let ep = permittivity(&p, xi).unwrap().finite().unwrap();
            let mut prev = f64::INFINITY;
            for g in [1e-2, 1e-6, 1e-10, 1e-14] {
                let d = MaterialModel::Drude {
                    omega_p: wp,
                    gamma: g * xi,
                };
                let ed = permittivity(&d, xi).unwrap().finite().unwrap();
                let rel = (ed - ep).abs() / ep;
                assert!(rel <= prev);
                prev = rel;
            }
            assert!(prev < 1e-10);
        }
    }

    #[test]
    fn ideal_reflects_perfectly() {
        for (x, y) in [(0.0, 1.0), (0.5, 0.5), (2.0, 9.0)] {
            let r = reflection_sq(&MaterialModel::IdealMetal, 1e-6, x, y).unwrap();
            assert_eq!((r.r_par_sq, r.r_perp_sq), (1.0, 1.0));
        }
    }

    #[test]
    fn plasma_zero_frequency_limit_form() {
        let a = 1e-6;
        let wt = 2.0 * a * ev_to_angular_frequency(12.5) / SPEED_OF_LIGHT;
        for y in [0.1, 1.0, 7.0] {
            let r = reflection_sq(&al(), a, 0.0, y).unwrap();
            let s = (y * y + wt * wt).sqrt();
            assert_eq!(r.r_par_sq, 1.0);
            assert_relative_eq!(r.r_perp_sq, ((s - y) / (s + y)).powi(2), max_relative = 1e-13);
            // continuity from x > 0
            let near = reflection_sq(&al(), a, 1e-7, y).unwrap();
            assert_relative_eq!(near.r_par_sq, r.r_par_sq, max_relative = 1e-9);
            assert_relative_eq!(near.r_perp_sq, r.r_perp_sq, max_relative = 1e-9);
        }
    }

    #[test]
    fn plasma_matches_direct_permittivity_formula() {
        let a = 0.3e-6;
        let wp = ev_to_angular_frequency(12.5);
        let (x, y) = (1.3, 2.9);
        let xi = x * SPEED_OF_LIGHT / (2.0 * a);
        let eps = permittivity(&al(), xi).unwrap().finite().unwrap();
        let s = ((eps - 1.0) * x * x + y * y).sqrt();
        let r = reflection_sq(&al(), a, x, y).unwrap();
        assert_relative_eq!(
            r.r_par_sq,
            ((eps * y - s) / (eps * y + s)).powi(2),
            max_relative = 1e-12
        );
        assert_relative_eq!(r.r_perp_sq, ((y - s) / (y + s)).powi(2), max_relative = 1e-12);
        assert!(wp > 0.0);
    }

    #[test]
    fn vanishing_penetration_depth_reflects_perfectly() {
        let r = reflection_sq(&MaterialModel::Plasma { omega_p: 1e22 }, 1e-6, 1.0, 2.0).unwrap();
        assert!((1.0 - r.r_par_sq) < 1e-6 && (1.0 - r.r_perp_sq) < 1e-6);
    }

    #[test]
    fn reflection_rejects_bad_arguments() {
        assert!(reflection_sq(&al(), 1e-6, 2.0, 1.0).is_err());
        assert!(reflection_sq(&al(), 1e-6, -1.0, 1.0).is_err());
        let drude = MaterialModel::Drude {
            omega_p: 1e16,
            gamma: 1e14,
        };
        assert!(matches!(
            reflection_sq(&drude, 1e-6, 0.0, 1.0),
            Err(CasimirError::Indeterminate(_))
        ));
        assert!(reflection_sq(&drude, 1e-6, 0.5, 1.0).is_ok());
    }

    #[test]
    fn plasma_grid_properties() {
        let a = 0.5e-6;
        for i in 1..40 {
            let y = 0.25 * i as f64;
            let mut prev = reflection_sq(&al(), a, 0.0, y).unwrap();
            for j in 1..=20 {
                let x = y * j as f64 / 20.0;
                let r = reflection_sq(&al(), a, x, y).unwrap();
                assert!(r.r_par_sq >= r.r_perp_sq * (1.0 - 1e-14), "x={x} y={y}");
                assert!(r.r_par_sq <= prev.r_par_sq + 1e-15);
                assert!(r.r_perp_sq <= prev.r_perp_sq + 1e-15);
                assert!((0.0..=1.0).contains(&r.r_par_sq) && (0.0..=1.0).contains(&r.r_perp_sq));
                prev = r;
            }
        }
    }

    #[test]
    fn s11_zero_frequency_limits() {
        let a: f64 = 1e-6;
        let k = 2e6;
        let decay = (-2.0 * a * k).exp();
        let ideal = 1.0 / (1.0 - decay);
        let s = scattering_s11(&al(), a, 0.0, k).unwrap();
        assert_relative_eq!(s.s_par, ideal, max_relative = 1e-13);
        let eps0: f64 = 3.0;
        let d = scattering_s11(&MaterialModel::Dielectric { eps0 }, a, 0.0, k).unwrap();
        assert_relative_eq!(
            d.s_par,
            1.0 / (((eps0 + 1.0) / (eps0 - 1.0)).powi(2) - decay),
            max_relative = 1e-13
        );
        assert_eq!(d.s_perp, 1.0);
        let drude = MaterialModel::Drude {
            omega_p: 1e16,
            gamma: 1e14,
        };
        assert!(matches!(
            scattering_s11(&drude, a, 0.0, k),
            Err(CasimirError::Indeterminate(_))
        ));
    }

    #[test]
    fn s11_a_dependence_matches_reflection_logs() {
        // ln s₁₁ and −ln(1 − r² e^{−2aq}) differ by terms at most linear in a,
        // so their second differences in a coincide.
        let xi = 3e14;
        let k = 4e6;
        let q = ((xi / SPEED_OF_LIGHT).powi(2) + k * k).sqrt();
        for model in [
            al(),
            MaterialModel::Dielectric { eps0: 3.0 },
            MaterialModel::IdealMetal,
        ] {
            let a0 = 0.4e-6;
            let h = 0.05e-6;
            let mut d_s = [0.0; 2];
            let mut d_r = [0.0; 2];
            for (i, a) in [a0 - h, a0, a0 + h].iter().enumerate() {
                let (lp, lq) = ln_scattering_s11(&model, *a, xi, k).unwrap();
                let x = 2.0 * a * xi / SPEED_OF_LIGHT;
                let y = 2.0 * a * q;
                let r = reflection_sq(&model, *a, x, y).unwrap();
                let w = [1.0, -2.0, 1.0][i];
                d_s[0] += w * lp;
                d_s[1] += w * lq;
                d_r[0] -= w * (-(r.r_par_sq) * (-y).exp()).ln_1p();
                d_r[1] -= w * (-(r.r_perp_sq) * (-y).exp()).ln_1p();
            }
            for m in 0..2 {
                assert_relative_eq!(d_s[m], d_r[m], max_relative = 1e-6, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn s11_a_dependent_part_vanishes_far_away() {
        let xi = 1e14;
        let k = 1e6;
        let model = al();
        let q = ((xi / SPEED_OF_LIGHT).powi(2) + k * k).sqrt();
        let far = 1e-3;
        let (lp, _) = ln_scattering_s11(&model, far, xi, k).unwrap();
        let eps = permittivity(&model, xi).unwrap().finite().unwrap();
        let kk = (eps * (xi / SPEED_OF_LIGHT).powi(2) + k * k).sqrt();
        let affine = (4.0 * eps * kk * q).ln() - 2.0 * (eps * q + kk).ln() + (kk - q) * far;
        assert!((lp - affine).abs() < 1e-12 * affine.abs().max(1.0));
    }

    #[test]
    fn zero_frequency_classification() {
        let a = 1e-6;
        let k = 1e6;
        let p = zero_frequency_report(&al(), a, k).unwrap();
        assert_eq!(p.classification, ZeroFrequencyClass::PlasmaWellPosed);
        assert!(!p.q0_equals_k0);
        let wp = al().plasma_frequency().unwrap();
        let kk = ((wp / SPEED_OF_LIGHT).powi(2) + k * k).sqrt();
        let expected = 1.0 / (((k + kk) / (k - kk)).powi(2) - (-2.0 * a * k).exp());
        match p.perp_limit {
            ModeLimit::WellDefined { value } => assert_relative_eq!(value, expected, max_relative = 1e-12),
            ModeLimit::Indeterminate => panic!("plasma must be well defined"),
        }
        let drude = MaterialModel::Drude {
            omega_p: wp,
            gamma: 1e13,
        };
        let d = zero_frequency_report(&drude, a, k).unwrap();
        assert_eq!(d.classification, ZeroFrequencyClass::DrudeIndeterminate);
        assert!(d.q0_equals_k0);
        assert_eq!(d.k0, k);
        assert_eq!(d.perp_limit, ModeLimit::Indeterminate);
        assert!(matches!(d.par_limit, ModeLimit::WellDefined { .. }));
        let di = zero_frequency_report(&MaterialModel::Dielectric { eps0: 3.0 }, a, k).unwrap();
        assert_eq!(di.classification, ZeroFrequencyClass::DielectricWellPosed);
        let id = zero_frequency_report(&MaterialModel::IdealMetal, a, k).unwrap();
        assert_eq!(id.classification, ZeroFrequencyClass::IdealByPrescriptionOnly);
    }

    #[test]
    fn drude_reflection_tends_to_plasma() {
        let a = 1e-6;
        let wp = ev_to_angular_frequency(12.5);
        let plasma = MaterialModel::Plasma { omega_p: wp };
        for (x, y) in [(0.3, 0.5), (2.0, 4.0), (10.0, 11.0)] {
            let rp = reflection_sq(&plasma, a, x, y).unwrap();
            let rd = reflection_sq(
                &MaterialModel::Drude {
                    omega_p: wp,
                    gamma: 1e-3,
                },
                a,
                x,
                y,
            )
            .unwrap();
            assert_relative_eq!(rd.r_par_sq, rp.r_par_sq, max_relative = 1e-10);
            assert_relative_eq!(rd.r_perp_sq, rp.r_perp_sq, max_relative = 1e-10);
        }
    }
}
