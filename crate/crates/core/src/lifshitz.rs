//! Full numerical Lifshitz evaluation with no expansion in δ₀/a.
//!
//! Everything is written in x = 2aξ/c and y = 2aq. Two per-mode kernels
//! cover both geometries:
//!
//! * force: G(x) = ∫_x^∞ y² r²/(e^y − r²) dy (plates pressure),
//! * energy: H(x) = ∫_x^∞ y ln(1 − r² e^{−y}) dy (plate free energy and,
//!   through the proximity force theorem, the sphere-plate force).
//!
//! The Matsubara form samples the kernel at x_l = 2πl/t. The Poisson form
//! needs ∫₀^∞ K(x) cos(ltx) dx. K is tabulated once and the cosine
//! transforms are taken exactly for its piecewise interpolant.
//!
//! For real metals K is not analytic at x = 0: it carries x² ln x (finite ε)
//! or x⁴ ln x (plasma) terms, which make the transforms decay with odd as
//! well as even powers of 1/ω. The table is therefore graded geometrically
//! towards the origin, and terms with lt beyond a cutoff are summed from a
//! fit Σ_n b_n/ω^n (n = 2…7) to transforms just past the cutoff.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::dielectric::{Medium, ModeReflection};
use crate::error::{CasimirError, Result};
use crate::quadrature::{integrate_gk, CosineTransform};
use crate::quantities::{
    EvaluationPoint, Geometry, MaterialModel, Mode, ModeSplit, BOLTZMANN, HBAR, SPEED_OF_LIGHT,
};
use crate::specfun::hurwitz_unchecked;

/// Powers of 1/ω kept in the fitted tail.
const TAIL_POWERS: [i32; 6] = [2, 3, 4, 5, 6, 7];
/// Fit abscissae as multiples of the first omitted frequency.
const TAIL_NODES: [f64; 6] = [1.0, 1.3, 1.7, 2.3, 3.1, 4.2];

/// Width of the uniform panels on which the kernel is tabulated.
const PANEL_WIDTH: f64 = 0.25;
/// Below x = 1 consecutive panel edges grow by this ratio, which keeps the
/// interpolation error of the x^{2k} ln x terms near 1e-10.
const GRADING_RATIO: f64 = 1.25;
/// First graded edge; the kernel's variation below it is negligible.
const GRADED_START: f64 = 1e-9;
/// The kernel is tabulated on [0, TABLE_END]; beyond it K < 1e-22.
const TABLE_END: f64 = 64.0;
/// Poisson terms with lt above this come from the endpoint expansion.
const POISSON_DIRECT_LIMIT: f64 = 40.0;
/// Matsubara terms are summed in parallel batches of this size.
const MATSUBARA_BATCH: u64 = 16;

/// How many frequency terms to keep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LMaxPolicy {
    /// Stop once the remainder bound is below the tolerance.
    TailBound,
    /// Sum exactly l = 1..=n with no tail.
    Explicit(u64),
}

/// Tolerances of the numerical evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// Floor on the absolute error of the dimensionless inner integrals.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub l_max: LMaxPolicy,
    /// Inner integrals run over y ∈ [x, x + cutoff]; the integrand decays as e^{−y}.
    pub decay_cutoff: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_subdivisions: 400,
            l_max: LMaxPolicy::TailBound,
            decay_cutoff: 80.0,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        let q = QuadratureSettings {
            rel_tol,
            ..Default::default()
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(CasimirError::Config(format!(
                "rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(CasimirError::Config(format!(
                "abs_tol must be >= 0, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 10 {
            return Err(CasimirError::Config(format!(
                "max_subdivisions must be >= 10, got {}",
                self.max_subdivisions
            )));
        }
        if !(self.decay_cutoff >= 40.0) {
            return Err(CasimirError::Config(format!(
                "decay_cutoff must be >= 40, got {}",
                self.decay_cutoff
            )));
        }
        Ok(())
    }

    fn inner_rel_tol(&self) -> f64 {
        (1e-3 * self.rel_tol).max(1e-13)
    }
}

/// Which way the frequency sum is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumForm {
    Matsubara,
    Poisson,
}

/// A force split into its zero-temperature part and thermal correction.
///
/// Attractive forces are negative, in N/m² for plates and N for a sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceBreakdown {
    pub total: f64,
    pub per_mode: ModeSplit,
    pub t0_part: f64,
    pub t0_per_mode: ModeSplit,
    pub temperature_correction: f64,
    pub correction_per_mode: ModeSplit,
    /// Highest frequency index summed explicitly.
    pub l_max: u64,
    pub error_estimate: f64,
}

impl ForceBreakdown {
    fn assemble(t0: ModeSplit, corr: ModeSplit, l_max: u64, error_estimate: f64) -> Self {
        let per_mode = t0.add(&corr);
        ForceBreakdown {
            total: t0.total() + corr.total(),
            per_mode,
            t0_part: t0.total(),
            t0_per_mode: t0,
            temperature_correction: corr.total(),
            correction_per_mode: corr,
            l_max,
            error_estimate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kernel {
    Force,
    Energy,
}

impl Kernel {
    #[inline]
    fn integrand(self, r: &ModeReflection, y: f64) -> f64 {
        match self {
            Kernel::Force => y * y * r.bose(y),
            Kernel::Energy => y * r.log_factor(y),
        }
    }
}

fn medium_for(model: &MaterialModel, a: f64) -> Result<Medium> {
    if let MaterialModel::Drude { .. } = model {
        model.ensure_finite_temperature_force()?;
    }
    Medium::new(model, a)
}

/// Both modes of K(x) with the quadrature error estimate.
fn kernel_at(medium: &Medium, kernel: Kernel, x: f64, q: &QuadratureSettings) -> Result<([f64; 2], f64)> {
    let f = |u: f64| {
        let y = x + u;
        match medium.reflect(x, y) {
            Ok((par, perp)) => [kernel.integrand(&par, y), kernel.integrand(&perp, y)],
            Err(_) => [f64::NAN; 2],
        }
    };
    let r = integrate_gk(
        f,
        0.0,
        q.decay_cutoff,
        q.inner_rel_tol(),
        q.abs_tol,
        q.max_subdivisions,
    )?;
    Ok((r.value, r.error))
}

/// Kernel tabulated for cosine transforms.
struct KernelTable {
    par: CosineTransform,
    perp: CosineTransform,
    /// ∫|quadrature error| dx over the table.
    error: f64,
}

impl KernelTable {
    fn build(medium: &Medium, kernel: Kernel, q: &QuadratureSettings) -> Result<KernelTable> {
        let edges = table_edges();
        let nodes = CosineTransform::sample_points(&edges);
        let values: Vec<([f64; 2], f64)> = nodes
            .par_iter()
            .map(|&x| kernel_at(medium, kernel, x, q))
            .collect::<Result<_>>()?;
        let par: Vec<f64> = values.iter().map(|v| v.0[0]).collect();
        let perp: Vec<f64> = values.iter().map(|v| v.0[1]).collect();
        let mean_err = values.iter().map(|v| v.1).sum::<f64>() / values.len() as f64;
        Ok(KernelTable {
            par: CosineTransform::new(&edges, &par),
            perp: CosineTransform::new(&edges, &perp),
            error: mean_err * TABLE_END,
        })
    }

    fn transform(&self, omega: f64) -> ModeSplit {
        ModeSplit::new(self.par.transform(omega), self.perp.transform(omega))
    }
}

/// Geometric panels on (0, 1], then uniform panels up to the table end.
fn table_edges() -> Vec<f64> {
    let mut graded = Vec::new();
    let mut e = 1.0;
    while e > GRADED_START {
        graded.push(e);
        e /= GRADING_RATIO;
    }
    let mut edges = vec![0.0];
    edges.extend(graded.iter().rev());
    let panels = ((TABLE_END - 1.0) / PANEL_WIDTH).round() as usize;
    edges.extend((1..=panels).map(|i| 1.0 + i as f64 * PANEL_WIDTH));
    edges
}

/// Σ_{l>l0} ∫K cos(ltx) dx from a fit of Σ_n b_n (ω₀/ω)^n, ω₀ = (l0+1)t, and
/// the change when the highest power is dropped.
fn fitted_tail(ct: &CosineTransform, t: f64, l0: u64) -> (f64, f64) {
    let n0 = (l0 + 1) as f64;
    let w0 = n0 * t;
    let values: Vec<f64> = TAIL_NODES.iter().map(|s| ct.transform(s * w0)).collect();
    let sum_with = |k: usize| -> f64 {
        let mut m: Vec<Vec<f64>> = TAIL_NODES[..k]
            .iter()
            .map(|s| TAIL_POWERS[..k].iter().map(|&p| s.powi(-p)).collect())
            .collect();
        let b = solve(&mut m, &mut values[..k].to_vec());
        TAIL_POWERS[..k]
            .iter()
            .zip(&b)
            .map(|(&p, bn)| bn * n0.powi(p) * hurwitz_unchecked(p as f64, n0))
            .sum()
    };
    let full = sum_with(TAIL_POWERS.len());
    let reduced = sum_with(TAIL_POWERS.len() - 1);
    (full, (full - reduced).abs())
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve(m: &mut [Vec<f64>], rhs: &mut [f64]) -> Vec<f64> {
    let n = rhs.len();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap_or(c);
        m.swap(c, p);
        rhs.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
            rhs[r] -= f * rhs[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| m[r][k] * x[k]).sum();
        x[r] = (rhs[r] - s) / m[r][r];
    }
    x
}

/// Dimensionless Poisson sums: ∫K and 2Σ_{l≥1}∫K cos(ltx).
struct PoissonSums {
    t0: ModeSplit,
    correction: ModeSplit,
    l_max: u64,
    error: f64,
}

fn poisson_sums(
    medium: &Medium,
    kernel: Kernel,
    t: Option<f64>,
    q: &QuadratureSettings,
) -> Result<PoissonSums> {
    let table = KernelTable::build(medium, kernel, q)?;
    let t0 = table.transform(0.0);
    let Some(t) = t else {
        return Ok(PoissonSums {
            t0,
            correction: ModeSplit::default(),
            l_max: 0,
            error: table.error,
        });
    };
    let (l_max, with_tail) = match q.l_max {
        LMaxPolicy::Explicit(n) => (n, false),
        LMaxPolicy::TailBound => ((POISSON_DIRECT_LIMIT / t).ceil().max(3.0) as u64, true),
    };
    let terms: Vec<ModeSplit> = (1..=l_max)
        .into_par_iter()
        .map(|l| table.transform(l as f64 * t))
        .collect();
    let mut direct = ModeSplit::default();
    for term in &terms {
        direct = direct.add(term);
    }
    let mut error = table.error;
    if with_tail {
        let (tp, ep) = fitted_tail(&table.par, t, l_max);
        let (tq, eq) = fitted_tail(&table.perp, t, l_max);
        direct = direct.add(&ModeSplit::new(tp, tq));
        error += 2.0 * (ep + eq);
    }
    Ok(PoissonSums {
        t0,
        correction: direct.scale(2.0),
        l_max,
        error,
    })
}

/// Dimensionless Matsubara sum K(0) + 2Σ_{l≥1} K(x_l).
fn matsubara_sum(
    medium: &Medium,
    kernel: Kernel,
    t: f64,
    q: &QuadratureSettings,
) -> Result<(ModeSplit, u64, f64)> {
    let (k0, mut error) = kernel_at(medium, kernel, 0.0, q)?;
    let mut sum = ModeSplit::new(k0[0], k0[1]);
    let x_of = |l: u64| 2.0 * PI * l as f64 / t;
    let min_l = (10.0 / t).ceil() as u64;
    let mut small_run = 0;
    let mut l = 0;
    let mut last = 0.0f64;
    loop {
        let stop = match q.l_max {
            LMaxPolicy::Explicit(n) => l >= n,
            LMaxPolicy::TailBound => small_run >= 3 && l >= min_l,
        };
        if stop {
            break;
        }
        let hi = match q.l_max {
            LMaxPolicy::Explicit(n) => (l + MATSUBARA_BATCH).min(n),
            LMaxPolicy::TailBound => l + MATSUBARA_BATCH,
        };
        let batch: Vec<([f64; 2], f64)> = (l + 1..=hi)
            .into_par_iter()
            .map(|j| kernel_at(medium, kernel, x_of(j), q))
            .collect::<Result<_>>()?;
        for (v, e) in batch {
            l += 1;
            let term = ModeSplit::new(2.0 * v[0], 2.0 * v[1]);
            sum = sum.add(&term);
            error += 2.0 * e;
            last = term.total();
            // Thermal corrections can be 1e-7 of the sum, so converge far
            // below the tolerance on the total.
            if last.abs() < 1e-9 * q.rel_tol * sum.total().abs() {
                small_run += 1;
            } else {
                small_run = 0;
            }
        }
    }
    // Terms fall off at least like e^{−2π/t} per step.
    let ratio = (-2.0 * PI / t).exp();
    error += last.abs() * ratio / (1.0 - ratio);
    Ok((sum, l, error))
}

fn plates_poisson_prefactor(a: f64) -> f64 {
    -HBAR * SPEED_OF_LIGHT / (32.0 * PI * PI * a.powi(4))
}

fn energy_poisson_prefactor(a: f64) -> f64 {
    HBAR * SPEED_OF_LIGHT / (32.0 * PI * PI * a.powi(3))
}

fn from_poisson(s: PoissonSums, prefactor: f64) -> ForceBreakdown {
    ForceBreakdown::assemble(
        s.t0.scale(prefactor),
        s.correction.scale(prefactor),
        s.l_max,
        s.error * prefactor.abs(),
    )
}

/// Matsubara result split using the Poisson l = 0 term as the T = 0 part.
fn from_matsubara(
    medium: &Medium,
    kernel: Kernel,
    point: &EvaluationPoint,
    q: &QuadratureSettings,
    matsubara_prefactor: f64,
    poisson_prefactor: f64,
) -> Result<ForceBreakdown> {
    let t = point.require_t()?;
    let (sum, l, err) = matsubara_sum(medium, kernel, t, q)?;
    let total = sum.scale(matsubara_prefactor);
    let zero = poisson_sums(medium, kernel, None, q)?;
    let t0 = zero.t0.scale(poisson_prefactor);
    let corr = ModeSplit::new(total.par - t0.par, total.perp - t0.perp);
    Ok(ForceBreakdown::assemble(
        t0,
        corr,
        l,
        err * matsubara_prefactor.abs() + zero.error * poisson_prefactor.abs(),
    ))
}

/// Free energy per unit area of two plates, J/m², from the Matsubara sum.
pub fn free_energy_plates(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
) -> Result<f64> {
    q.validate()?;
    let t = point.require_t()?;
    let a = point.separation;
    let medium = medium_for(model, a)?;
    let (sum, _, _) = matsubara_sum(&medium, Kernel::Energy, t, q)?;
    Ok(BOLTZMANN * point.temperature / (16.0 * PI * a * a) * sum.total())
}

/// Pressure between two plates, N/m², from the Matsubara sum.
pub fn force_plates_matsubara(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
) -> Result<f64> {
    Ok(force_plates_matsubara_breakdown(point, model, q)?.total)
}

/// Matsubara pressure with the mode split; the T = 0 part is the Poisson l = 0 term.
pub fn force_plates_matsubara_breakdown(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
) -> Result<ForceBreakdown> {
    q.validate()?;
    let a = point.separation;
    let medium = medium_for(model, a)?;
    from_matsubara(
        &medium,
        Kernel::Force,
        point,
        q,
        -BOLTZMANN * point.temperature / (16.0 * PI * a.powi(3)),
        plates_poisson_prefactor(a),
    )
}

/// Pressure between two plates from the Poisson-resummed form. At T = 0
/// only the l = 0 term is kept and the correction is exactly zero.
pub fn force_plates_poisson(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
) -> Result<ForceBreakdown> {
    q.validate()?;
    let a = point.separation;
    let medium = medium_for(model, a)?;
    let s = poisson_sums(&medium, Kernel::Force, point.t(), q)?;
    Ok(from_poisson(s, plates_poisson_prefactor(a)))
}

/// Numerical thermal correction to the plate pressure; `None` sums both modes.
pub fn temperature_correction_numeric(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
    mode: Option<Mode>,
) -> Result<f64> {
    point.require_t()?;
    let f = force_plates_poisson(point, model, q)?;
    Ok(match mode {
        Some(m) => f.correction_per_mode.get(m),
        None => f.temperature_correction,
    })
}

/// Sphere-plate force from the proximity force theorem, N.
pub fn force_sphere_plate(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
    form: SumForm,
) -> Result<ForceBreakdown> {
    q.validate()?;
    let r = point.require_radius()?;
    let a = point.separation;
    let medium = medium_for(model, a)?;
    let poisson = 2.0 * PI * r * energy_poisson_prefactor(a);
    match form {
        SumForm::Poisson => {
            let s = poisson_sums(&medium, Kernel::Energy, point.t(), q)?;
            Ok(from_poisson(s, poisson))
        }
        SumForm::Matsubara => from_matsubara(
            &medium,
            Kernel::Energy,
            point,
            q,
            2.0 * PI * r * BOLTZMANN * point.temperature / (16.0 * PI * a * a),
            poisson,
        ),
    }
}

/// Numerical thermal correction to the sphere-plate force, N.
pub fn temperature_correction_sphere_numeric(
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
    mode: Option<Mode>,
) -> Result<f64> {
    point.require_t()?;
    let f = force_sphere_plate(point, model, q, SumForm::Poisson)?;
    Ok(match mode {
        Some(m) => f.correction_per_mode.get(m),
        None => f.temperature_correction,
    })
}

/// Zero-temperature force (the l = 0 Poisson term) for either geometry.
pub fn zero_temperature_force(
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
) -> Result<f64> {
    let cold = EvaluationPoint {
        temperature: 0.0,
        ..*point
    };
    Ok(match geometry {
        Geometry::Plates => force_plates_poisson(&cold, model, q)?.t0_part,
        Geometry::Sphere => force_sphere_plate(&cold, model, q, SumForm::Poisson)?.t0_part,
    })
}

/// Numerical force of either geometry in the Poisson form.
pub fn force(
    geometry: Geometry,
    point: &EvaluationPoint,
    model: &MaterialModel,
    q: &QuadratureSettings,
) -> Result<ForceBreakdown> {
    match geometry {
        Geometry::Plates => force_plates_poisson(point, model, q),
        Geometry::Sphere => force_sphere_plate(point, model, q, SumForm::Poisson),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ZETA3;
    use approx::assert_relative_eq;

    fn casimir_ideal(a: f64) -> f64 {
        -PI * PI * HBAR * SPEED_OF_LIGHT / (240.0 * a.powi(4))
    }

    fn q() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn settings_validation() {
        assert!(QuadratureSettings::with_rel_tol(0.0).is_err());
        assert!(QuadratureSettings::with_rel_tol(1e-2).is_err());
        assert!(QuadratureSettings::with_rel_tol(1e-6).is_ok());
        let bad = QuadratureSettings {
            max_subdivisions: 5,
            ..q()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn ideal_zero_temperature_closed_form() {
        for a_um in [0.1, 1.0, 7.0] {
            let p = EvaluationPoint::micrometres(a_um, 0.0).unwrap();
            let f = force_plates_poisson(&p, &MaterialModel::IdealMetal, &q()).unwrap();
            assert_relative_eq!(f.t0_part, casimir_ideal(p.separation), max_relative = 1e-9);
            assert_eq!(f.temperature_correction, 0.0);
            assert_eq!(f.total, f.t0_part);
        }
    }

    #[test]
    fn breakdown_sums_exactly() {
        let p = EvaluationPoint::micrometres(1.0, 300.0).unwrap();
        let f = force_plates_poisson(&p, &MaterialModel::aluminium(), &q()).unwrap();
        assert_eq!(f.total, f.t0_part + f.temperature_correction);
        assert_relative_eq!(f.per_mode.total(), f.total, max_relative = 1e-15);
    }

    #[test]
    fn matsubara_equals_poisson_for_aluminium() {
        let p = EvaluationPoint::micrometres(1.0, 300.0).unwrap();
        let m = force_plates_matsubara(&p, &MaterialModel::aluminium(), &q()).unwrap();
        let s = force_plates_poisson(&p, &MaterialModel::aluminium(), &q()).unwrap();
        assert_relative_eq!(m, s.total, max_relative = 1e-8);
    }

    #[test]
    fn corrections_agree_per_mode_at_low_temperature() {
        // At 0.1 μm the correction is ~1e-5 of the force and dominated by
        // the non-analytic small-x behaviour of the kernel.
        let p = EvaluationPoint::micrometres(0.1, 300.0).unwrap();
        for m in [
            MaterialModel::aluminium(),
            MaterialModel::dielectric(3.0).unwrap(),
        ] {
            let a = force_plates_matsubara_breakdown(&p, &m, &q()).unwrap();
            let b = force_plates_poisson(&p, &m, &q()).unwrap();
            for mode in Mode::BOTH {
                assert_relative_eq!(
                    a.correction_per_mode.get(mode),
                    b.correction_per_mode.get(mode),
                    max_relative = 1e-5
                );
            }
        }
    }

    #[test]
    fn ideal_high_temperature_classical_limit() {
        let p = EvaluationPoint::micrometres(10.0, 300.0).unwrap();
        let f = force_plates_matsubara(&p, &MaterialModel::IdealMetal, &q()).unwrap();
        let a = p.separation;
        let classical = -ZETA3 * BOLTZMANN * 300.0 / (4.0 * PI * a.powi(3));
        assert_relative_eq!(f, classical, max_relative = 5e-3);
    }

    #[test]
    fn force_is_minus_energy_derivative() {
        let p = EvaluationPoint::micrometres(1.0, 300.0).unwrap();
        let m = MaterialModel::IdealMetal;
        let h = 1e-3 * p.separation;
        let e = |a: f64| free_energy_plates(&p.at_separation(a).unwrap(), &m, &q()).unwrap();
        let fd = -(e(p.separation + h) - e(p.separation - h)) / (2.0 * h);
        let f = force_plates_matsubara(&p, &m, &q()).unwrap();
        assert_relative_eq!(fd, f, max_relative = 1e-4);
    }

    #[test]
    fn energy_negative_and_decaying() {
        let m = MaterialModel::aluminium();
        let e1 = free_energy_plates(&EvaluationPoint::micrometres(0.5, 300.0).unwrap(), &m, &q()).unwrap();
        let e2 = free_energy_plates(&EvaluationPoint::micrometres(1.0, 300.0).unwrap(), &m, &q()).unwrap();
        assert!(e1 < 0.0 && e2 < 0.0 && e2.abs() < e1.abs());
    }

    #[test]
    fn sphere_is_two_pi_r_energy() {
        let p = EvaluationPoint::micrometres(1.0, 300.0)
            .unwrap()
            .with_radius(100e-6)
            .unwrap();
        let m = MaterialModel::aluminium();
        let s = force_sphere_plate(&p, &m, &q(), SumForm::Matsubara).unwrap();
        let e = free_energy_plates(&p, &m, &q()).unwrap();
        assert_relative_eq!(s.total, 2.0 * PI * 100e-6 * e, max_relative = 1e-9);
        let sp = force_sphere_plate(&p, &m, &q(), SumForm::Poisson).unwrap();
        assert_relative_eq!(s.total, sp.total, max_relative = 1e-8);
    }

    #[test]
    fn sphere_needs_radius() {
        let p = EvaluationPoint::micrometres(1.0, 300.0).unwrap();
        assert!(matches!(
            force_sphere_plate(&p, &MaterialModel::IdealMetal, &q(), SumForm::Poisson),
            Err(CasimirError::Config(_))
        ));
    }

    #[test]
    fn drude_is_refused() {
        let p = EvaluationPoint::micrometres(1.0, 300.0).unwrap();
        let d = MaterialModel::drude_ev(12.5, 0.05).unwrap();
        assert!(matches!(
            force_plates_poisson(&p, &d, &q()),
            Err(CasimirError::Indeterminate(_))
        ));
        assert!(matches!(
            free_energy_plates(&p, &d, &q()),
            Err(CasimirError::Indeterminate(_))
        ));
    }

    #[test]
    fn conductivity_weakens_and_modes_share_sign() {
        let p = EvaluationPoint::micrometres(1.0, 300.0).unwrap();
        let f = force_plates_poisson(&p, &MaterialModel::aluminium(), &q()).unwrap();
        let c = f.t0_part / casimir_ideal(p.separation);
        assert!(c > 0.85 && c < 1.0, "C = {c}");
        for m in Mode::BOTH {
            assert!(f.per_mode.get(m) < 0.0);
            assert!(f.correction_per_mode.get(m) < 0.0);
        }
        let weaker = force_plates_poisson(&p, &MaterialModel::plasma_ev(6.0).unwrap(), &q()).unwrap();
        assert!(weaker.total.abs() < f.total.abs());
    }

    #[test]
    fn explicit_l_max_is_honoured() {
        let p = EvaluationPoint::micrometres(5.0, 300.0).unwrap();
        let q1 = QuadratureSettings {
            l_max: LMaxPolicy::Explicit(2),
            ..q()
        };
        let f = force_plates_poisson(&p, &MaterialModel::IdealMetal, &q1).unwrap();
        assert_eq!(f.l_max, 2);
        let g = force_plates_poisson(&p, &MaterialModel::IdealMetal, &q()).unwrap();
        assert!((f.total - g.total).abs() > 0.0);
    }

    #[test]
    fn repeatable_bit_for_bit() {
        let p = EvaluationPoint::micrometres(0.7, 300.0).unwrap();
        let a = force_plates_poisson(&p, &MaterialModel::aluminium(), &q()).unwrap();
        let b = force_plates_poisson(&p, &MaterialModel::aluminium(), &q()).unwrap();
        assert_eq!(a.total.to_bits(), b.total.to_bits());
    }
}
