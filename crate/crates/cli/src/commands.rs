//! Subcommand implementations. Each returns the rendered output.

use casimir_core::asymptotics::{k_factor, regime_recommendation, total_force};
use casimir_core::dielectric::{zero_frequency_report, ModeLimit};
use casimir_core::quantities::MICROMETRE;
use casimir_core::roughness::{
    self, averaged_total_force, recommended_force_method_for_roughness, RoughnessFormula,
};
use casimir_core::{EvaluationPoint, Geometry, MaterialModel, Method, Profile, QuadratureSettings};
use rayon::prelude::*;

use crate::output::{table_style, Cell, Table};
use crate::{usage, Common, GeometryArg, MaterialArg, MethodArg};

const FORCE_COLUMNS: [&str; 12] = [
    "a_um",
    "T_K",
    "method",
    "F_T0",
    "dF_par",
    "dF_perp",
    "dF_order0",
    "dF_order1",
    "dF_order2",
    "F_total",
    "k",
    "tol_est",
];

/// Radius used for sphere tables when none is given; k does not depend on it.
const TABLE_RADIUS_UM: f64 = 1000.0;

fn geometry(c: &Common) -> Geometry {
    match c.geometry {
        GeometryArg::Plates => Geometry::Plates,
        GeometryArg::Sphere => Geometry::Sphere,
    }
}

fn material(c: &Common) -> anyhow::Result<MaterialModel> {
    Ok(match c.material {
        MaterialArg::Ideal => MaterialModel::IdealMetal,
        MaterialArg::Plasma => MaterialModel::plasma_ev(c.plasma_frequency_ev)?,
        MaterialArg::Dielectric => {
            let eps0 = c
                .eps0
                .ok_or_else(|| usage("--material dielectric needs --eps0"))?;
            MaterialModel::dielectric(eps0)?
        }
        MaterialArg::Drude => {
            let gamma = c
                .gamma_ev
                .ok_or_else(|| usage("--material drude needs --gamma-ev"))?;
            MaterialModel::drude_ev(c.plasma_frequency_ev, gamma)?
        }
    })
}

fn settings(c: &Common) -> anyhow::Result<QuadratureSettings> {
    if !(c.rel_tol > 0.0 && c.rel_tol < 1.0) {
        return Err(usage(format!("--rel-tol must be in (0, 1), got {}", c.rel_tol)));
    }
    Ok(QuadratureSettings::with_rel_tol(c.rel_tol)?)
}

fn method(m: MethodArg) -> Option<Method> {
    match m {
        MethodArg::Exact => Some(Method::Exact),
        MethodArg::LowT => Some(Method::LowT),
        MethodArg::HighT => Some(Method::HighT),
        MethodArg::Numeric => Some(Method::Numeric),
        MethodArg::Auto => None,
    }
}

fn parse_sweep(spec: &str) -> anyhow::Result<Vec<f64>> {
    let bad = || {
        usage(format!(
            "--sweep expects start:stop:count[:log|linear], got `{spec}`"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    let log = match parts.get(3).map(|s| s.trim()) {
        None | Some("linear") | Some("lin") => false,
        Some("log") => true,
        Some(_) => return Err(bad()),
    };
    if count == 0 {
        return Err(usage("sweep count must be at least 1"));
    }
    if log && !(start > 0.0 && stop > 0.0) {
        return Err(usage("a logarithmic sweep needs positive endpoints"));
    }
    Ok((0..count)
        .map(|i| {
            let f = if count == 1 {
                0.0
            } else {
                i as f64 / (count - 1) as f64
            };
            if log {
                start * (stop / start).powf(f)
            } else {
                start + (stop - start) * f
            }
        })
        .collect())
}

fn separations(c: &Common, need_sweep: bool) -> anyhow::Result<Vec<f64>> {
    match (&c.sweep, c.separation.is_empty()) {
        (Some(_), false) => Err(usage("give either --separation or --sweep, not both")),
        (Some(s), true) => parse_sweep(s),
        (None, _) if need_sweep => Err(usage("sweep needs --sweep start:stop:count[:log|linear]")),
        (None, true) => Err(usage("no separation given (--separation or --sweep)")),
        (None, false) => Ok(c.separation.clone()),
    }
}

fn point(c: &Common, geometry: Geometry, a_um: f64) -> anyhow::Result<EvaluationPoint> {
    let p = EvaluationPoint::micrometres(a_um, c.temperature)?;
    Ok(match geometry {
        Geometry::Plates => p,
        Geometry::Sphere => {
            let r = c
                .radius_um
                .ok_or_else(|| usage("sphere geometry needs --radius-um"))?;
            p.with_radius(r * MICROMETRE)?
        }
    })
}

fn force_row(
    c: &Common,
    g: Geometry,
    model: &MaterialModel,
    q: &QuadratureSettings,
    a_um: f64,
) -> anyhow::Result<Vec<Cell>> {
    let p = point(c, g, a_um)?;
    let m = method(c.method).unwrap_or_else(|| regime_recommendation(g, &p).recommended);
    let f = total_force(g, &p, model, m, c.order as usize, q)?;
    let by_order = f.correction.by_order;
    let order = |k: usize| by_order.map(|o| o[k]);
    Ok(vec![
        Cell::sci(a_um),
        Cell::sci(c.temperature),
        Cell::text(m.name()),
        Cell::sci(f.zero_temperature),
        Cell::opt(f.correction.per_mode.map(|s| s.par)),
        Cell::opt(f.correction.per_mode.map(|s| s.perp)),
        Cell::opt(order(0)),
        Cell::opt(order(1)),
        Cell::opt(order(2)),
        Cell::sci(f.total),
        Cell::sci(f.k),
        Cell::sci(f.error_estimate),
    ])
}

/// `force` and `sweep`: one row per separation, in input order.
pub fn force(c: &Common, need_sweep: bool) -> anyhow::Result<String> {
    let g = geometry(c);
    let model = material(c)?;
    let q = settings(c)?;
    let seps = separations(c, need_sweep)?;
    if g == Geometry::Sphere && c.radius_um.is_none() {
        return Err(usage("sphere geometry needs --radius-um"));
    }
    let rows = seps
        .par_iter()
        .map(|&a| force_row(c, g, &model, &q, a))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut t = Table::new(&FORCE_COLUMNS);
    t.rows = rows;
    Ok(t.render(c.output))
}

/// Separations of the reference tables, μm.
pub const TABLE_SEPARATIONS: [f64; 13] = [0.1, 0.3, 0.5, 0.7, 0.9, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0];

/// Where the reference tables print asymptotic values: low-T up to this
/// separation, high-T from the second one on.
fn table_columns(which: u8) -> (f64, f64) {
    match which {
        1 => (4.0, 4.0),
        _ => (4.0, 3.0),
    }
}

pub fn table(which: u8, c: &Common) -> anyhow::Result<String> {
    let g = if which == 1 {
        Geometry::Plates
    } else {
        Geometry::Sphere
    };
    let model = material(c)?;
    let q = settings(c)?;
    let (low_upto, high_from) = table_columns(which);
    let radius = c.radius_um.unwrap_or(TABLE_RADIUS_UM);
    let rows = TABLE_SEPARATIONS
        .par_iter()
        .map(|&a| -> anyhow::Result<Vec<Cell>> {
            let mut p = EvaluationPoint::micrometres(a, c.temperature)?;
            if g == Geometry::Sphere {
                p = p.with_radius(radius * MICROMETRE)?;
            }
            let k = |m: Method| k_factor(g, &p, &model, m, &q).map(|k| k.k);
            let low = if a <= low_upto {
                table_style(k(Method::LowT)?)
            } else {
                Cell::Blank
            };
            let high = if a >= high_from {
                table_style(k(Method::HighT)?)
            } else {
                Cell::Blank
            };
            Ok(vec![
                Cell::Num(format!("{a}")),
                table_style(k(Method::Exact)?),
                low,
                high,
            ])
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut t = Table::new(&["a_um", "k_exact", "k_lowT", "k_highT"]);
    t.rows = rows;
    Ok(t.render(c.output))
}

fn limit_cell(l: ModeLimit) -> Cell {
    match l {
        ModeLimit::WellDefined { value } => Cell::sci(value),
        ModeLimit::Indeterminate => Cell::text("INDETERMINATE"),
    }
}

pub fn limits(c: &Common) -> anyhow::Result<String> {
    let model = material(c)?;
    let a_um = match c.separation.as_slice() {
        [] => 1.0,
        [a] => *a,
        _ => return Err(usage("limits takes a single --separation")),
    };
    let k_perp = c.k_perp / MICROMETRE;
    let r = zero_frequency_report(&model, a_um * MICROMETRE, k_perp)?;
    let mut t = Table::new(&["quantity", "value"]);
    let mut row = |name: &str, v: Cell| t.rows.push(vec![Cell::text(name), v]);
    row("material", Cell::text(model.name()));
    row("a_um", Cell::sci(a_um));
    row("k_perp_per_m", Cell::sci(k_perp));
    row("xi2_eps_limit", Cell::opt(r.xi2_eps_limit));
    row("q0_per_m", Cell::sci(r.q0));
    row("k0_per_m", Cell::sci(r.k0));
    row("q0_equals_k0", Cell::text(r.q0_equals_k0.to_string()));
    row("par", limit_cell(r.par_limit));
    row("perp", limit_cell(r.perp_limit));
    row("classification", Cell::text(format!("{:?}", r.classification)));
    Ok(t.render(c.output))
}

/// flat | two-point:<A_nm> | sinusoid:<A_nm>:<period_um>[:<phase>] | grid file.
/// Returns the profile and the mean removed from a grid, in metres.
pub fn parse_profile(spec: &str) -> anyhow::Result<(Profile, f64)> {
    let bad = || usage(format!("cannot parse profile `{spec}`"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    let profile = match parts[0].trim() {
        "flat" if parts.len() == 1 => Profile::Flat,
        "two-point" | "twopoint" if parts.len() == 2 => Profile::TwoPoint {
            amplitude: num(parts[1])? * 1e-9,
        },
        "sinusoid" | "sinusoidal" if (3..=4).contains(&parts.len()) => Profile::Sinusoidal {
            amplitude: num(parts[1])? * 1e-9,
            period: num(parts[2])? * MICROMETRE,
            phase: parts.get(3).map_or(Ok(0.0), |s| num(s))?,
        },
        "flat" | "two-point" | "twopoint" | "sinusoid" | "sinusoidal" => return Err(bad()),
        _ => return Ok(roughness::load_grid(std::path::Path::new(spec))?),
    };
    Ok((profile, 0.0))
}

fn formula_tag(f: RoughnessFormula) -> &'static str {
    match f {
        RoughnessFormula::LowTAsymptotic => "lowT_asymptotic",
        RoughnessFormula::ExactSeries => "exact_series",
        RoughnessFormula::Negligible => "negligible",
    }
}

pub fn roughness(c: &Common) -> anyhow::Result<String> {
    let g = geometry(c);
    let model = material(c)?;
    let q = settings(c)?;
    let spec = c
        .profile
        .as_deref()
        .ok_or_else(|| usage("roughness needs --profile"))?;
    let (profile, shift) = parse_profile(spec)?;
    let seps = separations(c, false)?;
    if g == Geometry::Sphere && c.radius_um.is_none() {
        return Err(usage("sphere geometry needs --radius-um"));
    }
    let rows = seps
        .par_iter()
        .map(|&a| -> anyhow::Result<Vec<Cell>> {
            let p = point(c, g, a)?;
            let avg = averaged_total_force(&profile, g, &p, &model, method(c.method), &q)?;
            let used = avg.formula_used.map_or("", |m| m.name());
            Ok(vec![
                Cell::sci(a),
                Cell::sci(c.temperature),
                Cell::text(spec),
                Cell::text(formula_tag(recommended_force_method_for_roughness(&p))),
                Cell::text(used),
                Cell::sci(avg.flat_value),
                Cell::sci(avg.value),
                Cell::sci(avg.enhancement),
                Cell::sci(avg.samples as f64),
                Cell::sci(shift / 1e-9),
            ])
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut t = Table::new(&[
        "a0_um",
        "T_K",
        "profile",
        "regime",
        "method",
        "F_flat",
        "F_rough",
        "enhancement",
        "samples",
        "mean_shift_nm",
    ]);
    t.rows = rows;
    Ok(t.render(c.output))
}
