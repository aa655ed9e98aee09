//! Library special functions against brute-force quadrature.

#![allow(clippy::needless_range_loop)]

#[path = "support/oracle.rs"]
mod oracle;

use casimir_core::perturbative::{coefficient, dilog_sine_integral};
use casimir_core::{Geometry, Mode};
use oracle::{Geom, Pol};

const CASES: [(Geom, Geometry); 2] = [(Geom::Plates, Geometry::Plates), (Geom::Sphere, Geometry::Sphere)];
const MODES: [(Pol, Mode); 2] = [(Pol::Par, Mode::Par), (Pol::Perp, Mode::Perp)];

#[test]
fn sine_integral_matches_quadrature() {
    let unit = dilog_sine_integral(1.0).unwrap();
    for b in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let lib = dilog_sine_integral(b).unwrap();
        let direct = oracle::sine_integral_direct(b);
        assert!(
            (lib - direct).abs() / unit.abs() < 1e-8,
            "b={b}: {lib} vs {direct}"
        );
    }
}

#[test]
fn coefficients_match_quadrature() {
    for t in [0.5, 2.0, 10.0] {
        for l in 1..=5 {
            let b = l as f64 * t;
            // Higher orders can be exponentially small; judge them on the
            // scale of the leading term, above the oracle's own round-off.
            let scale = oracle::mode_coefficient(Geom::Plates, Pol::Par, 0, b).abs();
            for (g, geometry) in CASES {
                for (p, mode) in MODES {
                    for k in 0..3 {
                        let lib = coefficient(geometry, mode, k, b).unwrap();
                        let direct = oracle::mode_coefficient(g, p, k, b);
                        let tol = 1e-8 * direct.abs().max(scale) + 1e-13;
                        assert!(
                            (lib - direct).abs() <= tol,
                            "{geometry:?} {mode:?} k={k} b={b}: {lib:e} vs {direct:e}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn sphere_leading_coefficient_matches_lattice_sum() {
    // ∫ y ln(1 − e^{−y}) sin(by)/b dy = −2 Σ_n (n² + b²)^{−2}
    for b in [0.5, 1.0, 5.0, 50.0] {
        let mut sum = 0.0;
        for n in (1..2_000_000).rev() {
            let d = (n as f64).powi(2) + b * b;
            sum += 1.0 / (d * d);
        }
        let exact = -2.0 * sum;
        let lib = coefficient(Geometry::Sphere, Mode::Par, 0, b).unwrap();
        assert!(((lib - exact) / exact).abs() < 1e-10, "b={b}: {lib} vs {exact}");
    }
}

#[test]
fn expansion_matches_exact_integrand() {
    // Taylor coefficients in δ from a quartic fit through small-δ samples
    // of the exact plasma integrand.
    let points = [(0.3, 0.9), (1.0, 2.5), (2.0, 2.0), (0.05, 4.0)];
    for (g, _) in CASES {
        for (p, _) in MODES {
            for &(x, y) in &points {
                let h = 2e-3;
                let f = |d: f64| oracle::exact_integrand(g, p, d, x, y);
                let c0 = oracle::expansion_factor(g, p, 0, y).0;
                let samples: Vec<f64> = (1..=4).map(|i| f(i as f64 * h) - c0).collect();
                let mut a = [[0.0; 5]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        a[i][j] = ((i + 1) as f64 * h).powi(j as i32 + 1);
                    }
                    a[i][4] = samples[i];
                }
                let c = solve4(a);
                for k in 1..=2 {
                    let (w, m) = oracle::expansion_factor(g, p, k, y);
                    let expect = w * x.powi(2 * m as i32);
                    let tol = 2e-4 * expect.abs().max(c0.abs());
                    assert!(
                        (c[k - 1] - expect).abs() < tol,
                        "{g:?} {p:?} k={k} x={x} y={y}: fit {} vs {expect}",
                        c[k - 1]
                    );
                }
            }
        }
    }
}

fn solve4(mut a: [[f64; 5]; 4]) -> [f64; 4] {
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..5 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][4] - s) / a[row][row];
    }
    x
}
