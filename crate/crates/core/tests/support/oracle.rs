//! Independent reference values computed by brute-force quadrature.
//!
//! Nothing here calls the library's own quadrature or special functions.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// ∫_a^b f by composite Gauss–Legendre on `panels` equal panels.
pub fn composite(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, nodes: usize) -> f64 {
    let (x, w) = gauss_legendre(nodes);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            s += wi * f(c + 0.5 * h * xi);
        }
        sum += 0.5 * h * s;
    }
    sum
}

/// ∫₀^y x^{2m} cos(bx) dx for m ≤ 2.
pub fn cos_moment(m: u32, b: f64, y: f64) -> f64 {
    let z = b * y;
    if z < 2.0 {
        let mut sum = 0.0;
        let mut term = 1.0; // (−1)^j z^{2j}/(2j)!
        for j in 0..40 {
            sum += term / (2 * m + 2 * j + 1) as f64;
            term *= -z * z / ((2 * j + 1) * (2 * j + 2)) as f64;
        }
        return y.powi(2 * m as i32 + 1) * sum;
    }
    let (s, c) = z.sin_cos();
    match m {
        0 => s / b,
        1 => y * y * s / b + 2.0 * y * c / (b * b) - 2.0 * s / b.powi(3),
        2 => {
            y.powi(4) * s / b + 4.0 * y.powi(3) * c / (b * b)
                - 12.0 * y * y * s / b.powi(3)
                - 24.0 * y * c / b.powi(4)
                + 24.0 * s / b.powi(5)
        }
        _ => unreachable!("moment order above 2"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geom {
    Plates,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pol {
    Par,
    Perp,
}

/// 1/(e^y − 1), e^y/(e^y − 1)², e^y(e^y + 1)/(e^y − 1)³.
fn bose_family(y: f64) -> (f64, f64, f64) {
    let d = y.exp_m1();
    let e = y.exp();
    (1.0 / d, e / (d * d), e * (e + 1.0) / (d * d * d))
}

/// Order-k coefficient of the integrand written as w(y)·x^{2m}.
pub fn expansion_factor(g: Geom, p: Pol, k: usize, y: f64) -> (f64, u32) {
    let (n, n1, n2) = bose_family(y);
    match (g, p, k) {
        (Geom::Plates, _, 0) => (n, 0),
        (Geom::Plates, Pol::Par, 1) => (-2.0 * n1 / y, 1),
        (Geom::Plates, Pol::Par, 2) => (2.0 * n2 / (y * y), 2),
        (Geom::Plates, Pol::Perp, 1) => (-2.0 * y * n1, 0),
        (Geom::Plates, Pol::Perp, 2) => (2.0 * y * y * n2, 0),
        (Geom::Sphere, _, 0) => ((-(-y).exp_m1()).ln(), 0),
        (Geom::Sphere, Pol::Par, 1) => (2.0 * n / y, 1),
        (Geom::Sphere, Pol::Par, 2) => (-2.0 * n1 / (y * y), 2),
        (Geom::Sphere, Pol::Perp, 1) => (2.0 * y * n, 0),
        (Geom::Sphere, Pol::Perp, 2) => (-2.0 * y * y * n1, 0),
        _ => unreachable!("order above 2"),
    }
}

/// The exact plasma integrand (Bose factor for plates, log for the sphere)
/// at δ = δ₀/a, for checking the expansion by finite differences.
pub fn exact_integrand(g: Geom, p: Pol, delta: f64, x: f64, y: f64) -> f64 {
    let w2 = 4.0 / (delta * delta);
    let s = (y * y + w2).sqrt();
    let r = match p {
        Pol::Par => {
            let num = y * (x * x + w2);
            let den = x * x * s;
            (num - den) / (num + den)
        }
        Pol::Perp => (s - y) / (s + y),
    };
    let r2 = r * r;
    match g {
        Geom::Plates => r2 / (y.exp() - r2),
        Geom::Sphere => (1.0 - r2 * (-y).exp()).ln(),
    }
}

/// ∫_0^∞ f with geometric panels toward the origin (ratio 2 down to
/// 1e-14, none wider than `h`), then panels of width at most `h` out to `end`.
pub fn half_line(f: impl Fn(f64) -> f64, h: f64, end: f64) -> f64 {
    let mut sum = 0.0;
    let mut hi = 1.0;
    while hi > 1e-14 {
        let panels = (0.5 * hi / h).ceil() as usize;
        sum += composite(&f, 0.5 * hi, hi, panels, 16);
        hi *= 0.5;
    }
    let panels = ((end - 1.0) / h).ceil() as usize;
    sum + composite(&f, 1.0, end, panels, 16)
}

/// ∫₀^∞ y^p dy ∫₀^y cos(bx) c_k(x, y) dx, p = 2 (plates) or 1 (sphere).
pub fn mode_coefficient(g: Geom, p: Pol, k: usize, b: f64) -> f64 {
    let pow = match g {
        Geom::Plates => 2,
        Geom::Sphere => 1,
    };
    let f = |y: f64| {
        let (w, m) = expansion_factor(g, p, k, y);
        y.powi(pow) * w * cos_moment(m, b, y)
    };
    half_line(f, (PI / b).min(0.5), 70.0)
}

/// ∫₀^∞ (dy/y) e^y/(e^y − 1)² [sin(by) − by cos(by)].
pub fn sine_integral_direct(b: f64) -> f64 {
    let f = |y: f64| {
        let (_, n1, _) = bose_family(y);
        let z = b * y;
        let bracket = if z < 0.5 {
            // z³/3 − z⁵/30 + z⁷/840 − z⁹/45360
            let z2 = z * z;
            z * z2 * (1.0 / 3.0 - z2 * (1.0 / 30.0 - z2 * (1.0 / 840.0 - z2 / 45360.0)))
        } else {
            z.sin() - z * z.cos()
        };
        n1 * bracket / y
    };
    half_line(f, (PI / b).min(0.5), 70.0)
}
