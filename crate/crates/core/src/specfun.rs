//! Special functions used by the closed-form corrections.
//!
//! Everything is evaluated through `q = e^{-x}` forms so that the hyperbolic
//! factors never overflow, however large the argument.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Result};

/// ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_2;
/// ζ(5).
pub const ZETA5: f64 = 1.036_927_755_143_37;

/// Zeta values appearing in the asymptotic expansions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaConstants {
    pub zeta3: f64,
    pub zeta5: f64,
}

pub fn zeta_constants() -> ZetaConstants {
    ZetaConstants {
        zeta3: ZETA3,
        zeta5: ZETA5,
    }
}

/// coth(u) and 1/sinh²(u) at one argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperbolicKernel {
    pub u: f64,
    pub coth_val: f64,
    pub csch2_val: f64,
}

impl HyperbolicKernel {
    /// coth(u) − 1, accurate when coth(u) is close to one.
    pub fn coth_minus_one(&self) -> f64 {
        let q = (-2.0 * self.u).exp();
        2.0 * q / -(-2.0 * self.u).exp_m1()
    }
}

/// Stable coth(u) and csch²(u) for u > 0.
pub fn hyperbolic_kernel(u: f64) -> Result<HyperbolicKernel> {
    if !(u > 0.0) || u.is_nan() {
        return Err(domain(format!("hyperbolic kernel needs u > 0, got {u}")));
    }
    let q = (-2.0 * u).exp();
    let one_minus_q = -(-2.0 * u).exp_m1();
    Ok(HyperbolicKernel {
        u,
        coth_val: (1.0 + q) / one_minus_q,
        csch2_val: 4.0 * q / (one_minus_q * one_minus_q),
    })
}

/// Li₂(z) for 0 ≤ z ≤ 1.
pub fn dilog(z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(domain(format!("dilog is only provided on [0, 1], got {z}")));
    }
    Ok(dilog_unit(z))
}

pub(crate) fn dilog_unit(z: f64) -> f64 {
    if z == 1.0 {
        return PI * PI / 6.0;
    }
    if z <= 0.5 {
        dilog_series(z)
    } else {
        // Euler reflection.
        PI * PI / 6.0 - z.ln() * (-z).ln_1p() - dilog_series(1.0 - z)
    }
}

fn dilog_series(z: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut zk = z;
    let mut k = 1.0f64;
    while zk > 1e-18 * sum.max(f64::MIN_POSITIVE) || k < 2.0 {
        sum += zk / (k * k);
        zk *= z;
        k += 1.0;
        if zk == 0.0 {
            break;
        }
    }
    sum
}

const BERNOULLI_2J: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta Σ_{k≥0} (q+k)^{-s} for s > 1, q > 0, by Euler–Maclaurin.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(domain(format!("Hurwitz zeta needs s > 1, got {s}")));
    }
    if !(q > 0.0) {
        return Err(domain(format!("Hurwitz zeta needs q > 0, got {q}")));
    }
    Ok(hurwitz_unchecked(s, q))
}

pub(crate) fn hurwitz_unchecked(s: f64, q: f64) -> f64 {
    let n = 12 + s.ceil() as usize;
    let mut head = 0.0;
    for k in (0..n).rev() {
        head += (q + k as f64).powf(-s);
    }
    let x = q + n as f64;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut xp = x.powf(-s - 1.0);
    for (j, b) in BERNOULLI_2J.iter().enumerate() {
        let term = b / fact * rising * xp;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let m = 2 * j as u32 + 2;
        rising *= (s + m as f64 - 1.0) * (s + m as f64);
        fact *= (m + 1) as f64 * (m + 2) as f64;
        xp /= x * x;
    }
    head + tail
}

/// ζ(2k) for k ≥ 1.
pub fn zeta_even(k: u32) -> f64 {
    assert!(k >= 1, "zeta_even needs k >= 1");
    match k {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        _ => hurwitz_unchecked(2.0 * k as f64, 1.0),
    }
}

/// n-th derivative of the Bose factor φ(z) = 1/(e^z − 1), 0 ≤ n ≤ 4, z > 0.
pub fn bose_derivative(n: u32, z: f64) -> f64 {
    let q = (-z).exp();
    let d = -(-z).exp_m1();
    match n {
        0 => q / d,
        1 => -q / (d * d),
        2 => q * (1.0 + q) / d.powi(3),
        3 => -q * (1.0 + q * (4.0 + q)) / d.powi(4),
        4 => q * (1.0 + q * (11.0 + q * (11.0 + q))) / d.powi(5),
        _ => panic!("bose_derivative supports orders 0..=4, got {n}"),
    }
}

/// n-th derivative of π/(e^{2πb} − 1), the exponentially small part of
/// (π/2)coth(πb).
pub fn coth_tail_derivative(n: u32, b: f64) -> f64 {
    let w = 2.0 * PI;
    PI * w.powi(n as i32) * bose_derivative(n, w * b)
}

/// −(b/2)·ln(1 − e^{−2πb}) + Li₂(e^{−2πb})/(4π); exponentially small for large b.
pub fn log_dilog_tail(b: f64) -> f64 {
    let q = (-2.0 * PI * b).exp();
    -0.5 * b * (-q).ln_1p() + dilog_unit(q) / (4.0 * PI)
}
