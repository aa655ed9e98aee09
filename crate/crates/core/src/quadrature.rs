//! Deterministic quadrature: Gauss–Legendre rules, adaptive Gauss–Kronrod,
//! and a Filon-type cosine transform for tabulated smooth functions.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{CasimirError, Result};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    (x, w)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// G7-K15 on [a, b] for a vector-valued integrand. Returns (Kronrod, |K − G|).
fn gk15<const N: usize>(f: &impl Fn(f64) -> [f64; N], a: f64, b: f64) -> ([f64; N], f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    let fc = f(c);
    for j in 0..N {
        k[j] = WGK[7] * fc[j];
        g[j] = WG[3] * fc[j];
    }
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        for j in 0..N {
            let s = f1[j] + f2[j];
            k[j] += WGK[i] * s;
            if i % 2 == 1 {
                g[j] += WG[i / 2] * s;
            }
        }
    }
    let mut err = 0.0f64;
    for j in 0..N {
        k[j] *= h;
        g[j] *= h;
        err = err.max((k[j] - g[j]).abs());
    }
    (k, err)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub intervals: usize,
}

/// Adaptive Gauss–Kronrod for several integrands sharing one subdivision.
/// The interval with the largest error is bisected first (ties go to the
/// leftmost), so the result depends only on the inputs.
pub fn integrate_gk<const N: usize>(
    f: impl Fn(f64) -> [f64; N],
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Integral<N>> {
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let mut total = [0.0; N];
        let mut err = 0.0;
        for p in &parts {
            for j in 0..N {
                total[j] += p.2[j];
            }
            err += p.3;
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if err.is_finite() && scale.is_finite() && err <= abs_tol.max(rel_tol * scale) {
            return Ok(Integral {
                value: total,
                error: err,
                intervals: parts.len(),
            });
        }
        if parts.len() >= max_subdivisions {
            return Err(CasimirError::NonConvergence {
                what: format!("adaptive quadrature on [{a}, {b}]"),
                error_estimate: err,
            });
        }
        let (idx, _) = parts.iter().enumerate().fold(
            (0, -1.0),
            |(bi, be), (i, p)| if p.3 > be { (i, p.3) } else { (bi, be) },
        );
        let (lo, hi, _, _) = parts[idx];
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts[idx] = (lo, mid, v1, e1);
        parts.insert(idx + 1, (mid, hi, v2, e2));
    }
}

/// Scalar convenience wrapper.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<(f64, f64)> {
    let r = integrate_gk(|x| [f(x)], a, b, rel_tol, abs_tol, 2000)?;
    Ok((r.value[0], r.error))
}

/// Nodes per Filon panel.
pub const FILON_NODES: usize = 8;

struct FilonBasis {
    nodes: [f64; FILON_NODES],
    /// Inverse Vandermonde matrix, values → monomial coefficients.
    inv: [[f64; FILON_NODES]; FILON_NODES],
}

fn filon_basis() -> &'static FilonBasis {
    static B: OnceLock<FilonBasis> = OnceLock::new();
    B.get_or_init(|| {
        let (x, _) = gauss_legendre(FILON_NODES);
        let mut nodes = [0.0; FILON_NODES];
        nodes.copy_from_slice(&x);
        let n = FILON_NODES;
        let mut m = vec![vec![0.0; 2 * n]; n];
        for i in 0..n {
            for k in 0..n {
                m[i][k] = nodes[i].powi(k as i32);
            }
            m[i][n + i] = 1.0;
        }
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))
                .unwrap();
            m.swap(col, piv);
            let d = m[col][col];
            for v in m[col].iter_mut() {
                *v /= d;
            }
            for r in 0..n {
                if r != col {
                    let f = m[r][col];
                    if f != 0.0 {
                        for c in 0..2 * n {
                            m[r][c] -= f * m[col][c];
                        }
                    }
                }
            }
        }
        let mut inv = [[0.0; FILON_NODES]; FILON_NODES];
        for k in 0..n {
            for i in 0..n {
                inv[k][i] = m[k][n + i];
            }
        }
        FilonBasis { nodes, inv }
    })
}

/// ∫_{−1}^{1} u^k e^{iθu} du for k < FILON_NODES.
fn moments(theta: f64) -> [Complex64; FILON_NODES] {
    let mut m = [Complex64::new(0.0, 0.0); FILON_NODES];
    if theta.abs() < 2.0 {
        for (k, mk) in m.iter_mut().enumerate() {
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..80 {
                let p = k + j;
                if p % 2 == 0 {
                    sum += term * (2.0 / (p as f64 + 1.0));
                }
                term *= Complex64::new(0.0, theta / (j as f64 + 1.0));
                if term.norm() < 1e-18 {
                    break;
                }
            }
            *mk = sum;
        }
    } else {
        let ith = Complex64::new(0.0, theta);
        let ep = Complex64::from_polar(1.0, theta);
        let em = Complex64::from_polar(1.0, -theta);
        m[0] = Complex64::new(2.0 * theta.sin() / theta, 0.0);
        for k in 1..FILON_NODES {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            m[k] = (ep - em * sign) / ith - m[k - 1] * (k as f64) / ith;
        }
    }
    m
}

/// A smooth function on [0, X] tabulated panel-wise, ready for exact
/// integration of its piecewise polynomial interpolant against cos(ωx).
#[derive(Debug, Clone)]
pub struct CosineTransform {
    centres: Vec<f64>,
    half_widths: Vec<f64>,
    coeffs: Vec<[f64; FILON_NODES]>,
}

impl CosineTransform {
    /// Abscissae at which the function must be sampled for the given panel
    /// edges, in panel order.
    pub fn sample_points(edges: &[f64]) -> Vec<f64> {
        let b = filon_basis();
        let mut out = Vec::with_capacity((edges.len() - 1) * FILON_NODES);
        for w in edges.windows(2) {
            let c = 0.5 * (w[0] + w[1]);
            let h = 0.5 * (w[1] - w[0]);
            for u in b.nodes {
                out.push(c + h * u);
            }
        }
        out
    }

    /// Builds the interpolant from values at `sample_points(edges)`.
    pub fn new(edges: &[f64], values: &[f64]) -> CosineTransform {
        assert_eq!(values.len(), (edges.len() - 1) * FILON_NODES);
        let b = filon_basis();
        let mut centres = Vec::new();
        let mut half_widths = Vec::new();
        let mut coeffs = Vec::new();
        for (p, w) in edges.windows(2).enumerate() {
            centres.push(0.5 * (w[0] + w[1]));
            half_widths.push(0.5 * (w[1] - w[0]));
            let v = &values[p * FILON_NODES..(p + 1) * FILON_NODES];
            let mut c = [0.0; FILON_NODES];
            for (k, ck) in c.iter_mut().enumerate() {
                *ck = (0..FILON_NODES).map(|i| b.inv[k][i] * v[i]).sum();
            }
            coeffs.push(c);
        }
        CosineTransform {
            centres,
            half_widths,
            coeffs,
        }
    }

    /// ∫₀^X f(x) cos(ωx) dx.
    pub fn transform(&self, omega: f64) -> f64 {
        let mut sum = 0.0;
        for ((c, h), co) in self.centres.iter().zip(&self.half_widths).zip(&self.coeffs) {
            let m = moments(omega * h);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..FILON_NODES {
                acc += m[k] * co[k];
            }
            sum += h * (Complex64::from_polar(1.0, omega * c) * acc).re;
        }
        sum
    }

    /// Odd derivatives f'(0), f'''(0), f⁽⁵⁾(0), f⁽⁷⁾(0) of the interpolant at
    /// the left end of the first panel.
    pub fn odd_derivatives_at_origin(&self) -> [f64; 4] {
        let c = &self.coeffs[0];
        let h = self.half_widths[0];
        // p(u) with x = centre + h u; the origin is u = −1.
        let mut out = [0.0; 4];
        for (i, order) in [1usize, 3, 5, 7].iter().enumerate() {
            let mut d = 0.0;
            for k in *order..FILON_NODES {
                let ff: f64 = (0..*order).map(|j| (k - j) as f64).product();
                let sign = if (k - order) % 2 == 0 { 1.0 } else { -1.0 };
                d += c[k] * ff * sign;
            }
            out[i] = d / h.powi(*order as i32);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1, 2, 5, 8, 20] {
            let (x, w) = gauss_legendre(n);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 {
                    2.0 / (deg as f64 + 1.0)
                } else {
                    0.0
                };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn adaptive_handles_peaks_and_is_deterministic() {
        let f = |x: f64| 1.0 / (1e-4 + (x - 0.3).powi(2));
        let exact = 100.0 * ((0.7f64 / 0.01).atan() + (0.3f64 / 0.01).atan());
        let (v, _) = integrate(f, 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert_relative_eq!(v, exact, max_relative = 1e-11);
        let (v2, _) = integrate(f, 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert_eq!(v.to_bits(), v2.to_bits());
    }

    #[test]
    fn adaptive_reports_non_convergence() {
        let r = integrate_gk(|x: f64| [x.abs().powf(-0.99)], -1.0, 1.0, 1e-14, 0.0, 10);
        assert!(matches!(r, Err(CasimirError::NonConvergence { .. })));
    }

    #[test]
    fn filon_moments_agree_across_branches() {
        for theta in [1.999_999, 2.000_001] {
            let m = moments(theta);
            let (x, w) = gauss_legendre(40);
            for (k, mk) in m.iter().enumerate() {
                let re: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(u, w)| w * u.powi(k as i32) * (theta * u).cos())
                    .sum();
                let im: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(u, w)| w * u.powi(k as i32) * (theta * u).sin())
                    .sum();
                assert!(
                    (mk.re - re).abs() < 1e-13 && (mk.im - im).abs() < 1e-13,
                    "k={k} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn cosine_transform_of_exponential() {
        let edges: Vec<f64> = (0..=240).map(|i| 0.25 * i as f64).collect();
        let pts = CosineTransform::sample_points(&edges);
        let vals: Vec<f64> = pts.iter().map(|x| (-x).exp()).collect();
        let ct = CosineTransform::new(&edges, &vals);
        for omega in [0.0, 0.3, 5.0, 40.0, 300.0] {
            assert_relative_eq!(
                ct.transform(omega),
                1.0 / (1.0 + omega * omega),
                max_relative = 1e-10
            );
        }
        let d = ct.odd_derivatives_at_origin();
        assert_relative_eq!(d[0], -1.0, max_relative = 1e-10);
        assert_relative_eq!(d[1], -1.0, max_relative = 1e-6);
    }
}
