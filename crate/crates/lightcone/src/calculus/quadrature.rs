//! Composite Gauss–Legendre quadrature along segments and polylines in ℂ.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per panel.
    pub order: usize,
    /// Initial panel count.
    pub panels: usize,
    /// Absolute tolerance on the change under panel doubling.
    pub tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            order: 12,
            panels: 1,
            tol: 1e-10,
            max_doublings: 14,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec {
            tol,
            ..Default::default()
        }
    }
}

/// Nodes and weights on [-1, 1] via Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
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
    (x, w)
}

fn composite(
    f: &dyn Fn(C64) -> C64,
    a: C64,
    b: C64,
    nodes: &(Vec<f64>, Vec<f64>),
    panels: usize,
) -> Result<C64> {
    let h = (b - a) / panels as f64;
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        let mut part = C64::new(0.0, 0.0);
        for (x, w) in nodes.0.iter().zip(&nodes.1) {
            let z = mid + h * (0.5 * x);
            let fz = f(z);
            if !(fz.re.is_finite() && fz.im.is_finite()) {
                return Err(Error::SingularSample(format!("{z}")));
            }
            part += fz * *w;
        }
        acc += part * (h * 0.5);
    }
    Ok(acc)
}

/// ∫ f(z) dz along the straight segment from `a` to `b`.
pub fn integrate_segment(
    f: &dyn Fn(C64) -> C64,
    a: C64,
    b: C64,
    spec: &QuadratureSpec,
) -> Result<C64> {
    let nodes = gauss_legendre(spec.order.max(1));
    let mut panels = spec.panels.max(1);
    let mut prev = composite(f, a, b, &nodes, panels)?;
    for _ in 0..spec.max_doublings {
        panels *= 2;
        let next = composite(f, a, b, &nodes, panels)?;
        if (next - prev).norm() <= spec.tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergent(format!("segment {a} -> {b}")))
}

/// ∫ f(z) dz along the polyline through `pts`.
pub fn integrate_polyline(
    f: &dyn Fn(C64) -> C64,
    pts: &[C64],
    spec: &QuadratureSpec,
) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for w in pts.windows(2) {
        acc += integrate_segment(f, w[0], w[1], spec)?;
    }
    Ok(acc)
}

/// Real integral ∫_a^b f(s) ds.
pub fn integrate_real(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let g = |z: C64| C64::new(f(z.re), 0.0);
    integrate_segment(&g, C64::new(a, 0.0), C64::new(b, 0.0), spec).map(|z| z.re)
}
