//! Adaptive Dormand–Prince 5(4) for 2×2 complex matrix ODEs.

use crate::calculus::jet::{Carrier, Scale};
use crate::cone::Mat2;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSpec {
    /// Mixed absolute/relative tolerance on the local error.
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for OdeSpec {
    fn default() -> Self {
        OdeSpec {
            tol: 1e-10,
            max_steps: 200_000,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn err_norm(e: &Mat2, y0: &Mat2, y1: &Mat2, tol: f64) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let sc = tol * (1.0 + y0.0[i][j].norm().max(y1.0[i][j].norm()));
            m = m.max(e.0[i][j].norm() / sc);
        }
    }
    m
}

/// Integrates y' = rhs(s, y) from `s0` to `s1`, returning y(s1).
pub fn integrate_ode(
    rhs: &dyn Fn(f64, &Mat2) -> Mat2,
    y0: Mat2,
    s0: f64,
    s1: f64,
    spec: &OdeSpec,
) -> Result<Mat2> {
    let span = s1 - s0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut s = s0;
    let mut y = y0;
    let mut h = dir * (span.abs() * 1e-2).min(1e-2_f64.max(span.abs() * 1e-3));
    let mut k = [Mat2::identity(); 7];
    k[0] = rhs(s, &y);
    let mut steps = 0;
    while (s1 - s) * dir > 0.0 {
        if steps >= spec.max_steps {
            return Err(Error::NonConvergent(format!(
                "ODE exceeded {} steps at s = {s}",
                spec.max_steps
            )));
        }
        steps += 1;
        if (s + h - s1) * dir > 0.0 {
            h = s1 - s;
        }
        for st in 1..7 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(st) {
                if A[st][j] != 0.0 {
                    yi = yi + kj.scale(h * A[st][j]);
                }
            }
            k[st] = rhs(s + C[st] * h, &yi);
        }
        let mut y5 = y;
        let mut e = Mat2::zero();
        for i in 0..7 {
            y5 = y5 + k[i].scale(h * B5[i]);
            e = e + k[i].scale(h * (B5[i] - B4[i]));
        }
        if !y5.is_finite() {
            return Err(Error::NonConvergent(format!("non-finite state at s = {s}")));
        }
        let en = err_norm(&e, &y, &y5, spec.tol);
        if en <= 1.0 {
            s += h;
            y = y5;
            k[0] = k[6];
        }
        let fac = if en == 0.0 {
            5.0
        } else {
            (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= fac;
        if h.abs() < 1e-14 * span.abs().max(1.0) {
            return Err(Error::NonConvergent(format!(
                "step size underflow at s = {s}"
            )));
        }
    }
    Ok(y)
}
