//! Central finite differences. Used only as an independent oracle and for
//! derivatives of maps that are not available as jets.

use super::jet::{Jet2, Scale};

/// Second-order central differences (step `h`) for every jet slot.
pub fn fd_jet2<T: Scale<f64>>(f: impl Fn(f64, f64) -> T, u: f64, v: f64, h: f64) -> Jet2<T> {
    let c = f(u, v);
    let (pu, mu) = (f(u + h, v), f(u - h, v));
    let (pv, mv) = (f(u, v + h), f(u, v - h));
    let (pp, pm) = (f(u + h, v + h), f(u + h, v - h));
    let (mp, mm) = (f(u - h, v + h), f(u - h, v - h));
    let c2 = c + c;
    Jet2 {
        value: c,
        d_u: (pu - mu).scale(0.5 / h),
        d_v: (pv - mv).scale(0.5 / h),
        d_uu: (pu - c2 + mu).scale(1.0 / (h * h)),
        d_uv: (pp - pm - mp + mm).scale(0.25 / (h * h)),
        d_vv: (pv - c2 + mv).scale(1.0 / (h * h)),
    }
}

/// Fourth-order stencils; error O(h^4) plus rounding O(eps/h^2).
pub fn fd_jet2_hi<T: Scale<f64>>(f: impl Fn(f64, f64) -> T, u: f64, v: f64, h: f64) -> Jet2<T> {
    let d1 = |g: &dyn Fn(f64) -> T| {
        (g(-2.0) - g(2.0) + (g(1.0) - g(-1.0)).scale(8.0)).scale(1.0 / (12.0 * h))
    };
    let d2 = |g: &dyn Fn(f64) -> T| {
        let c = g(0.0);
        (-g(2.0) - g(-2.0) + (g(1.0) + g(-1.0)).scale(16.0) - c.scale(30.0))
            .scale(1.0 / (12.0 * h * h))
    };
    let along_u = |k: f64| f(u + k * h, v);
    let along_v = |k: f64| f(u, v + k * h);
    // mixed: first u-derivative of the first v-derivative, both 4th order
    let dv_at = |k: f64| {
        let g = |m: f64| f(u + k * h, v + m * h);
        d1(&g)
    };
    Jet2 {
        value: f(u, v),
        d_u: d1(&along_u),
        d_v: d1(&along_v),
        d_uu: d2(&along_u),
        d_uv: d1(&dv_at),
        d_vv: d2(&along_v),
    }
}

/// Central differences of a univariate map: (f', f'', f''').
pub fn fd_deriv3<T: Scale<f64>>(f: impl Fn(f64) -> T, s: f64, h: f64) -> [T; 3] {
    let (p1, m1, p2, m2) = (f(s + h), f(s - h), f(s + 2.0 * h), f(s - 2.0 * h));
    let c = f(s);
    [
        (p1 - m1).scale(0.5 / h),
        (p1 - c - c + m1).scale(1.0 / (h * h)),
        (p2 - m2 - (p1 - m1).scale(2.0)).scale(0.5 / (h * h * h)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let f = |u: f64, v: f64| u * u * v + 3.0 * v * v;
        let j = fd_jet2(f, 0.5, -1.0, 1e-3);
        assert!((j.d_u - (-1.0)).abs() < 1e-8);
        assert!((j.d_uv - 1.0).abs() < 1e-6);
        assert!((j.d_vv - 6.0).abs() < 1e-5);
        let k = fd_jet2_hi(f, 0.5, -1.0, 1e-2);
        assert!((k.d_uu - (-2.0)).abs() < 1e-9);
        assert!((k.d_uv - 1.0).abs() < 1e-9);
    }
}
