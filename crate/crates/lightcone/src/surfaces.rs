//! Immersions into Q³₊: lightlike Gauss map, fundamental forms, H and K,
//! graph surfaces and totally umbilic slices S[M, q].

use crate::calculus::fd::fd_jet2_hi;
use crate::calculus::jet::{Carrier, Jet2, Scale};
use crate::cone::{minkowski_inner as ip, HermMatrix, Mat2};
use crate::error::{Error, Result};
use nalgebra::{Matrix3, Matrix3x4, Vector3};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::sync::Arc;

pub type SurfaceFn = Arc<dyn Fn(f64, f64) -> Jet2<Mat2> + Send + Sync>;

#[derive(Clone)]
pub struct Immersion {
    f: SurfaceFn,
    /// u0, u1, v0, v1
    pub domain: [f64; 4],
    pub label: String,
}

impl std::fmt::Debug for Immersion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Immersion({}, {:?})", self.label, self.domain)
    }
}

impl Immersion {
    pub fn new(
        label: impl Into<String>,
        domain: [f64; 4],
        f: impl Fn(f64, f64) -> Jet2<Mat2> + Send + Sync + 'static,
    ) -> Self {
        Immersion {
            f: Arc::new(f),
            domain,
            label: label.into(),
        }
    }
    /// Wraps a closure written over coordinate jets.
    pub fn from_jets(
        label: impl Into<String>,
        domain: [f64; 4],
        f: impl Fn(Jet2<f64>, Jet2<f64>) -> Jet2<Mat2> + Send + Sync + 'static,
    ) -> Self {
        Immersion::new(label, domain, move |u, v| f(Jet2::var_u(u), Jet2::var_v(v)))
    }
    pub fn raw(&self, u: f64, v: f64) -> Jet2<Mat2> {
        (self.f)(u, v)
    }
    pub fn eval(&self, u: f64, v: f64) -> Jet2<HermMatrix> {
        self.raw(u, v).map(|m| HermMatrix::from_mat(&m))
    }
    pub fn point(&self, u: f64, v: f64) -> HermMatrix {
        self.eval(u, v).value
    }
    pub fn with_domain(mut self, domain: [f64; 4]) -> Self {
        self.domain = domain;
        self
    }
    /// Regular n×n sample grid of the domain (n ≥ 2).
    pub fn grid(&self, n: usize) -> Vec<(f64, f64)> {
        let [u0, u1, v0, v1] = self.domain;
        let n = n.max(2);
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let u = u0 + (u1 - u0) * i as f64 / (n - 1) as f64;
                let v = v0 + (v1 - v0) * j as f64 / (n - 1) as f64;
                out.push((u, v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalForms {
    pub e: f64,
    pub f_m: f64,
    pub g_m: f64,
    pub l: f64,
    pub m_m: f64,
    pub n_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureData {
    pub h: f64,
    pub k: f64,
}

/// (E, F, G) of the first fundamental form.
pub fn first_form(j: &Jet2<HermMatrix>) -> [f64; 3] {
    [ip(&j.d_u, &j.d_u), ip(&j.d_u, &j.d_v), ip(&j.d_v, &j.d_v)]
}

/// diag(σ, 1/σ)·X·diag(σ, 1/σ) with σ² = `s2`.
fn boost(x: &HermMatrix, s2: f64) -> HermMatrix {
    let (p, m) = ((x.x0 + x.x3) * s2, (x.x0 - x.x3) / s2);
    HermMatrix::new(0.5 * (p + m), x.x1, x.x2, 0.5 * (p - m))
}

/// σ² balancing the diagonal entries of X, X_u, X_v. Boosts are isometries,
/// so H and K are unchanged while the linear solves stay well scaled.
fn balance_factor(j: &Jet2<HermMatrix>) -> f64 {
    let (mut a, mut d) = (0.0, 0.0);
    for x in [j.value, j.d_u, j.d_v] {
        a += (x.x0 + x.x3).abs();
        d += (x.x0 - x.x3).abs();
    }
    if a == 0.0 || d == 0.0 || !a.is_finite() || !d.is_finite() {
        return 1.0;
    }
    (d / a).sqrt().clamp(1e-12, 1e12)
}

fn balanced(j: &Jet2<HermMatrix>) -> (f64, Jet2<HermMatrix>) {
    let s2 = balance_factor(j);
    (s2, j.map(|x| boost(&x, s2)))
}

/// G with ⟨G,G⟩ = ⟨G,X_u⟩ = ⟨G,X_v⟩ = 0 and ⟨G,X⟩ = 1, from the value and
/// first derivatives of the jet.
pub fn gauss_map_at(j: &Jet2<HermMatrix>, u: f64, v: f64) -> Result<HermMatrix> {
    let (s2, b) = balanced(j);
    Ok(boost(&gauss_map_raw(&b, u, v)?, 1.0 / s2))
}

fn gauss_map_raw(j: &Jet2<HermMatrix>, u: f64, v: f64) -> Result<HermMatrix> {
    let rows = [j.value, j.d_u, j.d_v];
    // ⟨G, Y⟩ = (η Y)·G
    let a = Matrix3x4::from_fn(|r, c| {
        let y = rows[r].coords();
        if c == 0 {
            -y[0]
        } else {
            y[c]
        }
    });
    let aat: Matrix3<f64> = a * a.transpose();
    let det = aat.determinant();
    let norms: f64 = rows.iter().map(|r| r.norm2()).product();
    if !(det.abs() > 1e-12 * norms) || !det.is_finite() {
        return Err(Error::DegeneratePoint { u, v });
    }
    let inv = aat.try_inverse().ok_or(Error::DegeneratePoint { u, v })?;
    let g0v = a.transpose() * (inv * Vector3::new(1.0, 0.0, 0.0));
    let g0 = HermMatrix::new(g0v[0], g0v[1], g0v[2], g0v[3]);
    let t = -0.5 * ip(&g0, &g0);
    Ok(g0 + j.value.scale(t))
}

/// Balances the raw matrix jet before the conversion to coordinates, where
/// x0 ± x3 would otherwise cancel a small diagonal entry.
fn balanced_eval(x: &Immersion, u: f64, v: f64) -> (f64, Jet2<HermMatrix>) {
    let m = x.raw(u, v);
    let (mut a, mut d) = (0.0, 0.0);
    for y in [m.value, m.d_u, m.d_v] {
        a += y.0[0][0].norm();
        d += y.0[1][1].norm();
    }
    let s2 = if a > 0.0 && d > 0.0 && a.is_finite() && d.is_finite() {
        (d / a).sqrt().clamp(1e-12, 1e12)
    } else {
        1.0
    };
    let j = m.map(|mut y| {
        y.0[0][0] *= s2;
        y.0[1][1] /= s2;
        HermMatrix::from_mat(&y)
    });
    (s2, j)
}

/// (E, F, G) of an immersion, evaluated after the balancing boost.
pub fn first_form_at(x: &Immersion, u: f64, v: f64) -> [f64; 3] {
    first_form(&balanced_eval(x, u, v).1)
}

/// The Gauss map as a matrix. The balancing boost is undone entrywise, so a
/// small diagonal entry keeps its relative accuracy.
pub fn lightlike_gauss_map_mat(x: &Immersion, u: f64, v: f64) -> Result<Mat2> {
    let (s2, j) = balanced_eval(x, u, v);
    let mut g = gauss_map_at(&j, u, v)?.to_mat();
    g.0[0][0] /= s2;
    g.0[1][1] *= s2;
    Ok(g)
}

pub fn lightlike_gauss_map(x: &Immersion, u: f64, v: f64) -> Result<HermMatrix> {
    let (s2, j) = balanced_eval(x, u, v);
    Ok(boost(&gauss_map_at(&j, u, v)?, 1.0 / s2))
}

/// Largest residual of the four defining conditions of the Gauss map, each
/// relative to 1 + |G|·|Y| (Euclidean coordinate norms).
pub fn gauss_residual(j: &Jet2<HermMatrix>, g: &HermMatrix) -> f64 {
    let n = |x: &HermMatrix| x.norm2().sqrt();
    [
        (ip(g, g), g),
        (ip(g, &j.d_u), &j.d_u),
        (ip(g, &j.d_v), &j.d_v),
        (ip(g, &j.value) - 1.0, &j.value),
    ]
    .iter()
    .fold(0.0, |a: f64, (x, y)| a.max(x.abs() / (1.0 + n(g) * n(y))))
}

pub fn curvatures_at(
    j: &Jet2<HermMatrix>,
    u: f64,
    v: f64,
) -> Result<(FundamentalForms, CurvatureData)> {
    let (_, b) = balanced(j);
    let j = &b;
    let [e, f, g] = first_form(j);
    let det = e * g - f * f;
    if !(det > 1e-12 * (e * e + g * g).max(1e-300)) {
        return Err(Error::DegeneratePoint { u, v });
    }
    let gm = gauss_map_raw(j, u, v)?;
    let (l, m, n) = (ip(&gm, &j.d_uu), ip(&gm, &j.d_uv), ip(&gm, &j.d_vv));
    let ff = FundamentalForms {
        e,
        f_m: f,
        g_m: g,
        l,
        m_m: m,
        n_m: n,
    };
    let h = (e * n - 2.0 * f * m + g * l) / (2.0 * det);
    let k = (l * n - m * m) / det;
    Ok((ff, CurvatureData { h, k }))
}

pub fn curvatures(x: &Immersion, u: f64, v: f64) -> Result<(FundamentalForms, CurvatureData)> {
    curvatures_at(&balanced_eval(x, u, v).1, u, v)
}

/// The horosphere chart h(u,v) = [[u²+v², u+iv], [u−iv, 1]] as a jet.
pub fn horosphere_jet(u: Jet2<f64>, v: Jet2<f64>) -> Jet2<Mat2> {
    let r = u * u + v * v;
    let e = |i: usize, j: usize| {
        let mut m = Mat2::zero();
        m.0[i][j] = C64::new(1.0, 0.0);
        Jet2::constant(m)
    };
    let i = C64::new(0.0, 1.0);
    let uc = u.to_complex();
    let vc = v.to_complex();
    e(0, 0).scale_jet(&r)
        + e(0, 1).scale_jet(&(uc + vc.scale(i)))
        + e(1, 0).scale_jet(&(uc - vc.scale(i)))
        + e(1, 1)
}

/// X_f = e^f·h(u, v).
pub fn graph_surface(
    label: impl Into<String>,
    domain: [f64; 4],
    f: impl Fn(Jet2<f64>, Jet2<f64>) -> Jet2<f64> + Send + Sync + 'static,
) -> Immersion {
    Immersion::from_jets(label, domain, move |u, v| {
        horosphere_jet(u, v).scale_jet(&f(u, v).exp())
    })
}

/// ½e^{−2f}(f_uu + f_vv)
pub fn graph_mean_curvature(f: &Jet2<f64>) -> f64 {
    0.5 * (-2.0 * f.value).exp() * (f.d_uu + f.d_vv)
}

/// S[M, q] = {X ∈ Q³₊ : ⟨X, M⟩ = q}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneSpec {
    pub m: HermMatrix,
    pub q: f64,
}

impl PlaneSpec {
    pub fn is_plane(&self) -> bool {
        ip(&self.m, &self.m).abs() <= 1e-10 * (1.0 + self.m.norm2())
    }
}

/// Chart of S[M, q] on `domain`. Planes use the flat chart
/// Y ↦ Y + M̃ − (⟨Y,Y⟩/2q)M; other slices the graph chart with
/// f = ln(q/⟨h, M⟩).
pub fn umbilic_surface(spec: &PlaneSpec, domain: [f64; 4]) -> Result<Immersion> {
    if spec.q == 0.0 {
        return Err(Error::BadParameter("q must be nonzero".into()));
    }
    let (m, q) = (spec.m, spec.q);
    if spec.is_plane() {
        let m0 = m.x0;
        if m0 == 0.0 || q * m0 > 0.0 {
            return Err(Error::EmptyIntersection);
        }
        let mt = HermMatrix::new(m0, -m.x1, -m.x2, -m.x3).scale(-q / (2.0 * m0 * m0));
        let dir = [m.x1, m.x2, m.x3];
        let (e1, e2) = orthonormal_complement(dir);
        let (e1, e2) = (
            HermMatrix::new(0.0, e1[0], e1[1], e1[2]),
            HermMatrix::new(0.0, e2[0], e2[1], e2[2]),
        );
        let (mm, mtm, e1m, e2m) = (m.to_mat(), mt.to_mat(), e1.to_mat(), e2.to_mat());
        return Ok(Immersion::from_jets("plane", domain, move |u, v| {
            let r = (u * u + v * v).scale(-0.5 / q);
            Jet2::constant(e1m).scale_jet(&u)
                + Jet2::constant(e2m).scale_jet(&v)
                + Jet2::constant(mtm)
                + Jet2::constant(mm).scale_jet(&r)
        }));
    }
    let hm = |u: f64, v: f64| {
        ip(
            &HermMatrix::from_mat(&horosphere_jet(Jet2::constant(u), Jet2::constant(v)).value),
            &m,
        )
    };
    let [u0, u1, v0, v1] = domain;
    let ok = (0..5)
        .flat_map(|i| (0..5).map(move |j| (i, j)))
        .any(|(i, j)| {
            let (u, v) = (
                u0 + (u1 - u0) * i as f64 / 4.0,
                v0 + (v1 - v0) * j as f64 / 4.0,
            );
            q / hm(u, v) > 0.0
        });
    if !ok {
        return Err(Error::EmptyIntersection);
    }
    let mm = m.to_mat();
    Ok(graph_surface("umbilic", domain, move |u, v| {
        let h = horosphere_jet(u, v);
        // ⟨h, M⟩ = −½(tr h tr M − tr hM), linear in the jet slots
        let trm = mm.trace();
        let pair = h.map(|x| (-(x.trace() * trm - (x * mm).trace()) * 0.5).re);
        (pair.recip().scale(q)).ln()
    }))
}

fn orthonormal_complement(d: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    let d = [d[0] / n, d[1] / n, d[2] / n];
    let pick = if d[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let dot = pick[0] * d[0] + pick[1] * d[1] + pick[2] * d[2];
    let mut a = [
        pick[0] - dot * d[0],
        pick[1] - dot * d[1],
        pick[2] - dot * d[2],
    ];
    let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    a = [a[0] / na, a[1] / na, a[2] / na];
    let b = [
        a[1] * d[2] - a[2] * d[1],
        a[2] * d[0] - a[0] * d[2],
        a[0] * d[1] - a[1] * d[0],
    ];
    (a, b)
}

/// The lightlike Gauss map as a surface (in Q³₋); its jets come from
/// fourth-order finite differences of step `h`.
pub fn gauss_map_surface(x: &Immersion, h: f64) -> Immersion {
    let base = x.clone();
    Immersion::new(format!("G[{}]", x.label), x.domain, move |u, v| {
        let g = |a: f64, b: f64| {
            lightlike_gauss_map_mat(&base, a, b)
                .unwrap_or_else(|_| Mat2::real(f64::NAN, 0.0, 0.0, 0.0))
        };
        fd_jet2_hi(g, u, v, h)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horosphere() -> Immersion {
        Immersion::from_jets("horosphere", [-1.0, 1.0, -1.0, 1.0], horosphere_jet)
    }

    #[test]
    fn horosphere_gauss_map() {
        let x = horosphere();
        for &(u, v) in &[(0.0, 0.0), (0.3, -0.8), (1.5, 2.0)] {
            let g = lightlike_gauss_map(&x, u, v).unwrap();
            assert!((g.to_mat() - Mat2::real(-2.0, 0.0, 0.0, 0.0)).max_abs() < 1e-12);
            assert!(gauss_residual(&x.eval(u, v), &g) < 1e-12);
            let (ff, c) = curvatures(&x, u, v).unwrap();
            assert!(
                (ff.e - 1.0).abs() < 1e-14 && ff.f_m.abs() < 1e-14 && (ff.g_m - 1.0).abs() < 1e-14
            );
            assert!(c.h.abs() < 1e-12 && c.k.abs() < 1e-12);
        }
    }

    #[test]
    fn graph_examples() {
        let j = (Jet2::var_u(0.0)).sq();
        assert!((graph_mean_curvature(&j) - 1.0).abs() < 1e-15);
        assert_eq!(graph_mean_curvature(&Jet2::constant(3.0)), 0.0);
        let x = graph_surface("cubic", [-1.0, 1.0, -1.0, 1.0], |u, v| {
            u * u * u - (u * v * v).scale(3.0)
        });
        for &(u, v) in &[(0.2, 0.1), (-0.5, 0.7)] {
            assert!(curvatures(&x, u, v).unwrap().1.h.abs() < 1e-10);
        }
        let sech = graph_surface("sech", [-1.0, 1.0, -1.0, 1.0], |u, _| u.sech().ln());
        let (_, c) = curvatures(&sech, 0.3, 0.4).unwrap();
        assert!((c.h + 0.5).abs() < 1e-10, "{}", c.h);
    }

    #[test]
    fn planes_and_slices() {
        let horo = PlaneSpec {
            m: HermMatrix::from_mat(&Mat2::real(-2.0, 0.0, 0.0, 0.0)),
            q: 1.0,
        };
        let p = umbilic_surface(&horo, [-1.0, 1.0, -1.0, 1.0]).unwrap();
        let expect = horosphere();
        for &(u, v) in &[(0.0, 0.0), (0.4, -0.6)] {
            assert!((p.point(u, v) - expect.point(u, v)).norm2() < 1e-24);
            let (ff, c) = curvatures(&p, u, v).unwrap();
            assert!(
                (ff.e - 1.0).abs() < 1e-14 && ff.f_m.abs() < 1e-14 && (ff.g_m - 1.0).abs() < 1e-14
            );
            assert!(c.h.abs() < 1e-12 && c.k.abs() < 1e-12);
            let g = lightlike_gauss_map(&p, u, v).unwrap();
            assert!((g - horo.m.scale(1.0 / horo.q)).norm2() < 1e-20);
        }
        let tilted = PlaneSpec {
            m: HermMatrix::new(-3.0, 1.0, 2.0, 2.0),
            q: 0.5,
        };
        let p = umbilic_surface(&tilted, [-1.0, 1.0, -1.0, 1.0]).unwrap();
        let x = p.point(0.3, 0.2);
        assert!((ip(&x, &tilted.m) - 0.5).abs() < 1e-12 && ip(&x, &x).abs() < 1e-12 && x.x0 > 0.0);
        let neg = PlaneSpec { q: -0.5, ..tilted };
        assert!(matches!(
            umbilic_surface(&neg, [-1.0, 1.0, -1.0, 1.0]),
            Err(Error::EmptyIntersection)
        ));

        let id = HermMatrix::from_mat(&Mat2::identity());
        let s = PlaneSpec { m: id, q: -1.0 };
        let x = umbilic_surface(&s, [-1.0, 1.0, -1.0, 1.0]).unwrap();
        for &(u, v) in &[(0.0, 0.0), (0.5, -0.2)] {
            let (_, c) = curvatures(&x, u, v).unwrap();
            assert!((c.h + 0.5).abs() < 1e-12 && (c.k - 0.25).abs() < 1e-12);
            assert!((ip(&x.point(u, v), &id) + 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            umbilic_surface(&PlaneSpec { m: id, q: 1.0 }, [-1.0, 1.0, -1.0, 1.0]),
            Err(Error::EmptyIntersection)
        ));
    }

    #[test]
    fn degenerate_detected() {
        let x = Immersion::from_jets("curve", [0.0, 1.0, 0.0, 1.0], |u, _v| {
            horosphere_jet(u, Jet2::constant(0.0))
        });
        assert!(matches!(
            curvatures(&x, 0.2, 0.3),
            Err(Error::DegeneratePoint { .. })
        ));
    }
}
