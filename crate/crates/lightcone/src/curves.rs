//! Frenet theory of unit-speed curves in Q³₊ and its geodesics.

use crate::calculus::jet::{Jet3, Scale};
use crate::calculus::quadrature::{integrate_real, QuadratureSpec};
use crate::cone::{act, minkowski_inner as ip, HermMatrix, Isometry, Mat2};
use crate::error::{Error, Result};
use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::sync::Arc;

pub type CurveFn = Arc<dyn Fn(Jet3<f64>) -> Jet3<Mat2> + Send + Sync>;

/// A curve evaluated through third-order jets.
#[derive(Clone)]
pub struct Curve {
    f: CurveFn,
    pub label: String,
}

/// γ and its first three derivatives at `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub s: f64,
    pub g: [HermMatrix; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetData {
    pub kappa: f64,
    pub tau: f64,
    pub gamma: HermMatrix,
    pub t: HermMatrix,
    pub n: HermMatrix,
    pub b: HermMatrix,
}

impl Curve {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(Jet3<f64>) -> Jet3<Mat2> + Send + Sync + 'static,
    ) -> Self {
        Curve {
            f: Arc::new(f),
            label: label.into(),
        }
    }
    pub fn eval(&self, s: Jet3<f64>) -> Jet3<Mat2> {
        (self.f)(s)
    }
    pub fn jet(&self, s: f64) -> CurveJet {
        let j = self.eval(Jet3::var(s)).map(|m| HermMatrix::from_mat(&m));
        CurveJet {
            s,
            g: [j.value, j.d1, j.d2, j.d3],
        }
    }
    pub fn point(&self, s: f64) -> HermMatrix {
        self.jet(s).g[0]
    }
    pub fn speed2(&self, s: f64) -> f64 {
        let j = self.jet(s);
        ip(&j.g[1], &j.g[1])
    }
}

fn det4(cols: [&HermMatrix; 4]) -> f64 {
    let m = Matrix4::from_fn(|i, j| cols[j].coords()[i]);
    m.determinant()
}

/// Frenet frame and cone curvature/torsion of a unit-speed curve.
pub fn frenet(j: &CurveJet) -> Result<FrenetData> {
    let [g, g1, g2, g3] = j.g;
    let sp = ip(&g1, &g1);
    if (sp - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitSpeed(sp));
    }
    let kappa = -0.5 * ip(&g2, &g2);
    let t = g1;
    let n = g.scale(kappa) - g2;
    // B ⟂ {γ, T, N}: Hodge dual through cofactors, index raised by η
    let mut w = [0.0; 4];
    for (i, wi) in w.iter_mut().enumerate() {
        let mut e = [0.0; 4];
        e[i] = 1.0;
        *wi = det4([&g, &t, &n, &HermMatrix::from_coords(e)]);
    }
    let raw = HermMatrix::new(-w[0], w[1], w[2], w[3]);
    let q = ip(&raw, &raw);
    // Compared with the Gram entries of (γ, T, N); Euclidean sizes are not
    // boost invariant and blow up far out on the cone.
    let vs = [&g, &t, &n];
    let gram = vs
        .iter()
        .flat_map(|a| vs.iter().map(move |b| ip(a, b).abs()))
        .fold(0.0, f64::max);
    if !(q > 1e-9 * (1.0 + gram).powi(3)) {
        return Err(Error::DegenerateFrame(format!(
            "<B,B> = {q:e} at s = {}",
            j.s
        )));
    }
    let b = raw.scale(-1.0 / q.sqrt());
    let tau = ip(&b, &g3);
    Ok(FrenetData {
        kappa,
        tau,
        gamma: g,
        t,
        n,
        b,
    })
}

/// Largest deviation from the Gram table of the frame.
pub fn gram_defect(f: &FrenetData) -> f64 {
    let v = [f.gamma, f.t, f.n, f.b];
    let target = [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for k in 0..4 {
            m = m.max((ip(&v[i], &v[k]) - target[i][k]).abs());
        }
    }
    m
}

pub fn frame_determinant(f: &FrenetData) -> f64 {
    det4([&f.gamma, &f.t, &f.n, &f.b])
}

/// ‖(γ,T,N,B)′ − C·(γ,T,N,B)‖∞ with the derivative of the frame taken by
/// central differences of step `h`.
pub fn frenet_residual(curve: &Curve, s: f64, h: f64) -> Result<f64> {
    let f0 = frenet(&curve.jet(s))?;
    let fp = frenet(&curve.jet(s + h))?;
    let fm = frenet(&curve.jet(s - h))?;
    let d = |a: HermMatrix, b: HermMatrix| (a - b).scale(0.5 / h);
    let (k, t) = (f0.kappa, f0.tau);
    let pred = [
        f0.t,
        f0.gamma.scale(k) - f0.n,
        f0.t.scale(-k) - f0.b.scale(t),
        f0.gamma.scale(t),
    ];
    let meas = [
        d(fp.gamma, fm.gamma),
        d(fp.t, fm.t),
        d(fp.n, fm.n),
        d(fp.b, fm.b),
    ];
    Ok(pred
        .iter()
        .zip(&meas)
        .flat_map(|(p, m)| (*p - *m).coords())
        .fold(0.0, |a: f64, x| a.max(x.abs())))
}

/// τ as ⟨B′, N⟩ with B′ from central differences; independent of γ‴.
pub fn torsion_fd(curve: &Curve, s: f64, h: f64) -> Result<f64> {
    let f0 = frenet(&curve.jet(s))?;
    let bp = frenet(&curve.jet(s + h))?.b;
    let bm = frenet(&curve.jet(s - h))?.b;
    Ok(ip(&(bp - bm).scale(0.5 / h), &f0.n))
}

/// true iff max(|κ|, |τ|) ≤ tol at `n` samples of [s0, s1].
pub fn is_geodesic(curve: &Curve, s0: f64, s1: f64, n: usize, tol: f64) -> Result<bool> {
    for k in 0..n {
        let s = s0 + (s1 - s0) * k as f64 / (n.max(2) - 1) as f64;
        let f = frenet(&curve.jet(s))?;
        if f.kappa.abs() > tol || f.tau.abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reparametrizes by arc length, s = 0 at t = t0. The inverse of the
/// length function is found by Newton iteration to `tol`.
pub fn arc_length_reparam(curve: &Curve, t0: f64, tol: f64) -> Curve {
    let base = curve.clone();
    let speed_jet = move |c: &Curve, t: f64| -> [f64; 3] {
        let j = c.jet(t);
        let (g1, g2, g3) = (j.g[1], j.g[2], j.g[3]);
        let s2 = ip(&g1, &g1);
        let sp = s2.sqrt();
        let a = ip(&g1, &g2);
        let c1 = a / sp;
        let c2 = (ip(&g2, &g2) + ip(&g1, &g3)) / sp - a * a / (sp * s2);
        [sp, c1, c2]
    };
    let label = format!("{} (arc length)", curve.label);
    Curve::new(label, move |s: Jet3<f64>| {
        let quad = QuadratureSpec::with_tol(tol * 1e-2);
        let len =
            |t: f64| integrate_real(&|x| base.speed2(x).sqrt(), t0, t, &quad).unwrap_or(f64::NAN);
        let mut t = t0 + s.value;
        for _ in 0..60 {
            let step = (len(t) - s.value) / base.speed2(t).sqrt();
            t -= step;
            if !(step.abs() > tol * 1e-3) {
                break;
            }
        }
        let [c, c1, c2] = speed_jet(&base, t);
        let sigma = [
            t,
            1.0 / c,
            -c1 / (c * c * c),
            -(c2 / c.powi(4) - 3.0 * c1 * c1 / c.powi(5)),
        ];
        let inner = Jet3::compose(&s, sigma);
        base.eval(inner)
    })
}

/// (a⃗, b⃗, c⃗) with γ(s) = ½a⃗s² + b⃗s + c⃗.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicSpec {
    pub a: HermMatrix,
    pub b: HermMatrix,
    pub c: HermMatrix,
}

impl GeodesicSpec {
    /// a⃗ = 2·e11, b⃗ = σ₁, c⃗ = e22: the geodesic δ(t) = [[t², t], [t, 1]].
    pub fn standard() -> Self {
        GeodesicSpec::from_lemma(C64::new(0.0, 0.0), 0.0)
    }

    /// The normal form with c⃗ = diag(0,1) and free parameters (w, θ).
    pub fn from_lemma(w: C64, theta: f64) -> Self {
        let e = C64::from_polar(1.0, theta);
        let a = Mat2::new(
            C64::new(2.0, 0.0),
            w,
            w.conj(),
            C64::new(0.5 * w.norm_sqr(), 0.0),
        );
        let b = Mat2::new(
            C64::new(0.0, 0.0),
            e,
            e.conj(),
            C64::new((w * e.conj()).re, 0.0),
        );
        GeodesicSpec {
            a: HermMatrix::from_mat(&a),
            b: HermMatrix::from_mat(&b),
            c: HermMatrix::from_mat(&Mat2::real(0.0, 0.0, 0.0, 1.0)),
        }
    }

    pub fn transformed(&self, f: &Isometry) -> Self {
        GeodesicSpec {
            a: act(f, &self.a),
            b: act(f, &self.b),
            c: act(f, &self.c),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let checks = [
            ("<a,a>", ip(a, a), 0.0),
            ("<a,b>", ip(a, b), 0.0),
            ("<b,c>", ip(b, c), 0.0),
            ("<c,c>", ip(c, c), 0.0),
            ("<a,c>", ip(a, c), -1.0),
            ("<b,b>", ip(b, b), 1.0),
        ];
        let scale = 1.0 + a.norm2().max(b.norm2()).max(c.norm2());
        let bad: Vec<String> = checks
            .iter()
            .filter(|(_, v, t)| (v - t).abs() > 1e-10 * scale)
            .map(|(n, v, t)| format!("{n} = {v} (expected {t})"))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGram(bad.join("; ")))
        }
    }
}

/// s ↦ ½a⃗s² + b⃗s + c⃗
pub fn geodesic(spec: &GeodesicSpec) -> Result<Curve> {
    spec.validate()?;
    let (a, b, c) = (spec.a.to_mat(), spec.b.to_mat(), spec.c.to_mat());
    Ok(Curve::new("geodesic", move |s: Jet3<f64>| {
        let sq = (s * s).scale(0.5);
        Jet3::constant(a).scale_jet(&sq) + Jet3::constant(b).scale_jet(&s) + Jet3::constant(c)
    }))
}

/// Isometry F taking the given geodesic to the standard one.
pub fn normalize_geodesic(spec: &GeodesicSpec) -> Result<Isometry> {
    spec.validate()?;
    // step 1: c⃗ = ψψ* ↦ diag(0, 1)
    let cm = spec.c.to_mat();
    let (p, r) = (cm.0[0][0].re, cm.0[1][1].re);
    let psi = if r >= p {
        let sr = r.sqrt();
        [cm.0[0][1] / sr, C64::new(sr, 0.0)]
    } else {
        let sp = p.sqrt();
        [C64::new(sp, 0.0), cm.0[1][0] / sp]
    };
    // K⁻¹ has second column ψ
    let kinv = if psi[1].norm() >= psi[0].norm() {
        Mat2::new(psi[1].inv(), psi[0], C64::new(0.0, 0.0), psi[1])
    } else {
        Mat2::new(C64::new(0.0, 0.0), psi[0], -psi[0].inv(), psi[1])
    };
    let k = Isometry::new(kinv.inv())?;
    let s1 = spec.transformed(&k);
    // step 2: read (w, θ) and apply the lemma's lower-triangular F
    let w = s1.a.to_mat().0[0][1];
    let theta = s1.b.to_mat().0[0][1].arg();
    let h = C64::from_polar(1.0, theta / 2.0);
    let f = Mat2::new(h.conj(), C64::new(0.0, 0.0), -w.conj() * h * 0.5, h);
    Ok(Isometry::new(f)?.compose(&k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::generic::{CxJet, MatJet, RealJet};
    use crate::cone::c;

    fn helix(a: f64, b: f64) -> Curve {
        let u = 1.0 / (2.0 * (a * a + b * b).sqrt());
        Curve::new("helix", move |v: Jet3<f64>| {
            let e = (v.scale(2.0 * a)).exp();
            let ph = (v.scale(2.0 * b)).cx().scale(c(0.0, 1.0)).exp();
            let uu = <Jet3<C64> as CxJet>::cst(c(u, 0.0));
            MatJet::from_entries(e.cx() * uu * uu, ph * uu, ph.conj() * uu, e.recip().cx())
        })
    }

    #[test]
    fn standard_geodesic_is_flat() {
        let g = geodesic(&GeodesicSpec::standard()).unwrap();
        for k in 0..50 {
            let s = -2.5 + 0.1 * k as f64;
            let p = g.point(s);
            assert!(ip(&p, &p).abs() < 1e-12 && p.trace() > 0.0);
            let f = frenet(&g.jet(s)).unwrap();
            assert!(f.kappa.abs() < 1e-12 && f.tau.abs() < 1e-12);
            assert!(gram_defect(&f) < 1e-12);
            assert!(frame_determinant(&f) < 0.0);
        }
        let m = g.point(0.7).to_mat();
        assert!((m - Mat2::real(0.49, 0.7, 0.7, 1.0)).max_abs() < 1e-14);
        assert!(is_geodesic(&g, -1.0, 1.0, 20, 1e-9).unwrap());
    }

    #[test]
    fn helix_invariants() {
        for (a, b, k, t) in [(1.0, 1.0, 0.0, 4.0), (2.0, 1.0, 6.0, 8.0)] {
            let h = helix(a, b);
            let f = frenet(&h.jet(0.3)).unwrap();
            assert!((f.kappa - k).abs() < 1e-9, "{}", f.kappa);
            assert!((f.tau - t).abs() < 1e-9, "{}", f.tau);
            assert!(gram_defect(&f) < 1e-9);
            assert!(frenet_residual(&h, 0.3, 1e-5).unwrap() < 1e-6);
            assert!((torsion_fd(&h, 0.3, 1e-5).unwrap() - t).abs() < 1e-6);
        }
        assert!(!is_geodesic(&helix(1.0, 1.0), 0.0, 1.0, 5, 1e-6).unwrap());
    }

    #[test]
    fn rejects_non_unit_speed() {
        let g = geodesic(&GeodesicSpec::standard()).unwrap();
        let slow = Curve::new("slow", move |s: Jet3<f64>| g.eval(s.scale(0.5)));
        assert!(matches!(
            frenet(&slow.jet(0.0)),
            Err(Error::NotUnitSpeed(_))
        ));
        let fixed = arc_length_reparam(&slow, 0.0, 1e-10);
        let f = frenet(&fixed.jet(0.8)).unwrap();
        assert!(f.kappa.abs() < 1e-8 && f.tau.abs() < 1e-8);
        assert!((fixed.point(0.8) - slow.point(1.6)).norm2().sqrt() < 1e-8);
    }

    #[test]
    fn lemma_normalization() {
        assert_eq!(
            *normalize_geodesic(&GeodesicSpec::standard()).unwrap().mat(),
            Mat2::identity()
        );
        let sp = GeodesicSpec::from_lemma(c(2.0, 0.0), 0.0);
        let f = normalize_geodesic(&sp).unwrap();
        assert!((*f.mat() - Mat2::real(1.0, 0.0, -1.0, 1.0)).max_abs() < 1e-14);
        let sp = GeodesicSpec::from_lemma(c(0.0, 1.0), 0.0);
        let g = geodesic(&sp).unwrap();
        assert!(is_geodesic(&g, -1.0, 1.0, 10, 1e-9).unwrap());
        // same start and velocity as the standard geodesic, different curve
        let st = geodesic(&GeodesicSpec::standard()).unwrap();
        assert!((g.point(0.0) - st.point(0.0)).norm2() < 1e-20);
        assert!((g.jet(0.0).g[1] - st.jet(0.0).g[1]).norm2() < 1e-20);
        assert!((g.point(1.0) - st.point(1.0)).norm2() > 1e-3);
    }

    #[test]
    fn invalid_gram_is_listed() {
        let mut sp = GeodesicSpec::standard();
        sp.b = sp.b.scale(2.0);
        match geodesic(&sp) {
            Err(Error::InvalidGram(m)) => assert!(m.contains("<b,b>")),
            _ => panic!("expected InvalidGram"),
        }
    }
}
