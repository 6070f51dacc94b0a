//! Model surfaces: catenoids, helicoids, horosphere, planes; the δ-plane
//! (cardioid locus, associated-family census) and the Lawson map T.

use crate::calculus::generic::{CxJet, MatJet, RealJet};
use crate::calculus::jet::{CJet, Carrier, Jet2, Jet3, Scale};
use crate::cone::{matrix_inner, HermMatrix, Mat2};
use crate::curves::Curve;
use crate::error::{Error, Result};
use crate::surfaces::{
    curvatures, first_form_at, gauss_map_surface, horosphere_jet, lightlike_gauss_map,
    umbilic_surface, Immersion, PlaneSpec,
};
use crate::weierstrass::{cmat, HolLift, NullFrame};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn cx(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CatalogKind {
    EllipticCatenoid(f64),
    HyperbolicCatenoid(f64),
    ParabolicCatenoid(f64),
    Helicoid(f64, f64),
    ConformalHelicoid(f64),
    Horosphere,
    Plane(PlaneSpec),
}

impl CatalogKind {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogKind::EllipticCatenoid(_) => "elliptic-catenoid",
            CatalogKind::HyperbolicCatenoid(_) => "hyperbolic-catenoid",
            CatalogKind::ParabolicCatenoid(_) => "parabolic-catenoid",
            CatalogKind::Helicoid(..) => "helicoid",
            CatalogKind::ConformalHelicoid(_) => "conformal-helicoid",
            CatalogKind::Horosphere => "horosphere",
            CatalogKind::Plane(_) => "plane",
        }
    }
}

#[derive(Clone)]
pub struct CatalogSurface {
    pub kind: CatalogKind,
    pub immersion: Immersion,
    pub lift: Option<HolLift>,
    pub frame: Option<NullFrame>,
}

fn ex(z: CJet<C64>, k: C64) -> CJet<C64> {
    z.scale(k).exp()
}

/// X = φφ★ as a surface in u + iv.
pub fn lift_surface(lift: &HolLift, domain: [f64; 4]) -> Immersion {
    let l = lift.clone();
    Immersion::new(l.label.clone(), domain, move |u, v| {
        let [a, c] = l.eval(C64::new(u, v));
        let (a, c) = (a.to_jet2(), c.to_jet2());
        let (ab, cb) = (a.conj(), c.conj());
        <Jet2<Mat2> as MatJet>::from_entries(a * ab, a * cb, c * ab, c * cb)
    })
}

pub fn elliptic_lift(a: f64) -> HolLift {
    HolLift::new(format!("phiE[{a}]"), cx(0.0, 0.0), move |z| {
        let e = ex(z, I * a);
        [e * ex(z, I), e * ex(z, -I)]
    })
}

pub fn hyperbolic_lift(b: f64) -> HolLift {
    HolLift::new(format!("phiH[{b}]"), cx(0.0, 0.0), move |z| {
        let e = ex(z, I * b);
        [e * z.exp(), e * ex(z, cx(-1.0, 0.0))]
    })
}

pub fn parabolic_lift(c: f64) -> HolLift {
    HolLift::new(format!("phiP[{c}]"), cx(1.0, 0.0), move |z| {
        let e = ex(z, I * c);
        [e * z, e]
    })
}

/// e^{iaz}(e^z, 1)
pub fn helicoid_lift(a: f64) -> HolLift {
    HolLift::new(format!("phiHel[{a}]"), cx(0.0, 0.0), move |z| {
        let e = ex(z, I * a);
        [e * z.exp(), e]
    })
}

pub fn elliptic_frame(a: f64) -> Result<NullFrame> {
    if a == 0.0 {
        return Err(Error::BadParameter(
            "elliptic catenoid frame needs a != 0".into(),
        ));
    }
    let (p, q) = (
        -(a + 1.0).powi(2) / (4.0 * a),
        -(a - 1.0).powi(2) / (4.0 * a),
    );
    Ok(NullFrame::closed(format!("FE[{a}]"), move |z| {
        cmat(
            ex(z, I * (a + 1.0)),
            ex(z, -I * (a - 1.0)).scale(p),
            ex(z, I * (a - 1.0)),
            ex(z, -I * (a + 1.0)).scale(q),
        )
    }))
}

pub fn hyperbolic_frame(b: f64) -> Result<NullFrame> {
    if b == 0.0 {
        return Err(Error::BadParameter(
            "hyperbolic catenoid frame needs b != 0".into(),
        ));
    }
    let p = -I * (cx(b, -1.0)).powi(2) / (4.0 * b);
    let q = -I * (cx(b, 1.0)).powi(2) / (4.0 * b);
    Ok(NullFrame::closed(format!("FH[{b}]"), move |z| {
        cmat(
            ex(z, cx(1.0, b)),
            ex(z, -cx(-1.0, b)).scale(p),
            ex(z, cx(-1.0, b)),
            ex(z, -cx(1.0, b)).scale(q),
        )
    }))
}

pub fn parabolic_frame(c: f64) -> NullFrame {
    NullFrame::closed(format!("FP[{c}]"), move |z| {
        let (e, ei) = (ex(z, I * c), ex(z, -I * c));
        let two = CJet::constant(cx(2.0, 0.0)) + z.scale(I * c);
        cmat(z * e, (two * ei).scale(-0.5), e, ei.scale(-0.5 * I * c))
    })
}

/// Frame of the conformal helicoid with lift e^{iaz}(e^z, 1):
/// [[e^{(1+ia)z}, −(1+ia)²/(1+2ia)·e^{−iaz}], [e^{iaz}, a²/(1+2ia)·e^{−(1+ia)z}]].
pub fn helicoid_frame(a: f64) -> NullFrame {
    let d = cx(1.0, 2.0 * a);
    let p = -cx(1.0, a).powi(2) / d;
    let q = cx(a * a, 0.0) / d;
    NullFrame::closed(format!("Fa[{a}]"), move |z| {
        cmat(
            ex(z, cx(1.0, a)),
            ex(z, -I * a).scale(p),
            ex(z, I * a),
            ex(z, -cx(1.0, a)).scale(q),
        )
    })
}

/// H^{a,b}(u,v) = D(v)·[[u², u],[u, 1]]·D(v)★ with D = diag(e^{(a+ib)v}, e^{−(a+ib)v}).
pub fn helicoid_generic<R: RealJet>(a: f64, b: f64, u: R, v: R) -> <R::Cx as CxJet>::Mat {
    let zero = R::cst(0.0);
    let p = v.scale(2.0 * a).exp();
    let rot = R::Cx::from_parts(zero, v.scale(2.0 * b)).exp();
    let uc = u.cx();
    <<R::Cx as CxJet>::Mat as MatJet>::from_entries(
        (p * u * u).cx(),
        rot * uc,
        rot.conj() * uc,
        p.recip().cx(),
    )
}

pub fn helicoid_surface(a: f64, b: f64) -> Result<Immersion> {
    if b == 0.0 {
        return Err(Error::BadParameter("helicoid needs b != 0".into()));
    }
    Ok(Immersion::from_jets(
        format!("H[{a},{b}]"),
        [0.1, 2.0, 0.0, 2.0 * PI],
        move |u, v| helicoid_generic(a, b, u, v),
    ))
}

/// v ↦ H^{a,b}(1/(2√(a²+b²)), v)
pub fn helicoid_helix(a: f64, b: f64) -> Curve {
    let u0 = 0.5 / (a * a + b * b).sqrt();
    Curve::new(format!("helix[{a},{b}]"), move |s: Jet3<f64>| {
        helicoid_generic(a, b, Jet3::constant(u0), s)
    })
}

/// H^{a,b} at the point with conformal coordinates (ũ, ṽ).
pub fn conformal_to_standard(a: f64, b: f64, ut: f64, vt: f64) -> (f64, f64) {
    ((ut - a / b * vt).exp(), vt / (2.0 * b))
}

/// The ruled parametrization C^P_c(e^{2cv}u, v) = p(v)·D(e^{cv})·δ(u)·D★·p★.
pub fn parabolic_ruled(c: f64) -> Immersion {
    Immersion::from_jets(
        format!("CPruled[{c}]"),
        [-1.0, 1.0, -1.0, 1.0],
        move |u, v| {
            let e = v.scale(c).exp();
            // p(v)D(e^{cv})(u, 1)ᵀ = (e^{cv}u + iv e^{−cv}, e^{−cv})
            let er = e.recip();
            let top = <Jet2<C64> as CxJet>::from_parts(e * u, v * er);
            let bot = er.cx();
            crate::calculus::generic::outer(top, bot)
        },
    )
}

pub fn build(kind: CatalogKind) -> Result<CatalogSurface> {
    let sq = [-1.0, 1.0, -1.0, 1.0];
    let (immersion, lift, frame) = match kind {
        CatalogKind::EllipticCatenoid(a) => {
            if a == 0.0 || a.abs() == 1.0 {
                return Err(Error::BadParameter(format!(
                    "elliptic catenoid needs a not in {{0, 1, -1}}, got {a}"
                )));
            }
            let l = elliptic_lift(a);
            (
                lift_surface(&l, [0.0, 2.0 * PI, -1.0, 1.0]),
                Some(l),
                Some(elliptic_frame(a)?),
            )
        }
        CatalogKind::HyperbolicCatenoid(b) => {
            let f = hyperbolic_frame(b)?;
            let l = hyperbolic_lift(b);
            (lift_surface(&l, sq), Some(l), Some(f))
        }
        CatalogKind::ParabolicCatenoid(c) => {
            let l = parabolic_lift(c);
            (lift_surface(&l, sq), Some(l), Some(parabolic_frame(c)))
        }
        CatalogKind::Helicoid(a, b) => (helicoid_surface(a, b)?, None, None),
        CatalogKind::ConformalHelicoid(a) => {
            let l = helicoid_lift(a);
            (lift_surface(&l, sq), Some(l), Some(helicoid_frame(a)))
        }
        CatalogKind::Horosphere => (
            Immersion::from_jets("horosphere", sq, horosphere_jet),
            None,
            None,
        ),
        CatalogKind::Plane(spec) => (umbilic_surface(&spec, sq)?, None, None),
    };
    let mut immersion = immersion;
    immersion.label = kind.name().to_string();
    Ok(CatalogSurface {
        kind,
        immersion,
        lift,
        frame,
    })
}

impl CatalogSurface {
    /// max ‖F·diag(1,0)·F★ − φφ★‖ over the points.
    pub fn lift_frame_defect(&self, pts: &[C64]) -> Result<f64> {
        match (&self.lift, &self.frame) {
            (Some(l), Some(f)) => {
                let mut m: f64 = 0.0;
                for &z in pts {
                    let x = l.point(z);
                    m = m.max((f.point(z)? - x).max_abs() / (1.0 + x.max_abs()));
                }
                Ok(m)
            }
            _ => Ok(0.0),
        }
    }

    /// Largest |H| on an n×n grid of the default domain; singular samples
    /// are skipped.
    pub fn max_abs_h(&self, n: usize) -> f64 {
        self.immersion
            .grid(n)
            .into_iter()
            .filter_map(|(u, v)| curvatures(&self.immersion, u, v).ok())
            .fold(0.0, |m: f64, (_, c)| m.max(c.h.abs()))
    }
}

/// Every kind with representative parameters.
pub fn default_kinds() -> Vec<CatalogKind> {
    vec![
        CatalogKind::EllipticCatenoid(2.0),
        CatalogKind::HyperbolicCatenoid(1.0),
        CatalogKind::ParabolicCatenoid(1.0),
        CatalogKind::Helicoid(1.0, 1.0),
        CatalogKind::ConformalHelicoid(1.0),
        CatalogKind::Horosphere,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocusType {
    Elliptic,
    Parabolic,
    Hyperbolic,
    Helicoid,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyLocus {
    pub delta: [f64; 2],
    pub tag: LocusType,
    pub a: Option<f64>,
    pub xy: Option<[f64; 2]>,
}

impl FamilyLocus {
    pub fn delta(&self) -> C64 {
        cx(self.delta[0], self.delta[1])
    }
}

/// δ(a) = −a(a−i)/(2a−i)²
pub fn delta_value(a: f64) -> C64 {
    -(cx(a, 0.0) * cx(a, -1.0)) / cx(2.0 * a, -1.0).powi(2)
}

/// (x²+y²)² + ¼x(x²+y²) − y²/64
pub fn cardioid_residual(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    r2 * r2 + 0.25 * x * r2 - y * y / 64.0
}

fn cardioid_xy(d: C64) -> [f64; 2] {
    let w = cx(-0.25, 0.0) - d;
    [w.re, w.im]
}

pub fn delta_of_a(a: f64) -> FamilyLocus {
    let d = delta_value(a);
    FamilyLocus {
        delta: [d.re, d.im],
        tag: if a == 0.0 {
            LocusType::Other
        } else {
            LocusType::Helicoid
        },
        a: Some(a),
        xy: Some(cardioid_xy(d)),
    }
}

/// Real a with δ(a) = δ, if any. From δ(2a−i)² = −a(a−i):
/// a² − ia − δ/(4δ+1) = 0.
pub fn cardioid_preimage(d: C64) -> Option<f64> {
    let k = cx(4.0, 0.0) * d + 1.0;
    if k.norm() < 1e-15 {
        return None;
    }
    let s = (cx(-1.0, 0.0) / k).sqrt();
    let tol = 1e-9 * d.norm().max(1.0);
    [(I + s) * 0.5, (I - s) * 0.5]
        .into_iter()
        .map(|r| r.re)
        .filter(|&a| a != 0.0 && (delta_value(a) - d).norm() <= tol)
        .min_by(|x, y| {
            (delta_value(*x) - d)
                .norm()
                .total_cmp(&(delta_value(*y) - d).norm())
        })
}

pub fn classify_delta(d: C64) -> FamilyLocus {
    let tol = 1e-12 * d.norm().max(1.0);
    let base = |tag, a: Option<f64>| FamilyLocus {
        delta: [d.re, d.im],
        tag,
        a,
        xy: a.map(|_| cardioid_xy(d)),
    };
    if d.norm() <= 1e-15 {
        return base(LocusType::Other, None);
    }
    if d.im.abs() <= tol {
        let t = if (d.re + 0.25).abs() <= tol {
            LocusType::Parabolic
        } else if d.re > -0.25 {
            LocusType::Elliptic
        } else {
            LocusType::Hyperbolic
        };
        return base(t, None);
    }
    match cardioid_preimage(d) {
        Some(a) => base(LocusType::Helicoid, Some(a)),
        None => base(LocusType::Other, None),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub elliptic: usize,
    pub parabolic: usize,
    pub hyperbolic: usize,
    pub helicoid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    /// arg λ
    pub theta: f64,
    pub locus: FamilyLocus,
}

/// Members of the associated family of (w, r·dw/w²) that are catenoids or
/// helicoids: λ = ±1 and the intersections of |δ| = r with the cardioid.
pub fn family_members(r: f64) -> Result<Vec<FamilyMember>> {
    if !(r > 0.0) {
        return Err(Error::BadParameter(format!(
            "radius must be positive, got {r}"
        )));
    }
    let mut out = vec![];
    for th in [0.0, PI] {
        out.push(FamilyMember {
            theta: th,
            locus: classify_delta(C64::from_polar(r, th)),
        });
    }
    // |δ(a)|² = t(t+1)/(4t+1)² with t = a²
    let r2 = r * r;
    let (qa, qb, qc) = (1.0 - 16.0 * r2, 1.0 - 8.0 * r2, -r2);
    let mut ts = vec![];
    if qa.abs() <= 1e-12 {
        ts.push(-qc / qb);
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc.abs() <= 1e-12 {
            ts.push(-qb / (2.0 * qa));
        } else if disc > 0.0 {
            let sq = disc.sqrt();
            ts.push((-qb + sq) / (2.0 * qa));
            ts.push((-qb - sq) / (2.0 * qa));
        }
    }
    for t in ts.into_iter().filter(|&t| t > 0.0) {
        for a in [t.sqrt(), -t.sqrt()] {
            let d = delta_value(a);
            let loc = classify_delta(d);
            out.push(FamilyMember {
                theta: d.arg(),
                locus: FamilyLocus { a: Some(a), ..loc },
            });
        }
    }
    Ok(out)
}

pub fn census(r: f64) -> Result<Census> {
    let mut c = Census::default();
    for m in family_members(r)? {
        match m.locus.tag {
            LocusType::Elliptic => c.elliptic += 1,
            LocusType::Parabolic => c.parabolic += 1,
            LocusType::Hyperbolic => c.hyperbolic += 1,
            LocusType::Helicoid => c.helicoid += 1,
            LocusType::Other => {}
        }
    }
    Ok(c)
}

/// δ̃(c) = −c(c+1)/(2c+1)²
pub fn delta_tilde_of_c(c: C64) -> Result<FamilyLocus> {
    let den = c * 2.0 + 1.0;
    if den.norm() == 0.0 {
        return Err(Error::PoleAtMinusHalf);
    }
    Ok(classify_delta(-(c * (c + 1.0)) / (den * den)))
}

/// T(x, y, ℓ) = e^ℓ·[[x²+y², x+iy],[x−iy, 1]]
pub fn lawson_t(x: f64, y: f64, l: f64) -> HermMatrix {
    let e = l.exp();
    HermMatrix::from_mat(&Mat2::new(
        cx(e * (x * x + y * y), 0.0),
        cx(e * x, e * y),
        cx(e * x, -e * y),
        cx(e, 0.0),
    ))
}

/// −2e^{2av}[[a²+1, a(a−i)e^{−u+iv}],[a(a+i)e^{−u−iv}, a²e^{−2u}]]
pub fn conformal_helicoid_gauss(a: f64, u: f64, v: f64) -> Mat2 {
    let k = -2.0 * (2.0 * a * v).exp();
    let w = (cx(-u, v)).exp();
    Mat2::new(
        cx(a * a + 1.0, 0.0),
        cx(a, 0.0) * cx(a, -1.0) * w,
        cx(a, 0.0) * cx(a, 1.0) * w.conj(),
        cx(a * a * (-2.0 * u).exp(), 0.0),
    )
    .scale(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussDual {
    pub g: HermMatrix,
    pub immersed: bool,
    /// |g_G + K g_X| relative
    pub metric_defect: f64,
    /// |H| of the Gauss-map surface (NaN when not immersed)
    pub dual_h: f64,
    pub closed_form_defect: Option<f64>,
}

/// Lightlike Gauss map at (u, v) with the duality checks.
pub fn gauss_dual(s: &CatalogSurface, u: f64, v: f64) -> Result<GaussDual> {
    let x = &s.immersion;
    let g = lightlike_gauss_map(x, u, v)?;
    let h = 1e-3;
    let gs = gauss_map_surface(x, h);
    let [e, f, gg] = first_form_at(&gs, u, v);
    let gx = first_form_at(x, u, v);
    let scale = gx[0].abs().max(gx[2].abs());
    let immersed = e * gg - f * f > 1e-8 * scale * scale;
    let (_, curv) = curvatures(x, u, v)?;
    let metric_defect = [e + curv.k * gx[0], f + curv.k * gx[1], gg + curv.k * gx[2]]
        .iter()
        .fold(0.0, |m: f64, d| m.max(d.abs()))
        / (scale * curv.k.abs().max(1.0));
    let dual_h = if immersed {
        curvatures(&gs, u, v).map(|(_, c)| c.h).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let closed_form_defect = match s.kind {
        CatalogKind::ConformalHelicoid(a) => {
            let c = conformal_helicoid_gauss(a, u, v);
            Some((g.to_mat() - c).max_abs() / (1.0 + c.max_abs()))
        }
        _ => None,
    };
    Ok(GaussDual {
        g,
        immersed,
        metric_defect,
        dual_h,
        closed_form_defect,
    })
}

/// Isometry/homothety invariants at marked points: normalized Minkowski Gram
/// matrix of the points, and H·s², K·s⁴ with s² the largest Gram entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fingerprint {
    pub gram: Vec<f64>,
    pub h: Vec<f64>,
    pub k: Vec<f64>,
}

pub fn fingerprint(x: &Immersion, pts: &[(f64, f64)]) -> Result<Fingerprint> {
    let p: Vec<Mat2> = pts.iter().map(|&(u, v)| x.point(u, v).to_mat()).collect();
    let raw: Vec<f64> = p
        .iter()
        .flat_map(|a| p.iter().map(move |b| matrix_inner(a, b)))
        .collect();
    let s2 = raw.iter().fold(0.0, |m: f64, g| m.max(g.abs()));
    if s2 == 0.0 {
        return Err(Error::BadParameter("marked points coincide".into()));
    }
    let mut h = vec![];
    let mut k = vec![];
    for &(u, v) in pts {
        let (_, c) = curvatures(x, u, v)?;
        h.push(c.h * s2);
        k.push(c.k * s2 * s2);
    }
    Ok(Fingerprint {
        gram: raw.iter().map(|g| g / s2).collect(),
        h,
        k,
    })
}

impl Fingerprint {
    pub fn distance(&self, o: &Fingerprint) -> f64 {
        let d = |a: &[f64], b: &[f64]| {
            if a.len() != b.len() {
                return f64::INFINITY;
            }
            a.iter()
                .zip(b)
                .fold(0.0, |m: f64, (x, y)| m.max((x - y).abs() / (1.0 + x.abs())))
        };
        d(&self.gram, &o.gram)
            .max(d(&self.h, &o.h))
            .max(d(&self.k, &o.k))
    }
}

/// Marked points on C^P_c corresponding to `base` on C^P_1: z ↦ z/c for
/// c > 0, z ↦ z̄/|c| for c < 0 (the latter through the reflection x₂ ↦ −x₂).
pub fn parabolic_marked_points(c: f64, base: &[(f64, f64)]) -> Vec<(f64, f64)> {
    base.iter()
        .map(|&(u, v)| {
            if c > 0.0 {
                (u / c, v / c)
            } else {
                (u / c.abs(), -v / c.abs())
            }
        })
        .collect()
}

/// CSV rows a, Re δ, Im δ, x, y, residual over an a-sweep.
pub fn locus_csv(a0: f64, a1: f64, n: usize) -> String {
    let mut s = String::from("a,re_delta,im_delta,x,y,residual\n");
    for k in 0..n {
        let a = if n == 1 {
            a0
        } else {
            a0 + (a1 - a0) * k as f64 / (n - 1) as f64
        };
        let l = delta_of_a(a);
        let [x, y] = l.xy.unwrap_or([f64::NAN; 2]);
        s.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            a,
            l.delta[0],
            l.delta[1],
            x,
            y,
            cardioid_residual(x, y)
        ));
    }
    s
}

/// Hermitian-valued zero helper for callers building jets.
pub fn zero_jet() -> Jet2<Mat2> {
    Jet2::<Mat2>::zero()
}
