//! Null-holomorphic frames and their Weierstrass data.
//!
//! A lift φ = (A, C) gives X = φφ★; a null frame F with first column φ gives
//! the same X = F·diag(1,0)·F★. Frames are only unique up to right
//! multiplication by the stabilizer of diag(1,0), so comparisons go through X
//! or through the data.

use crate::calculus::jet::{CJet, Carrier, Jet2, Scale};
use crate::calculus::ode::{integrate_ode, OdeSpec};
use crate::calculus::quadrature::{integrate_polyline, QuadratureSpec};
use crate::cone::Mat2;
use crate::error::{Error, Result};
use crate::surfaces::Immersion;
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::sync::Arc;

type CxMap = Arc<dyn Fn(CJet<C64>) -> [CJet<C64>; 2] + Send + Sync>;

/// Holomorphic pair z ↦ (A(z), C(z)).
#[derive(Clone)]
pub struct HolLift {
    f: CxMap,
    pub z0: C64,
    pub label: String,
}

impl HolLift {
    pub fn new(
        label: impl Into<String>,
        z0: C64,
        f: impl Fn(CJet<C64>) -> [CJet<C64>; 2] + Send + Sync + 'static,
    ) -> Self {
        HolLift {
            f: Arc::new(f),
            z0,
            label: label.into(),
        }
    }
    pub fn eval(&self, z: C64) -> [CJet<C64>; 2] {
        (self.f)(CJet::var(z))
    }
    /// φφ★ at z.
    pub fn point(&self, z: C64) -> Mat2 {
        let [a, c] = self.eval(z);
        outer(a.value, c.value)
    }
}

fn outer(a: C64, c: C64) -> Mat2 {
    Mat2::new(a * a.conj(), a * c.conj(), c * a.conj(), c * c.conj())
}

/// Builds a matrix germ from entry germs.
pub fn cmat(a: CJet<C64>, b: CJet<C64>, c: CJet<C64>, d: CJet<C64>) -> CJet<Mat2> {
    CJet {
        value: Mat2::new(a.value, b.value, c.value, d.value),
        d_z: Mat2::new(a.d_z, b.d_z, c.d_z, d.d_z),
        d_zz: Mat2::new(a.d_zz, b.d_zz, c.d_zz, d.d_zz),
    }
}

type FrameFn = Arc<dyn Fn(C64) -> Result<CJet<Mat2>> + Send + Sync>;

/// Holomorphic z ↦ F(z) ∈ SL(2,ℂ) with det F_z = 0.
#[derive(Clone)]
pub struct NullFrame {
    f: FrameFn,
    pub label: String,
}

impl std::fmt::Debug for NullFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NullFrame({})", self.label)
    }
}

impl NullFrame {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(C64) -> Result<CJet<Mat2>> + Send + Sync + 'static,
    ) -> Self {
        NullFrame {
            f: Arc::new(f),
            label: label.into(),
        }
    }
    /// Frame given by a closed form written over germs.
    pub fn closed(
        label: impl Into<String>,
        f: impl Fn(CJet<C64>) -> CJet<Mat2> + Send + Sync + 'static,
    ) -> Self {
        NullFrame::new(label, move |z| Ok(f(CJet::var(z))))
    }
    pub fn eval(&self, z: C64) -> Result<CJet<Mat2>> {
        (self.f)(z)
    }
    /// X = F·diag(1,0)·F★ at z.
    pub fn point(&self, z: C64) -> Result<Mat2> {
        let f = self.eval(z)?.value;
        Ok(outer(f.0[0][0], f.0[1][0]))
    }
    /// |det F − 1|
    pub fn det_defect(&self, z: C64) -> Result<f64> {
        Ok((self.eval(z)?.value.det() - 1.0).norm())
    }
    /// |det F_z| / ‖F_z‖²
    pub fn null_defect(&self, z: C64) -> Result<f64> {
        let fz = self.eval(z)?.d_z;
        let n = fz.norm();
        Ok(if n == 0.0 {
            0.0
        } else {
            fz.det().norm() / (n * n)
        })
    }
    /// The immersion (u, v) ↦ X(u + iv); failed evaluations give NaN.
    pub fn surface(&self, domain: [f64; 4]) -> Immersion {
        let fr = self.clone();
        Immersion::new(fr.label.clone(), domain, move |u, v| {
            match fr.eval(C64::new(u, v)) {
                Ok(j) => {
                    let f = j.to_jet2();
                    let e = Jet2::constant(Mat2::e11());
                    f * e * f.map(|m| m.adjoint())
                }
                Err(_) => Jet2::constant(Mat2::real(f64::NAN, 0.0, 0.0, 0.0)),
            }
        })
    }
}

/// Where the frame is built along the way from the base point.
#[derive(Debug, Clone, PartialEq)]
pub enum PathPolicy {
    Straight,
    /// Intermediate waypoints between the base point and z.
    Via(Vec<C64>),
    /// Polar route keeping at least this distance from z = 0.
    AvoidOrigin(f64),
}

impl PathPolicy {
    pub fn route(&self, z0: C64, z: C64) -> Result<Vec<C64>> {
        match self {
            PathPolicy::Straight => Ok(vec![z0, z]),
            PathPolicy::Via(w) => {
                let mut p = vec![z0];
                p.extend_from_slice(w);
                p.push(z);
                Ok(p)
            }
            PathPolicy::AvoidOrigin(cl) => avoid_origin(z0, z, *cl),
        }
    }
}

fn seg_distance_to_origin(a: C64, b: C64) -> f64 {
    let d = b - a;
    let t = if d.norm_sqr() == 0.0 {
        0.0
    } else {
        (-(a.conj() * d).re / d.norm_sqr()).clamp(0.0, 1.0)
    };
    (a + d * t).norm()
}

fn avoid_origin(z0: C64, z: C64, clearance: f64) -> Result<Vec<C64>> {
    if z0.norm() < clearance || z.norm() < clearance {
        return Err(Error::SingularPath(format!(
            "endpoint within {clearance} of w = 0"
        )));
    }
    if seg_distance_to_origin(z0, z) >= clearance {
        return Ok(vec![z0, z]);
    }
    let rho = z0.norm().min(z.norm());
    let (t0, t1) = (z0.arg(), z.arg());
    let mut dt = t1 - t0;
    if dt > std::f64::consts::PI {
        dt -= 2.0 * std::f64::consts::PI;
    } else if dt < -std::f64::consts::PI {
        dt += 2.0 * std::f64::consts::PI;
    }
    let n = ((dt.abs() / 0.1).ceil() as usize).max(1);
    let mut p = vec![z0];
    for k in 0..=n {
        p.push(C64::from_polar(rho, t0 + dt * k as f64 / n as f64));
    }
    p.push(z);
    p.dedup();
    Ok(p)
}

/// F = [[A,0],[C,1/A]]·[[1,−E],[0,1]] with E′ = ((1/A)′)²/(C/A)′ and
/// E(z₀) = 0.
pub fn frame_from_lift(lift: &HolLift, policy: PathPolicy) -> NullFrame {
    let lift = lift.clone();
    let spec = QuadratureSpec::default();
    let label = format!("F[{}]", lift.label);
    NullFrame::new(label, move |z| {
        let h_at = |w: C64| -> C64 {
            let [a, c] = lift.eval(w);
            let (r, q) = (a.recip(), c / a);
            r.d_z * r.d_z / q.d_z
        };
        let path = policy.route(lift.z0, z)?;
        let e = integrate_polyline(&h_at, &path, &spec).map_err(|e| match e {
            Error::SingularSample(m) => Error::SingularPath(m),
            other => other,
        })?;
        let [a, c] = lift.eval(z);
        if a.value.norm() < 1e-300 {
            return Err(Error::SingularPath(format!("A vanishes at {z}")));
        }
        let (r, q) = (a.recip(), c / a);
        if q.d_z.norm() < 1e-300 {
            return Err(Error::SingularPath(format!("(C/A)' vanishes at {z}")));
        }
        // germ of E: value from quadrature, derivatives from h
        let h = r.d_z * r.d_z / q.d_z;
        let hp = (r.d_z * r.d_zz * 2.0 * q.d_z - r.d_z * r.d_z * q.d_zz) / (q.d_z * q.d_z);
        let ej = CJet {
            value: e,
            d_z: h,
            d_zz: hp,
        };
        let one = CJet::constant(C64::new(1.0, 0.0));
        let zero = CJet::<C64>::zero();
        let lower = cmat(a, zero, c, r);
        let upper = cmat(one, -ej, zero, one);
        Ok(lower * upper)
    })
}

/// Pointwise Weierstrass data, densities with respect to dz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassData {
    pub z: C64,
    /// hyperbolic Gauss map
    pub big_g: C64,
    pub big_g_prime: C64,
    pub big_omega: C64,
    /// secondary Gauss map
    pub g: C64,
    pub g_prime: C64,
    pub omega: C64,
    pub hopf: C64,
    pub lambda: C64,
    /// max residual of the off-diagonal consistency relations
    pub consistency: f64,
    /// |ΩG′ − ωg′|
    pub hopf_defect: f64,
}

fn log_derivs(f: &CJet<Mat2>, left: bool) -> (Mat2, Mat2) {
    let fi = f.value.inv();
    if left {
        // M = F_z F⁻¹, M′ = F_zz F⁻¹ − M²
        let m = f.d_z * fi;
        (m, f.d_zz * fi - m * m)
    } else {
        // N = F⁻¹F_z, N′ = F⁻¹F_zz − N²
        let n = fi * f.d_z;
        (n, fi * f.d_zz - n * n)
    }
}

fn read_off(m: &Mat2, mp: &Mat2, z: C64, what: &str) -> Result<(C64, C64, C64, f64)> {
    let den = m.0[1][0];
    if den.norm() <= 1e-14 * (1.0 + m.max_abs()) {
        return Err(Error::UndefinedData(format!(
            "{what} density vanishes at z = {z}"
        )));
    }
    let gm = m.0[0][0] / den;
    let gp = (mp.0[0][0] * den - m.0[0][0] * mp.0[1][0]) / (den * den);
    let scale = den.norm() * (1.0 + gm.norm_sqr());
    let cons = ((m.0[0][1] + gm * gm * den).norm()).max((m.0[1][1] + gm * den).norm()) / scale;
    Ok((gm, gp, den, cons))
}

pub fn data_from_frame(frame: &NullFrame, z: C64) -> Result<WeierstrassData> {
    let f = frame.eval(z)?;
    data_from_jet(&f, z)
}

pub fn data_from_jet(f: &CJet<Mat2>, z: C64) -> Result<WeierstrassData> {
    let (m, mp) = log_derivs(f, true);
    let (n, np) = log_derivs(f, false);
    let (big_g, big_g_prime, big_omega, c1) = read_off(&m, &mp, z, "Omega")?;
    let (g, g_prime, omega, c2) = read_off(&n, &np, z, "omega")?;
    let hopf = big_omega * big_g_prime;
    let hopf_defect = (hopf - omega * g_prime).norm() / (1.0 + hopf.norm());
    Ok(WeierstrassData {
        z,
        big_g,
        big_g_prime,
        big_omega,
        g,
        g_prime,
        omega,
        hopf,
        lambda: C64::new(1.0, 0.0),
        consistency: c1.max(c2),
        hopf_defect,
    })
}

impl WeierstrassData {
    /// δ with ω = δ·dw/w² in the coordinate w = g.
    pub fn normalized_delta(&self) -> C64 {
        self.omega * self.g * self.g / self.g_prime
    }
    /// ω-density in the coordinate w = g, i.e. ω/g′.
    pub fn omega_in_g(&self) -> C64 {
        self.omega / self.g_prime
    }
    pub fn associate(&self, lambda: C64) -> Result<WeierstrassData> {
        if lambda == C64::new(0.0, 0.0) {
            return Err(Error::ZeroLambda);
        }
        Ok(WeierstrassData {
            omega: self.omega * lambda,
            hopf: self.hopf * lambda,
            lambda: self.lambda * lambda,
            ..*self
        })
    }
    pub fn sample(&self) -> DataSample {
        let p = |c: C64| [c.re, c.im];
        DataSample {
            z: p(self.z),
            big_g: p(self.big_g),
            g: p(self.g),
            big_omega: p(self.big_omega),
            omega: p(self.omega),
            hopf: p(self.hopf),
        }
    }
}

/// JSON record of one data sample; complex numbers as [re, im].
#[derive(Debug, Clone, Serialize)]
pub struct DataSample {
    pub z: [f64; 2],
    #[serde(rename = "G")]
    pub big_g: [f64; 2],
    pub g: [f64; 2],
    #[serde(rename = "Omega")]
    pub big_omega: [f64; 2],
    pub omega: [f64; 2],
    pub hopf: [f64; 2],
}

/// Samples as a JSON array with sorted keys.
pub fn samples_json(data: &[WeierstrassData]) -> String {
    let v: Vec<serde_json::Value> = data
        .iter()
        .map(|d| serde_json::to_value(d.sample()).expect("serializable"))
        .collect();
    serde_json::to_string_pretty(&serde_json::Value::Array(v)).expect("serializable")
}

/// Solves z ↦ g(z) = w by Newton's method from `guess`.
pub fn invert_secondary(frame: &NullFrame, w: C64, guess: C64) -> Result<C64> {
    let mut z = guess;
    for _ in 0..100 {
        let d = data_from_frame(frame, z)?;
        let step = (d.g - w) / d.g_prime;
        z -= step;
        if step.norm() <= 1e-12 * (1.0 + z.norm()) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergent(format!(
        "inverting g near {guess} for w = {w}"
    )))
}

type DataMap = Arc<dyn Fn(CJet<C64>) -> [CJet<C64>; 2] + Send + Sync>;

/// Weierstrass data as functions: z ↦ (g(z), ω-density(z)).
#[derive(Clone)]
pub struct DataFns {
    f: DataMap,
    pub lambda: C64,
    pub label: String,
}

impl DataFns {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(CJet<C64>) -> [CJet<C64>; 2] + Send + Sync + 'static,
    ) -> Self {
        DataFns {
            f: Arc::new(f),
            lambda: C64::new(1.0, 0.0),
            label: label.into(),
        }
    }
    /// (w, δ·dw/w²)
    pub fn catenoid(delta: C64) -> Self {
        DataFns::new(format!("catenoid[{delta}]"), move |w| {
            [w, (w * w).recip().scale(delta)]
        })
    }
    /// (g, λω)
    pub fn associate(&self, lambda: C64) -> Result<DataFns> {
        if lambda == C64::new(0.0, 0.0) {
            return Err(Error::ZeroLambda);
        }
        Ok(DataFns {
            lambda: self.lambda * lambda,
            ..self.clone()
        })
    }
    pub fn eval(&self, z: C64) -> [CJet<C64>; 2] {
        let [g, om] = (self.f)(CJet::var(z));
        [g, om.scale(self.lambda)]
    }
    /// W with F⁻¹F_z = W, as a germ.
    fn generator(&self, z: C64) -> CJet<Mat2> {
        let [g, om] = self.eval(z);
        let one = CJet::constant(C64::new(1.0, 0.0));
        cmat(g * om, -(g * g * om), one * om, -(g * om))
    }
}

/// Integrates F⁻¹F_z = [[g, −g²],[1, −g]]·ω from F(z₀) = F₀ along the
/// route chosen by `policy`.
pub fn integrate_frame(
    data: &DataFns,
    z0: C64,
    f0: Mat2,
    policy: PathPolicy,
    spec: OdeSpec,
) -> NullFrame {
    let data = data.clone();
    NullFrame::new(format!("F[{}]", data.label), move |z| {
        let path = policy.route(z0, z)?;
        let mut f = f0;
        for w in path.windows(2) {
            let (a, dz) = (w[0], w[1] - w[0]);
            let rhs = |s: f64, y: &Mat2| *y * data.generator(a + dz * s).value.scale(dz);
            f = integrate_ode(&rhs, f, 0.0, 1.0, &spec)?;
        }
        let w = data.generator(z);
        Ok(CJet {
            value: f,
            d_z: f * w.value,
            d_zz: f * (w.value * w.value + w.d_z),
        })
    })
}

/// Max |⟨·,·⟩ differences| between Minkowski Gram matrices of two point sets,
/// after scaling each by its largest entry (isometry and homothety
/// invariant).
pub fn gram_fingerprint_defect(a: &[Mat2], b: &[Mat2]) -> f64 {
    use crate::cone::matrix_inner;
    let gram = |p: &[Mat2]| {
        let g: Vec<f64> = p
            .iter()
            .flat_map(|x| p.iter().map(move |y| matrix_inner(x, y)))
            .collect();
        let m = g.iter().fold(0.0, |a: f64, x| a.max(x.abs())).max(1e-300);
        g.into_iter().map(move |x| x / m).collect::<Vec<_>>()
    };
    gram(a)
        .iter()
        .zip(gram(b))
        .fold(0.0, |m: f64, (x, y)| m.max((x - y).abs()))
}
