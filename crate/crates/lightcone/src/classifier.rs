//! Ruled surfaces X(s,t) = F(s)·δ(t)·F(s)★ with δ(t) = [[t², t], [t, 1]].
//!
//! The connection Ω = F⁻¹F′ = [[α, β], [γ, −α]] determines the mean
//! curvature numerator, a quartic in t. The classifier fits its
//! coefficients on an s-grid and walks the case split down to a helicoid,
//! a parabolic catenoid, the horosphere, a non-spacelike surface or a
//! refutation with an explicit witness.

use crate::calculus::generic::{CxJet, MatJet, RealJet};
use crate::calculus::jet::{Jet2, Jet3, Scale};
use crate::cone::{c, matrix_inner as ip, Mat2};
use crate::error::{Error, Result};
use crate::surfaces::Immersion;
use nalgebra::{Matrix5, Vector5};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

pub type ScalarFn = Arc<dyn Fn(Jet3<f64>) -> Jet3<f64> + Send + Sync>;
pub type FrameFn = Arc<dyn Fn(Jet3<f64>) -> Jet3<Mat2> + Send + Sync>;

/// Fit nodes and the two held-out nodes.
pub const FIT_T: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
pub const CHECK_T: [f64; 2] = [-3.0, 3.0];

/// Curve s ↦ F(s) in SL(2,ℂ), evaluated to third order.
#[derive(Clone)]
pub struct RuledFrame {
    f: FrameFn,
    pub label: String,
}

impl std::fmt::Debug for RuledFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RuledFrame({})", self.label)
    }
}

impl RuledFrame {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(Jet3<f64>) -> Jet3<Mat2> + Send + Sync + 'static,
    ) -> Self {
        RuledFrame {
            f: Arc::new(f),
            label: label.into(),
        }
    }
    pub fn eval(&self, s: f64) -> Jet3<Mat2> {
        (self.f)(Jet3::var(s))
    }
    pub fn point(&self, s: f64) -> Mat2 {
        self.eval(s).value
    }

    /// exp(sΩ) for a constant trace-free Ω.
    pub fn exponential(omega: Mat2) -> Self {
        RuledFrame::new("constant", move |s| {
            let f = Mat2::exp_tracefree(&omega, c(s.value, 0.0));
            let o2 = omega * omega;
            let d = |m: Mat2, k: usize| m.scale(s.d1.powi(k as i32));
            Jet3 {
                value: f,
                d1: d(f * omega, 1),
                d2: d(f * o2, 2),
                d3: d(f * o2 * omega, 3),
            }
        })
    }

    /// diag(e^{(a+ib)s}, e^{−(a+ib)s}), the screw motion of the helicoid.
    pub fn screw(a: f64, b: f64) -> Self {
        let mu = c(a, b);
        RuledFrame::new(format!("screw({a}, {b})"), move |s| {
            let e = s.cx().scale_c(mu).exp();
            <Jet3<Mat2> as MatJet>::from_entries(e, zero3(), zero3(), e.recip())
        })
    }

    /// diag(e^{(1+ic)G(s)}, ·)·[[1, f(s)/(2c)], [0, 1]].
    pub fn case11(g: ScalarFn, f: ScalarFn, cc: f64) -> Self {
        let mu = c(1.0, cc);
        RuledFrame::new("case 1-1", move |s| {
            let e = g(s).cx().scale_c(mu).exp();
            let b = f(s).cx().scale_c(c(0.5 / cc, 0.0));
            let d = <Jet3<Mat2> as MatJet>::from_entries(e, zero3(), zero3(), e.recip());
            d * upper(b)
        })
    }

    /// [[1, B₁ + iB₂], [0, 1]]·diag(e^{iA}, e^{−iA}).
    pub fn case12(a: ScalarFn, b1: ScalarFn, b2: ScalarFn) -> Self {
        RuledFrame::new("case 1-2", move |s| {
            let e = a(s).cx().scale_c(c(0.0, 1.0)).exp();
            let b = <Jet3<C64> as CxJet>::from_parts(b1(s), b2(s));
            upper(b) * <Jet3<Mat2> as MatJet>::from_entries(e, zero3(), zero3(), e.recip())
        })
    }

    /// [[1, B₁ + i·c₂·A], [0, 1]]·diag(e^{A/2}, e^{−A/2}).
    pub fn case21(a: ScalarFn, b1: ScalarFn, c2: f64) -> Self {
        RuledFrame::new(format!("case 2-1 (c2 = {c2})"), move |s| {
            let av = a(s);
            let e = av.scale(0.5).exp().cx();
            let b = <Jet3<C64> as CxJet>::from_parts(b1(s), av.scale(c2));
            upper(b) * <Jet3<Mat2> as MatJet>::from_entries(e, zero3(), zero3(), e.recip())
        })
    }

    /// Frame multiplied on the left by a constant element of SL(2,ℂ).
    pub fn moved(&self, m: Mat2) -> Self {
        let f = self.f.clone();
        RuledFrame::new(format!("{} moved", self.label), move |s| {
            let j = f(s);
            Jet3 {
                value: m * j.value,
                d1: m * j.d1,
                d2: m * j.d2,
                d3: m * j.d3,
            }
        })
    }
}

fn zero3() -> Jet3<C64> {
    Jet3::constant(c(0.0, 0.0))
}

fn upper(b: Jet3<C64>) -> Jet3<Mat2> {
    let one = Jet3::constant(c(1.0, 0.0));
    <Jet3<Mat2> as MatJet>::from_entries(one, b, zero3(), one)
}

trait ScaleC {
    fn scale_c(self, k: C64) -> Self;
}
impl ScaleC for Jet3<C64> {
    fn scale_c(self, k: C64) -> Self {
        self.map(|x| x * k)
    }
}

/// Connection data at one s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RulingSample {
    pub s: f64,
    pub frame: Mat2,
    pub omega: Mat2,
    pub omega_prime: Mat2,
}

impl RulingSample {
    /// Pointwise data with F(s) = I.
    pub fn at(omega: Mat2, omega_prime: Mat2) -> Self {
        RulingSample {
            s: 0.0,
            frame: Mat2::identity(),
            omega,
            omega_prime,
        }
    }
    pub fn alpha(&self) -> C64 {
        self.omega.at(0, 0)
    }
    pub fn beta(&self) -> C64 {
        self.omega.at(0, 1)
    }
    pub fn gamma(&self) -> C64 {
        self.omega.at(1, 0)
    }
    pub fn alpha_prime(&self) -> C64 {
        self.omega_prime.at(0, 0)
    }
    pub fn beta_prime(&self) -> C64 {
        self.omega_prime.at(0, 1)
    }
    pub fn gamma_prime(&self) -> C64 {
        self.omega_prime.at(1, 0)
    }
    /// 2tα₂ + β₂ − t²γ₂; EG − F² is its square.
    pub fn den(&self, t: f64) -> f64 {
        2.0 * t * self.alpha().im + self.beta().im - t * t * self.gamma().im
    }
    fn scale(&self) -> f64 {
        1.0 + self.omega.max_abs() + self.omega_prime.max_abs()
    }
}

/// Ω and Ω′ sampled on an s-grid.
#[derive(Debug, Clone)]
pub struct RulingData {
    pub label: String,
    pub samples: Vec<RulingSample>,
}

impl RulingData {
    pub fn constant(omega: Mat2, grid: &[f64]) -> Result<Self> {
        ruling_from_frame(&RuledFrame::exponential(omega), grid)
    }
    /// F at the node nearest s = 0, where the normal forms put F = I.
    fn base(&self) -> Mat2 {
        let p = self
            .samples
            .iter()
            .min_by(|a, b| a.s.abs().total_cmp(&b.s.abs()))
            .unwrap();
        p.frame
    }
    fn sup(&self, f: impl Fn(&RulingSample) -> f64) -> f64 {
        self.samples.iter().map(|p| f(p).abs()).fold(0.0, f64::max)
    }
}

/// Uniform grid of n points on [s0, s1].
pub fn s_grid(s0: f64, s1: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|k| s0 + (s1 - s0) * k as f64 / (n - 1) as f64)
        .collect()
}

pub fn ruling_from_frame(frame: &RuledFrame, grid: &[f64]) -> Result<RulingData> {
    let mut samples = Vec::with_capacity(grid.len());
    for &s in grid {
        let j = frame.eval(s);
        let defect = (j.value.det() - c(1.0, 0.0)).norm();
        if !(defect <= 1e-8 * (1.0 + j.value.max_abs().powi(2))) {
            return Err(Error::NonUnimodular(defect));
        }
        let inv = j.value.inv();
        let omega = inv * j.d1;
        let omega_prime = inv * j.d2 - omega * omega;
        samples.push(RulingSample {
            s,
            frame: j.value,
            omega,
            omega_prime,
        });
    }
    Ok(RulingData {
        label: frame.label.clone(),
        samples,
    })
}

/// f_ι(t) = P(t)·a_ι·P(t)★ with P(t) = [[1, t], [0, 1]].
pub fn asymptotic_basis(t: f64) -> [Mat2; 4] {
    let p = Mat2::real(1.0, t, 0.0, 1.0);
    let a = [
        Mat2::real(-2.0, 0.0, 0.0, 0.0),
        Mat2::real(0.0, 1.0, 1.0, 0.0),
        Mat2::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)),
        Mat2::real(0.0, 0.0, 0.0, 1.0),
    ];
    a.map(|m| p * m * p.adjoint())
}

/// Pulled-back position, derivatives and lightlike Gauss map at (s, t).
#[derive(Debug, Clone, Copy)]
pub struct PulledBack {
    pub x: Mat2,
    pub x_s: Mat2,
    pub x_t: Mat2,
    pub x_ss: Mat2,
    pub x_st: Mat2,
    pub x_tt: Mat2,
    /// `None` where the ruling is not spacelike.
    pub gauss: Option<Mat2>,
}

pub fn pulled_back(p: &RulingSample, t: f64) -> PulledBack {
    let f = asymptotic_basis(t);
    let (om, oma) = (p.omega, p.omega.adjoint());
    let delta = f[3];
    let second = p.omega_prime + om * om;
    let den = p.den(t);
    let gauss = (den.abs() > 1e-300).then(|| {
        let q = 2.0 * (p.alpha().re - t * p.gamma().re) / den;
        f[0] + f[2].scale(q) - f[3].scale(0.5 * q * q)
    });
    PulledBack {
        x: delta,
        x_s: om * delta + delta * oma,
        x_t: f[1],
        x_ss: second * delta + (om * delta * oma).scale(2.0) + delta * second.adjoint(),
        x_st: om * f[1] + f[1] * oma,
        x_tt: Mat2::real(2.0, 0.0, 0.0, 0.0),
        gauss,
    }
}

/// den·(E·N − 2F·M + G·L), a polynomial of degree ≤ 4 in t.
///
/// The Gauss map is f₀ + p f₂ − (p²/2) f₃ with p = 2(α₁ − tγ₁)/den and
/// ⟨f₃, ·⟩ contributes −2(EG − F²) = −2den², so after multiplying by den
/// no division is left and the value stays finite on non-spacelike rulings.
pub fn zmc_numerator(p: &RulingSample, t: f64) -> f64 {
    let pb = pulled_back(p, t);
    let f = asymptotic_basis(t);
    let (e, fm, gm) = (
        ip(&pb.x_s, &pb.x_s),
        ip(&pb.x_s, &pb.x_t),
        ip(&pb.x_t, &pb.x_t),
    );
    let b = |y: &Mat2| e * ip(y, &pb.x_tt) - 2.0 * fm * ip(y, &pb.x_st) + gm * ip(y, &pb.x_ss);
    let den = p.den(t);
    let q = 2.0 * (p.alpha().re - t * p.gamma().re);
    den * b(&f[0]) + q * b(&f[2]) + q * q * den
}

/// Coefficients c₀…c₄ of the numerator at one s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZmcSlice {
    pub s: f64,
    pub c: [f64; 5],
    /// Largest miss at the held-out nodes.
    pub residual: f64,
    pub scale: f64,
}

impl ZmcSlice {
    pub fn eval(&self, t: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &k| acc * t + k)
    }
}

pub fn coefficients(p: &RulingSample) -> Result<ZmcSlice> {
    let vals: Vec<f64> = FIT_T.iter().map(|&t| zmc_numerator(p, t)).collect();
    let v = Matrix5::from_fn(|i, j| FIT_T[i].powi(j as i32));
    let rhs = Vector5::from_column_slice(&vals);
    let sol = v
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::NonConvergent("Vandermonde solve".into()))?;
    let mut slice = ZmcSlice {
        s: p.s,
        c: [sol[0], sol[1], sol[2], sol[3], sol[4]],
        residual: 0.0,
        scale: 1.0,
    };
    let mut peak = vals.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for t in CHECK_T {
        let y = zmc_numerator(p, t);
        peak = peak.max(y.abs());
        slice.residual = slice.residual.max((y - slice.eval(t)).abs());
    }
    slice.scale = 1.0 + peak;
    let limit = 1e-7 * slice.scale;
    if !(slice.residual <= limit) {
        return Err(Error::FitResidualExceeded {
            residual: slice.residual,
            limit,
        });
    }
    Ok(slice)
}

/// −2γ₂(γ₁² + γ₂²)
pub fn closed_c4(p: &RulingSample) -> f64 {
    let g = p.gamma();
    -2.0 * g.im * g.norm_sqr()
}

/// 8α₂(γ₁² + γ₂²) − 2γ₂γ₁′ + 2γ₁γ₂′
pub fn closed_c3(p: &RulingSample) -> f64 {
    let (g, gp) = (p.gamma(), p.gamma_prime());
    8.0 * p.alpha().im * g.norm_sqr() - 2.0 * g.im * gp.re + 2.0 * g.re * gp.im
}

/// −6β₂γ₁² for α₂ ≡ 0. The fit gives the opposite sign.
pub fn closed_case2_c2(p: &RulingSample) -> f64 {
    -6.0 * p.beta().im * p.gamma().re.powi(2)
}

/// 4(α₂α₁′ − α₁α₂′), for γ ≡ 0, up to overall sign.
pub fn closed_case1_c1(p: &RulingSample) -> f64 {
    let (a, ap) = (p.alpha(), p.alpha_prime());
    4.0 * (a.im * ap.re - a.re * ap.im)
}

/// 2β₂α₁′ + α₁(4α₂β₁ − 2β₂′) − 4α₁²β₂, for γ ≡ 0, up to overall sign.
pub fn closed_case1_c0(p: &RulingSample) -> f64 {
    let (a, b, ap, bp) = (p.alpha(), p.beta(), p.alpha_prime(), p.beta_prime());
    2.0 * b.im * ap.re + a.re * (4.0 * a.im * b.re - 2.0 * bp.im) - 4.0 * a.re * a.re * b.im
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Branch {
    Helicoid {
        a: f64,
        b: f64,
    },
    /// `c` is the constant in β₂ = c·A′e^{−A}.
    ParabolicCatenoid {
        c: f64,
    },
    Horosphere,
    NotZmc {
        s: f64,
        t: f64,
        numerator: f64,
    },
    NotSpacelike,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Helicoid { .. } => "helicoid",
            Branch::ParabolicCatenoid { .. } => "parabolic-catenoid",
            Branch::Horosphere => "horosphere",
            Branch::NotZmc { .. } => "not-zmc",
            Branch::NotSpacelike => "not-spacelike",
        }
    }
}

/// Thresholds for "function ≡ 0" on the grid, relative to the data scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub zero: f64,
    pub nonzero: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            zero: 1e-8,
            nonzero: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Vanish {
    Zero,
    NonZero,
    Ambiguous,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub branch: Branch,
    pub case: &'static str,
    /// Named residuals, sorted by name.
    pub residuals: std::collections::BTreeMap<String, f64>,
    pub slices: Vec<ZmcSlice>,
}

impl Classification {
    /// {branch, parameters, residuals, witnesses}
    pub fn report(&self) -> Value {
        let (params, witnesses) = match self.branch {
            Branch::Helicoid { a, b } => (json!({ "a": a, "b": b }), json!([])),
            Branch::ParabolicCatenoid { c } => (json!({ "c": c }), json!([])),
            Branch::NotZmc { s, t, numerator } => (
                json!({}),
                json!([{ "s": s, "t": t, "numerator": numerator }]),
            ),
            _ => (json!({}), json!([])),
        };
        json!({
            "branch": self.branch.name(),
            "case": self.case,
            "parameters": params,
            "residuals": self.residuals,
            "witnesses": witnesses,
        })
    }
}

pub fn classify(data: &RulingData) -> Result<Classification> {
    classify_with(data, ClassifyOptions::default())
}

pub fn classify_with(data: &RulingData, opt: ClassifyOptions) -> Result<Classification> {
    if data.samples.is_empty() {
        return Err(Error::BadParameter("empty s-grid".into()));
    }
    let scale = 1.0 + data.sup(|p| p.omega.max_abs());
    let test = |sup: f64, sc: f64| -> Vanish {
        let r = sup / sc;
        if r <= opt.zero {
            Vanish::Zero
        } else if r > opt.nonzero {
            Vanish::NonZero
        } else {
            Vanish::Ambiguous
        }
    };
    let ambiguous = |what: &str, sup: f64| {
        Error::AmbiguousBranch(format!("{what}: sup = {sup:e} inside the guard band"))
    };
    let mut res = std::collections::BTreeMap::new();

    // Spacelike needs den(t) ≢ 0, i.e. (α₂, β₂, γ₂) ≠ 0.
    let den_sup = data.sup(|p| {
        p.alpha()
            .im
            .abs()
            .max(p.beta().im.abs())
            .max(p.gamma().im.abs())
    });
    res.insert("spacelike".to_string(), den_sup / scale);
    match test(den_sup, scale) {
        Vanish::Zero => {
            return Ok(Classification {
                branch: Branch::NotSpacelike,
                case: "2-2",
                residuals: res,
                slices: Vec::new(),
            })
        }
        Vanish::Ambiguous => return Err(ambiguous("α₂, β₂, γ₂", den_sup)),
        Vanish::NonZero => {}
    }

    let slices = data
        .samples
        .iter()
        .map(coefficients)
        .collect::<Result<Vec<_>>>()?;
    let cscale = data
        .samples
        .iter()
        .map(|p| p.scale())
        .fold(1.0, f64::max)
        .powi(3);
    let csup = slices
        .iter()
        .flat_map(|z| z.c.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let fit = slices
        .iter()
        .fold(0.0f64, |m, z| m.max(z.residual / z.scale));
    res.insert("coefficients".to_string(), csup / cscale);
    res.insert("fit".to_string(), fit);
    let finish = |branch, case, res| {
        Ok(Classification {
            branch,
            case,
            residuals: res,
            slices: slices.clone(),
        })
    };
    match test(csup, cscale) {
        Vanish::NonZero => {
            let w = witness(data)
                .ok_or_else(|| Error::AmbiguousBranch("no spacelike witness".into()))?;
            if w.2.abs() <= 10.0 * opt.zero * cscale {
                return Err(ambiguous("witness", w.2));
            }
            return finish(
                Branch::NotZmc {
                    s: w.0,
                    t: w.1,
                    numerator: w.2,
                },
                "refuted",
                res,
            );
        }
        Vanish::Ambiguous => return Err(ambiguous("c₀…c₄", csup)),
        Vanish::Zero => {}
    }

    let a2 = data.sup(|p| p.alpha().im);
    let g1 = data.sup(|p| p.gamma().re);
    let a1 = data.sup(|p| p.alpha().re);
    res.insert("gamma".to_string(), data.sup(|p| p.gamma().norm()) / scale);
    match test(a2, scale) {
        Vanish::Ambiguous => Err(ambiguous("α₂", a2)),
        Vanish::NonZero => {
            if test(g1, scale) != Vanish::Zero {
                return Err(ambiguous("γ₁ with c ≡ 0", g1));
            }
            if data
                .samples
                .iter()
                .any(|p| p.alpha().im.abs() <= opt.nonzero * scale)
            {
                return Err(Error::AmbiguousBranch(
                    "α₂ vanishes on part of the grid".into(),
                ));
            }
            match test(a1, scale) {
                Vanish::Ambiguous => Err(ambiguous("α₁", a1)),
                Vanish::Zero => {
                    res.insert("hyperplane".to_string(), hyperplane_defect(data));
                    finish(Branch::Horosphere, "1-2", res)
                }
                Vanish::NonZero => {
                    let (num, den) = data.samples.iter().fold((0.0, 0.0), |(n, d), p| {
                        (
                            n + p.alpha().re * p.alpha().im,
                            d + p.alpha().im * p.alpha().im,
                        )
                    });
                    let d = num / den;
                    let dres = data.sup(|p| p.alpha().re - d * p.alpha().im);
                    res.insert("proportionality".to_string(), dres / scale);
                    if test(dres, scale) != Vanish::Zero {
                        return Err(ambiguous("α₁ − dα₂", dres));
                    }
                    if data
                        .samples
                        .iter()
                        .any(|p| p.alpha().re.abs() <= opt.nonzero * scale)
                    {
                        return Err(Error::AmbiguousBranch(
                            "α₁ vanishes on part of the grid".into(),
                        ));
                    }
                    let a0 = data.samples[0].alpha();
                    let spread = data.sup(|p| (p.alpha() - a0).norm());
                    let (a, b) = if spread <= opt.zero * scale {
                        (a0.re, a0.im)
                    } else {
                        (1.0, 1.0 / d)
                    };
                    finish(Branch::Helicoid { a, b }, "1-1", res)
                }
            }
        }
        Vanish::Zero => {
            if test(g1, scale) != Vanish::Zero {
                return Err(ambiguous("γ₁ with c ≡ 0", g1));
            }
            match test(a1, scale) {
                Vanish::Ambiguous => Err(ambiguous("α₁", a1)),
                Vanish::Zero => {
                    res.insert("hyperplane".to_string(), hyperplane_defect(data));
                    finish(Branch::Horosphere, "2-1", res)
                }
                Vanish::NonZero => {
                    // β₂ = c·A′e^{−A}, A′ = 2α₁, e^{−A} = |F̂₂₂|².
                    let base = data.base().inv();
                    let w: Vec<(f64, f64)> = data
                        .samples
                        .iter()
                        .map(|p| {
                            let fh = base * p.frame;
                            (2.0 * p.alpha().re * fh.at(1, 1).norm_sqr(), p.beta().im)
                        })
                        .collect();
                    let (num, den) = w
                        .iter()
                        .fold((0.0, 0.0), |(n, d), (x, y)| (n + x * y, d + x * x));
                    let cc = num / den;
                    let ode = w
                        .iter()
                        .map(|(x, y)| (y - cc * x).abs())
                        .fold(0.0, f64::max);
                    res.insert("ode".to_string(), ode / scale);
                    if test(ode, scale) != Vanish::Zero {
                        return Err(ambiguous("β₂ − cA′e^{−A}", ode));
                    }
                    finish(Branch::ParabolicCatenoid { c: cc }, "2-1", res)
                }
            }
        }
    }
}

/// Largest |numerator| over the grid at spacelike nodes t ∈ {−3, …, 3}.
fn witness(data: &RulingData) -> Option<(f64, f64, f64)> {
    let mut best: Option<(f64, f64, f64)> = None;
    for p in &data.samples {
        for k in -3..=3 {
            let t = k as f64;
            if p.den(t).abs() < 1e-6 * p.scale() {
                continue;
            }
            let v = zmc_numerator(p, t);
            if best.is_none_or(|b| v.abs() > b.2.abs()) {
                best = Some((p.s, t, v));
            }
        }
    }
    best
}

/// Sup of |x₀ − x₃ − 1| for F(s*)⁻¹F(s)·δ(t)·(…)★, t ∈ {−2, …, 2}.
fn hyperplane_defect(data: &RulingData) -> f64 {
    let base = data.base().inv();
    let mut worst = 0.0f64;
    for p in &data.samples {
        let fh = base * p.frame;
        for t in FIT_T {
            let x = fh * asymptotic_basis(t)[3] * fh.adjoint();
            worst = worst.max((x.at(1, 1).re - 1.0).abs() / (1.0 + x.max_abs()));
        }
    }
    worst
}

/// X(s, t) = F(s)·δ(t)·F(s)★ over (s, t) ∈ domain.
pub fn build_ruled(frame: &RuledFrame, domain: [f64; 4]) -> Result<Immersion> {
    let [s0, s1, _, _] = domain;
    for s in [s0, 0.5 * (s0 + s1), s1] {
        let d = (frame.point(s).det() - c(1.0, 0.0)).norm();
        if !(d <= 1e-8) {
            return Err(Error::NonUnimodular(d));
        }
    }
    let f = frame.f.clone();
    Ok(Immersion::new(
        format!("ruled {}", frame.label),
        domain,
        move |s, t| {
            let fj = f(Jet3::var(s)).along_u();
            let tj = Jet2::var_v(t);
            let one = Jet2::constant(1.0);
            let delta = crate::calculus::generic::outer(tj.cx(), one.cx());
            fj * delta * fj.adjoint()
        },
    ))
}
