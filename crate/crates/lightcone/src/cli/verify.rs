//! Verification suites behind `lightcone verify`.

use crate::calculus::generic::CxJet;
use crate::calculus::jet::{Jet2, Jet3};
use crate::calculus::OdeSpec;
use crate::catalog::{
    build, cardioid_residual, default_kinds, delta_of_a, delta_value, elliptic_frame,
    helicoid_frame, helicoid_helix, hyperbolic_frame, parabolic_frame, CatalogKind,
};
use crate::classifier::{
    classify_with, ruling_from_frame, s_grid, Branch, ClassifyOptions, RuledFrame, ScalarFn,
};
use crate::cone::{c, Mat2};
use crate::curves::{frenet, frenet_residual, geodesic, GeodesicSpec};
use crate::error::{Error, Result};
use crate::surfaces::{curvatures, gauss_residual, graph_surface, lightlike_gauss_map};
use crate::weierstrass::{data_from_frame, integrate_frame, DataFns, PathPolicy};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

pub const SUITES: [&str; 7] = [
    "frenet",
    "gauss-map",
    "weierstrass-roundtrip",
    "catalog-zmc",
    "cardioid",
    "lawson",
    "classifier-branches",
];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    /// The identity being checked.
    pub anchor: String,
    pub status: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Replaces every default tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: None, seed: 7 }
    }
}

struct Acc {
    checks: Vec<Check>,
    tol: Option<f64>,
}

impl Acc {
    fn push(&mut self, id: impl Into<String>, anchor: &str, residual: f64, default_tol: f64) {
        let tolerance = self.tol.unwrap_or(default_tol);
        let status = if residual <= tolerance {
            "pass"
        } else {
            "fail"
        };
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            status,
            residual,
            tolerance,
        });
    }
    /// Errors count as an infinite residual.
    fn push_res(&mut self, id: impl Into<String>, anchor: &str, r: Result<f64>, default_tol: f64) {
        self.push(id, anchor, r.unwrap_or(f64::INFINITY), default_tol);
    }
}

pub fn run_suite(name: &str, opt: &VerifyOptions) -> Result<Report> {
    let mut acc = Acc {
        checks: vec![],
        tol: opt.tol,
    };
    match name {
        "frenet" => frenet_suite(&mut acc),
        "gauss-map" => gauss_suite(&mut acc),
        "weierstrass-roundtrip" => weierstrass_suite(&mut acc),
        "catalog-zmc" => zmc_suite(&mut acc),
        "cardioid" => cardioid_suite(&mut acc),
        "lawson" => lawson_suite(&mut acc, opt.seed),
        "classifier-branches" => classifier_suite(&mut acc, opt.seed),
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    let pass = acc.checks.iter().all(|c| c.status == "pass");
    Ok(Report {
        suite: name.to_string(),
        pass,
        checks: acc.checks,
    })
}

/// Runs the named suites (all when empty); the flag is the AND of the reports.
pub fn run(names: &[String], opt: &VerifyOptions) -> Result<(Vec<Report>, bool)> {
    let names: Vec<String> = if names.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let reports = names
        .iter()
        .map(|n| run_suite(n, opt))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.pass);
    Ok((reports, ok))
}

fn frenet_suite(acc: &mut Acc) {
    for (a, b) in [(1.0, 1.0), (2.0, 1.0), (0.5, -0.7), (1.3, 0.4)] {
        let r = frenet(&helicoid_helix(a, b).jet(0.3)).map(|f| {
            (f.kappa - 2.0 * (a * a - b * b))
                .abs()
                .max((f.tau - 4.0 * a * b).abs())
        });
        acc.push_res(
            format!("helix[{a},{b}]"),
            "helix of H^{a,b}: kappa = 2(a^2-b^2), tau = 4ab",
            r,
            1e-7,
        );
    }
    let r = frenet_residual(&helicoid_helix(2.0, 1.0), 0.3, 1e-4);
    acc.push_res("frenet-ode", "Frenet equations along the helix", r, 1e-6);
    let r = geodesic(&GeodesicSpec::standard()).and_then(|g| {
        let mut m: f64 = 0.0;
        for s in [-1.0, 0.0, 0.7, 2.0] {
            let f = frenet(&g.jet(s))?;
            m = m.max(f.kappa.abs()).max(f.tau.abs());
        }
        Ok(m)
    });
    acc.push_res("geodesic", "geodesics have kappa = tau = 0", r, 1e-8);
}

fn gauss_suite(acc: &mut Acc) {
    let r = build(CatalogKind::Horosphere).and_then(|s| {
        let mut m: f64 = 0.0;
        for (u, v) in s.immersion.grid(4) {
            let g = lightlike_gauss_map(&s.immersion, u, v)?;
            m = m.max((g.to_mat() - Mat2::real(-2.0, 0.0, 0.0, 0.0)).max_abs());
        }
        Ok(m)
    });
    acc.push_res(
        "horosphere",
        "horosphere Gauss map is [[-2,0],[0,0]]",
        r,
        1e-12,
    );
    for k in default_kinds() {
        let r = build(k).map(|s| {
            s.immersion
                .grid(5)
                .into_iter()
                .filter_map(|(u, v)| {
                    let j = s.immersion.eval(u, v);
                    crate::surfaces::gauss_map_at(&j, u, v)
                        .ok()
                        .map(|g| gauss_residual(&j, &g))
                })
                .fold(0.0, f64::max)
        });
        acc.push_res(
            k.name(),
            "<G,G> = <G,X_u> = <G,X_v> = 0, <G,X> = 1",
            r,
            1e-9,
        );
    }
}

fn weierstrass_suite(acc: &mut Acc) {
    let pts = [c(0.3, 0.2), c(-0.4, 0.7), c(1.1, -0.5)];
    for k in default_kinds() {
        let r = build(k).and_then(|s| s.lift_frame_defect(&pts));
        acc.push_res(
            format!("lift-frame[{}]", k.name()),
            "F diag(1,0) F* = phi phi*",
            r,
            1e-9,
        );
    }
    let z = c(0.4, 0.3);
    let cases: [(&str, Result<crate::weierstrass::NullFrame>, C64); 4] = [
        ("elliptic a=2", elliptic_frame(2.0), c(-3.0 / 16.0, 0.0)),
        ("hyperbolic b=1", hyperbolic_frame(1.0), c(-0.5, 0.0)),
        ("parabolic c=1", Ok(parabolic_frame(1.0)), c(-0.25, 0.0)),
        ("helicoid a=1", Ok(helicoid_frame(1.0)), delta_value(1.0)),
    ];
    for (id, f, want) in cases {
        let r = f
            .and_then(|f| data_from_frame(&f, z))
            .map(|d| (d.normalized_delta() - want).norm());
        acc.push_res(
            format!("delta[{id}]"),
            "normalized omega = delta dw/w^2",
            r,
            1e-10,
        );
    }
    let delta = c(-3.0 / 16.0, 0.0);
    let frame = integrate_frame(
        &DataFns::catenoid(delta),
        c(1.0, 0.0),
        Mat2::identity(),
        PathPolicy::AvoidOrigin(0.2),
        OdeSpec::default(),
    );
    let r = data_from_frame(&frame, c(1.3, 0.8))
        .map(|d| (d.normalized_delta() - delta).norm().max(d.consistency));
    acc.push_res(
        "integrate-catenoid",
        "data -> frame -> data round trip",
        r,
        1e-7,
    );
}

fn zmc_suite(acc: &mut Acc) {
    for k in default_kinds() {
        let r = build(k).map(|s| s.max_abs_h(7));
        acc.push_res(k.name(), "catalog surfaces have H = 0", r, 1e-8);
    }
}

/// (max residual, max |δ|) over an n-point sweep of a ∈ [−2, 2].
pub fn cardioid_sweep(n: usize) -> (f64, f64) {
    let mut res: f64 = 0.0;
    let mut top: f64 = 0.0;
    for k in 0..n {
        let a = -2.0 + 4.0 * (k as f64 + 0.5) / n as f64;
        let l = delta_of_a(a);
        if let Some([x, y]) = l.xy {
            res = res.max(cardioid_residual(x, y).abs());
        }
        top = top.max(l.delta().norm());
    }
    (res, top)
}

fn cardioid_suite(acc: &mut Acc) {
    let (res, top) = cardioid_sweep(2000);
    acc.push(
        "quartic",
        "(x^2+y^2)^2 + x(x^2+y^2)/4 - y^2/64 = 0 on delta(a)",
        res,
        1e-10,
    );
    acc.push(
        "max-modulus",
        "max |delta(a)| = 1/(2 sqrt 3)",
        (top - 0.5 / 3f64.sqrt()).abs(),
        1e-6,
    );
}

/// Re Σ c_k (x + iy)^k, harmonic for any complex c_k.
pub fn harmonic_poly(
    coef: &[C64],
) -> impl Fn(Jet2<f64>, Jet2<f64>) -> Jet2<f64> + Send + Sync + Clone + 'static {
    let coef = coef.to_vec();
    move |x, y| {
        let z = <Jet2<C64> as CxJet>::from_parts(x, y);
        let mut p = <Jet2<C64> as CxJet>::cst(c(0.0, 0.0));
        for k in coef.iter().rev() {
            p = p * z + <Jet2<C64> as CxJet>::cst(*k);
        }
        p.re()
    }
}

pub fn random_coefficients(rng: &mut ChaCha8Rng, degree: usize) -> Vec<C64> {
    (0..=degree)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// max |H| of the graph e^ℓ·h over a 5×5 grid of [−0.5, 0.5]².
pub fn lawson_max_h(
    l: impl Fn(Jet2<f64>, Jet2<f64>) -> Jet2<f64> + Send + Sync + 'static,
) -> Result<f64> {
    let x = graph_surface("lawson", [-0.5, 0.5, -0.5, 0.5], l);
    let mut m: f64 = 0.0;
    for (u, v) in x.grid(5) {
        m = m.max(curvatures(&x, u, v)?.1.h.abs());
    }
    Ok(m)
}

fn lawson_suite(acc: &mut Acc, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let coef = random_coefficients(&mut rng, 4);
        worst = worst.max(lawson_max_h(harmonic_poly(&coef)).unwrap_or(f64::INFINITY));
    }
    acc.push(
        "harmonic",
        "T maps harmonic graphs in isotropic 3-space to H = 0",
        worst,
        1e-8,
    );
}

fn lin(k: f64, b: f64) -> ScalarFn {
    Arc::new(move |s: Jet3<f64>| s.scale_f(k).add_const(b))
}

trait ScaleF {
    fn scale_f(self, k: f64) -> Self;
}
impl ScaleF for Jet3<f64> {
    fn scale_f(self, k: f64) -> Self {
        self.map(|x| x * k)
    }
}

/// Known frames with the branch each must land in.
pub fn branch_cases(rng: &mut ChaCha8Rng) -> Vec<(String, RuledFrame, Branch)> {
    let (a, b) = (
        rng.gen_range(0.3..1.5),
        rng.gen_range(0.3..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
    );
    let cc = rng.gen_range(0.5..2.0);
    let c2 = rng.gen_range(0.5..2.0);
    let g: ScalarFn = Arc::new(|s: Jet3<f64>| s + (s * s).scale_f(0.2));
    let f: ScalarFn = Arc::new(|s: Jet3<f64>| s.sin());
    vec![
        (
            format!("screw[{a},{b}]"),
            RuledFrame::screw(a, b),
            Branch::Helicoid { a, b },
        ),
        (
            format!("case11[c={cc}]"),
            RuledFrame::case11(g, f, cc),
            Branch::Helicoid { a: 1.0, b: cc },
        ),
        (
            format!("case21[c2={c2}]"),
            RuledFrame::case21(lin(1.0, 0.0), lin(0.3, 0.0), c2),
            Branch::ParabolicCatenoid { c: c2 },
        ),
        (
            "case12".into(),
            RuledFrame::case12(lin(0.5, 0.0), lin(1.0, 0.2), lin(-0.4, 0.0)),
            Branch::Horosphere,
        ),
        (
            "constant[0,i,1]".into(),
            RuledFrame::exponential(Mat2::new(
                c(0.0, 0.0),
                c(0.0, 1.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
            )),
            Branch::NotZmc {
                s: 0.0,
                t: 0.0,
                numerator: 0.0,
            },
        ),
    ]
}

/// Parameter error against the expected branch (∞ on a branch mismatch).
pub fn branch_error(got: &Branch, want: &Branch) -> f64 {
    match (got, want) {
        (Branch::Helicoid { a, b }, Branch::Helicoid { a: a0, b: b0 }) => {
            (a - a0).abs().max((b - b0).abs())
        }
        (Branch::ParabolicCatenoid { c }, Branch::ParabolicCatenoid { c: c0 }) => (c - c0).abs(),
        (Branch::Horosphere, Branch::Horosphere) | (Branch::NotSpacelike, Branch::NotSpacelike) => {
            0.0
        }
        (Branch::NotZmc { .. }, Branch::NotZmc { .. }) => 0.0,
        _ => f64::INFINITY,
    }
}

fn classifier_suite(acc: &mut Acc, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = s_grid(-1.0, 1.0, 9);
    for (id, frame, want) in branch_cases(&mut rng) {
        let r = ruling_from_frame(&frame, &grid)
            .and_then(|d| classify_with(&d, ClassifyOptions::default()))
            .map(|cl| {
                let noise = cl.residuals.get("fit").copied().unwrap_or(0.0);
                branch_error(&cl.branch, &want).max(noise)
            });
        acc.push_res(
            id,
            "ruled ZMC surfaces are helicoids, parabolic catenoids or the horosphere",
            r,
            1e-8,
        );
    }
}
