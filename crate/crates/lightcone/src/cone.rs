//! Hermitian model of Lorentzian 4-space, the light cone and its isometries.

use crate::calculus::jet::{Carrier, Ring, Scale};
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            C64::new(a, 0.0),
            C64::new(b, 0.0),
            C64::new(c, 0.0),
            C64::new(d, 0.0),
        )
    }
    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }
    pub fn diag(a: C64, d: C64) -> Self {
        let z = C64::new(0.0, 0.0);
        Mat2::new(a, z, z, d)
    }
    /// diag(1, 0), the frame-side image of the surface point.
    pub fn e11() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 0.0)
    }
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }
    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }
    /// Inverse; callers guarantee det ≠ 0.
    pub fn inv(&self) -> Self {
        let d = self.det();
        let m = &self.0;
        Mat2::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d)
    }
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// exp(sA) for trace-free A: cosh(λs)·I + sinh(λs)/λ·A with λ² = −det A.
    pub fn exp_tracefree(a: &Mat2, s: C64) -> Mat2 {
        let lam = (-a.det()).sqrt();
        if lam.norm() < 1e-12 {
            return Mat2::identity() + a.scale(s);
        }
        let ch = (lam * s).cosh();
        let sh = (lam * s).sinh() / lam;
        Mat2::identity().scale(ch) + a.scale(sh)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}
impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}
impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        let a = self.0;
        Mat2([[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]])
    }
}
impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}
impl Carrier for Mat2 {
    fn zero() -> Self {
        Mat2::real(0.0, 0.0, 0.0, 0.0)
    }
}
impl Ring for Mat2 {
    fn one() -> Self {
        Mat2::identity()
    }
}
impl Scale<f64> for Mat2 {
    fn scale(self, k: f64) -> Self {
        let a = self.0;
        Mat2([[a[0][0] * k, a[0][1] * k], [a[1][0] * k, a[1][1] * k]])
    }
}
impl Scale<C64> for Mat2 {
    fn scale(self, k: C64) -> Self {
        let a = self.0;
        Mat2([[a[0][0] * k, a[0][1] * k], [a[1][0] * k, a[1][1] * k]])
    }
}

/// Point of Lorentzian 4-space, (x0, x1, x2, x3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermMatrix {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl HermMatrix {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        HermMatrix { x0, x1, x2, x3 }
    }
    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }
    pub fn from_coords(x: [f64; 4]) -> Self {
        HermMatrix::new(x[0], x[1], x[2], x[3])
    }
    /// [[x0+x3, x1+i x2], [x1−i x2, x0−x3]]
    pub fn to_mat(&self) -> Mat2 {
        Mat2::new(
            C64::new(self.x0 + self.x3, 0.0),
            C64::new(self.x1, self.x2),
            C64::new(self.x1, -self.x2),
            C64::new(self.x0 - self.x3, 0.0),
        )
    }
    /// Hermitian part of `m` read as a point (anti-Hermitian residue is dropped).
    pub fn from_mat(m: &Mat2) -> Self {
        let a = m.0[0][0].re;
        let d = m.0[1][1].re;
        let b = (m.0[0][1] + m.0[1][0].conj()) * 0.5;
        HermMatrix::new(0.5 * (a + d), b.re, b.im, 0.5 * (a - d))
    }
    /// Size of the anti-Hermitian part of `m`.
    pub fn hermitian_defect(m: &Mat2) -> f64 {
        (*m - m.adjoint()).max_abs()
    }
    pub fn trace(&self) -> f64 {
        2.0 * self.x0
    }
    pub fn det(&self) -> f64 {
        self.x0 * self.x0 - self.x1 * self.x1 - self.x2 * self.x2 - self.x3 * self.x3
    }
    pub fn norm2(&self) -> f64 {
        self.coords().iter().map(|x| x * x).sum()
    }
    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|x| x.is_finite())
    }
}

impl Add for HermMatrix {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        HermMatrix::new(
            self.x0 + o.x0,
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
        )
    }
}
impl Sub for HermMatrix {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        HermMatrix::new(
            self.x0 - o.x0,
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
        )
    }
}
impl Neg for HermMatrix {
    type Output = Self;
    fn neg(self) -> Self {
        HermMatrix::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}
impl Carrier for HermMatrix {
    fn zero() -> Self {
        HermMatrix::new(0.0, 0.0, 0.0, 0.0)
    }
}
impl Scale<f64> for HermMatrix {
    fn scale(self, k: f64) -> Self {
        HermMatrix::new(self.x0 * k, self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

/// ⟨X, Y⟩ = −x0y0 + x1y1 + x2y2 + x3y3, the polarization of −det.
pub fn minkowski_inner(x: &HermMatrix, y: &HermMatrix) -> f64 {
    -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3
}

/// Same pairing computed from matrices: −½(tr X tr Y − tr XY).
pub fn matrix_inner(x: &Mat2, y: &Mat2) -> f64 {
    (-(x.trace() * y.trace() - (*x * *y).trace()) * 0.5).re
}

/// Element of SL(2,ℂ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry(Mat2);

impl Isometry {
    pub fn new(m: Mat2) -> Result<Self> {
        let d = (m.det() - 1.0).norm();
        if d > 1e-10 {
            return Err(Error::NonUnimodular(d));
        }
        Ok(Isometry(m))
    }
    pub fn identity() -> Self {
        Isometry(Mat2::identity())
    }
    pub fn mat(&self) -> &Mat2 {
        &self.0
    }
    pub fn compose(&self, o: &Isometry) -> Isometry {
        Isometry(self.0 * o.0)
    }
    pub fn inverse(&self) -> Isometry {
        Isometry(self.0.inv())
    }
}

/// X ↦ F X F*.
pub fn act(f: &Isometry, x: &HermMatrix) -> HermMatrix {
    let m = f.0 * x.to_mat() * f.0.adjoint();
    HermMatrix::from_mat(&m)
}

/// D₁(μ) = diag(μ, 1/μ)
pub fn rotation_d1(mu: C64) -> Result<Isometry> {
    if mu.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    Ok(Isometry(Mat2::diag(mu, mu.inv())))
}

/// D₂(μ) = [[0, μ], [−1/μ, 0]]
pub fn rotation_d2(mu: C64) -> Result<Isometry> {
    if mu.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let z = C64::new(0.0, 0.0);
    Ok(Isometry(Mat2::new(z, mu, -mu.inv(), z)))
}

/// P(μ) = [[1, μ], [0, 1]]
pub fn rotation_p(mu: C64) -> Isometry {
    let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    Isometry(Mat2::new(o, mu, z, o))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    LightConePlus,
    LightConeMinus,
    Isotropic3,
    Other,
}

/// Region membership with relative tolerance tol·(1 + ‖X‖²).
pub fn classify_point(x: &HermMatrix, tol: f64) -> Region {
    let t = tol * (1.0 + x.norm2());
    let q = minkowski_inner(x, x);
    if q.abs() <= t {
        if x.trace() > t {
            return Region::LightConePlus;
        }
        if x.trace() < -t {
            return Region::LightConeMinus;
        }
    }
    if (x.x0 - x.x3).abs() <= t {
        return Region::Isotropic3;
    }
    Region::Other
}

/// Normal forms of one-parameter subgroups s ↦ exp(sA).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneParamSubgroup {
    /// s ↦ diag(e^{λs}, e^{−λs})
    Diagonal(C64),
    /// s ↦ P(r s)
    Parabolic(f64),
}

/// Conjugacy type of a diagonal generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubgroupType {
    Hyperbolic,
    Elliptic,
    Screw,
    Parabolic,
}

impl OneParamSubgroup {
    pub fn eval(&self, s: f64) -> Mat2 {
        match *self {
            OneParamSubgroup::Diagonal(l) => Mat2::diag((l * s).exp(), (-l * s).exp()),
            OneParamSubgroup::Parabolic(r) => *rotation_p(C64::new(r * s, 0.0)).mat(),
        }
    }
    /// Purely imaginary λ (including the a = 0 helicoid generator) is elliptic.
    pub fn kind(&self) -> SubgroupType {
        match *self {
            OneParamSubgroup::Parabolic(_) => SubgroupType::Parabolic,
            OneParamSubgroup::Diagonal(l) => {
                if l.re.abs() <= 1e-14 * l.norm() {
                    SubgroupType::Elliptic
                } else if l.im.abs() <= 1e-14 * l.norm() {
                    SubgroupType::Hyperbolic
                } else {
                    SubgroupType::Screw
                }
            }
        }
    }
}

/// Returns (N, M) with exp(sA) = M·N(s)·M⁻¹.
pub fn screw_normal_form(a: &Mat2) -> Result<(OneParamSubgroup, Isometry)> {
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::ZeroGenerator);
    }
    // project onto trace-free part
    let tr = a.trace() * 0.5;
    let a = *a - Mat2::identity().scale(tr);
    let d = a.det();
    let m = &a.0;
    if d.norm() > 1e-12 * scale * scale {
        let lam = (-d).sqrt();
        // eigenvectors for ±λ
        let eig = |l: C64| -> [C64; 2] {
            let (x, y) = (m[0][1], l - m[0][0]);
            if x.norm() + y.norm() > 1e-12 * scale {
                [x, y]
            } else {
                [l - m[1][1], m[1][0]]
            }
        };
        let (p, q) = (eig(lam), eig(-lam));
        let r = (p[0] * q[1] - q[0] * p[1]).sqrt();
        let mm = Mat2::new(p[0] / r, q[0] / r, p[1] / r, q[1] / r);
        Ok((OneParamSubgroup::Diagonal(lam), Isometry(mm)))
    } else {
        // nilpotent: columns (v, w) with A w = v, A v = 0 give [[0,1],[0,0]]
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let w = if (m[0][0].norm() + m[1][0].norm()) > 1e-12 * scale {
            [o, z]
        } else {
            [z, o]
        };
        let v = [
            m[0][0] * w[0] + m[0][1] * w[1],
            m[1][0] * w[0] + m[1][1] * w[1],
        ];
        let k = (v[0] * w[1] - w[0] * v[1]).sqrt();
        let mm = Mat2::new(v[0] / k, w[0] / k, v[1] / k, w[1] / k);
        Ok((OneParamSubgroup::Parabolic(1.0), Isometry(mm)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_m(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn inner_examples() {
        let e = HermMatrix::new(0.5, 0.0, 0.0, 0.5);
        assert_eq!(minkowski_inner(&e, &e), 0.0);
        let x = HermMatrix::from_mat(&Mat2::real(0.0, 1.0, 1.0, 0.0));
        assert_eq!(minkowski_inner(&x, &x), 1.0);
        let t = HermMatrix::from_mat(&Mat2::identity());
        assert_eq!(minkowski_inner(&t, &t), -1.0);
        assert!((matrix_inner(&t.to_mat(), &t.to_mat()) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn action_examples() {
        let x = HermMatrix::from_mat(&Mat2::e11());
        assert_eq!(act(&Isometry::identity(), &x), x);
        let d = rotation_d1(C64::from_polar(1.0, 0.7)).unwrap();
        let y = act(&d, &x);
        assert!((y.x0 - 0.5).abs() < 1e-15 && (y.x3 - 0.5).abs() < 1e-15);
        let mu = c(0.3, -1.2);
        let p = act(
            &rotation_p(mu),
            &HermMatrix::from_mat(&Mat2::real(0.0, 0.0, 0.0, 1.0)),
        );
        let expect = Mat2::new(c(mu.norm_sqr(), 0.0), mu, mu.conj(), c(1.0, 0.0));
        assert!(close_m(&p.to_mat(), &expect, 1e-15));
    }

    #[test]
    fn rotations() {
        assert_eq!(*rotation_d1(c(1.0, 0.0)).unwrap().mat(), Mat2::identity());
        assert_eq!(
            *rotation_d2(c(1.0, 0.0)).unwrap().mat(),
            Mat2::real(0.0, 1.0, -1.0, 0.0)
        );
        assert_eq!(
            *rotation_p(I).mat(),
            Mat2::new(c(1.0, 0.0), I, c(0.0, 0.0), c(1.0, 0.0))
        );
        assert_eq!(rotation_d1(c(0.0, 0.0)), Err(Error::ZeroParameter));
        assert_eq!(rotation_d2(c(0.0, 0.0)), Err(Error::ZeroParameter));
    }

    #[test]
    fn regions() {
        assert_eq!(
            classify_point(&HermMatrix::from_mat(&Mat2::e11()), 1e-9),
            Region::LightConePlus
        );
        assert_eq!(
            classify_point(
                &HermMatrix::from_mat(&Mat2::real(-2.0, 0.0, 0.0, 0.0)),
                1e-9
            ),
            Region::LightConeMinus
        );
        assert_eq!(
            classify_point(&HermMatrix::new(1.0, 0.0, 0.0, 1.0), 1e-9),
            Region::LightConePlus
        );
        assert_eq!(
            classify_point(&HermMatrix::new(1.0, 3.0, 0.0, 1.0), 1e-9),
            Region::Isotropic3
        );
        assert_eq!(
            classify_point(&HermMatrix::new(1.0, 0.0, 0.0, 0.0), 1e-9),
            Region::Other
        );
    }

    #[test]
    fn normal_forms() {
        let check = |a: Mat2| {
            let (n, m) = screw_normal_form(&a).unwrap();
            assert!((m.mat().det() - 1.0).norm() < 1e-10);
            for k in 0..=20 {
                let s = -2.0 + 0.2 * k as f64;
                let lhs = Mat2::exp_tracefree(&a, c(s, 0.0));
                let rhs = *m.mat() * n.eval(s) * m.mat().inv();
                assert!(close_m(&lhs, &rhs, 1e-8), "{a:?} {n:?} at {s}");
            }
            n
        };
        let n = check(Mat2::real(1.0, 0.0, 0.0, -1.0));
        assert_eq!(n, OneParamSubgroup::Diagonal(c(1.0, 0.0)));
        assert_eq!(
            check(Mat2::real(0.0, 1.0, 0.0, 0.0)),
            OneParamSubgroup::Parabolic(1.0)
        );
        let n = check(Mat2::diag(I, -I));
        assert_eq!(n.kind(), SubgroupType::Elliptic);
        check(Mat2::new(
            c(0.3, 0.1),
            c(1.0, -2.0),
            c(0.5, 0.5),
            c(-0.3, -0.1),
        ));
        check(Mat2::new(
            c(1.0, 1.0),
            c(1.0, 0.0),
            c(-2.0, 0.0),
            c(-1.0, -1.0),
        ));
        check(Mat2::new(
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(1.0, 0.0),
            c(-1.0, 0.0),
        )); // nilpotent
        assert_eq!(
            screw_normal_form(&Mat2::zero()).map(|_| ()),
            Err(Error::ZeroGenerator)
        );
        assert_eq!(
            OneParamSubgroup::Diagonal(c(1.0, 2.0)).kind(),
            SubgroupType::Screw
        );
    }
}
