//! Jet families behind one interface, so closed forms are written once and
//! evaluated either as `Jet2` (surfaces) or `Jet3` (curves).

use super::jet::{Carrier, Jet2, Jet3, Ring, Scale};
use crate::cone::Mat2;
use num_complex::Complex64 as C64;

pub trait RealJet: Ring + Scale<f64> {
    type Cx: CxJet<Re = Self>;
    fn cst(x: f64) -> Self;
    fn val(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn sqrt(self) -> Self;
    fn recip(self) -> Self;
    fn cx(self) -> Self::Cx;
}

pub trait CxJet: Ring + Scale<f64> + Scale<C64> {
    type Re: RealJet<Cx = Self>;
    type Mat: MatJet<Cx = Self>;
    fn cst(z: C64) -> Self;
    fn val(&self) -> C64;
    fn exp(self) -> Self;
    fn recip(self) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> Self::Re;
    fn im(self) -> Self::Re;
    /// `re + i·im`
    fn from_parts(re: Self::Re, im: Self::Re) -> Self;
}

pub trait MatJet: Ring + Scale<f64> + Scale<C64> {
    type Cx: CxJet<Mat = Self>;
    fn cst(m: Mat2) -> Self;
    fn val(&self) -> Mat2;
    fn from_entries(a: Self::Cx, b: Self::Cx, c: Self::Cx, d: Self::Cx) -> Self;
    fn entry(&self, i: usize, j: usize) -> Self::Cx;
    fn adjoint(self) -> Self;
    fn scale_by(self, s: &Self::Cx) -> Self;
}

macro_rules! family {
    ($J:ident) => {
        impl RealJet for $J<f64> {
            type Cx = $J<C64>;
            fn cst(x: f64) -> Self {
                $J::constant(x)
            }
            fn val(&self) -> f64 {
                self.value
            }
            fn exp(self) -> Self {
                $J::exp(self)
            }
            fn ln(self) -> Self {
                $J::ln(self)
            }
            fn sin(self) -> Self {
                $J::sin(self)
            }
            fn cos(self) -> Self {
                $J::cos(self)
            }
            fn sinh(self) -> Self {
                $J::sinh(self)
            }
            fn cosh(self) -> Self {
                $J::cosh(self)
            }
            fn sqrt(self) -> Self {
                $J::sqrt(self)
            }
            fn recip(self) -> Self {
                $J::recip(self)
            }
            fn cx(self) -> $J<C64> {
                self.map(|x| C64::new(x, 0.0))
            }
        }
        impl CxJet for $J<C64> {
            type Re = $J<f64>;
            type Mat = $J<Mat2>;
            fn cst(z: C64) -> Self {
                $J::constant(z)
            }
            fn val(&self) -> C64 {
                self.value
            }
            fn exp(self) -> Self {
                $J::exp(self)
            }
            fn recip(self) -> Self {
                $J::recip(self)
            }
            fn conj(self) -> Self {
                self.map(|x| x.conj())
            }
            fn re(self) -> $J<f64> {
                self.map(|x| x.re)
            }
            fn im(self) -> $J<f64> {
                self.map(|x| x.im)
            }
            fn from_parts(re: $J<f64>, im: $J<f64>) -> Self {
                re.map(|x| C64::new(x, 0.0)) + im.map(|y| C64::new(0.0, y))
            }
        }
        impl MatJet for $J<Mat2> {
            type Cx = $J<C64>;
            fn cst(m: Mat2) -> Self {
                $J::constant(m)
            }
            fn val(&self) -> Mat2 {
                self.value
            }
            fn from_entries(a: $J<C64>, b: $J<C64>, c: $J<C64>, d: $J<C64>) -> Self {
                let (a, b, c, d) = (a.slots(), b.slots(), c.slots(), d.slots());
                let mats: Vec<Mat2> = (0..a.len())
                    .map(|k| Mat2::new(a[k], b[k], c[k], d[k]))
                    .collect();
                $J::from_slots(&mats)
            }
            fn entry(&self, i: usize, j: usize) -> $J<C64> {
                self.map(|m| m.0[i][j])
            }
            fn adjoint(self) -> Self {
                self.map(|m| m.adjoint())
            }
            fn scale_by(self, s: &$J<C64>) -> Self {
                self.scale_jet(s)
            }
        }
    };
}

impl<T: Carrier> Jet2<T> {
    pub fn from_slots(s: &[T]) -> Self {
        Jet2 {
            value: s[0],
            d_u: s[1],
            d_v: s[2],
            d_uu: s[3],
            d_uv: s[4],
            d_vv: s[5],
        }
    }
}
impl<T: Carrier> Jet3<T> {
    pub fn from_slots(s: &[T]) -> Self {
        Jet3 {
            value: s[0],
            d1: s[1],
            d2: s[2],
            d3: s[3],
        }
    }
}

family!(Jet2);
family!(Jet3);

/// Rank-one Hermitian product φφ* of a column (A, C).
pub fn outer<C: CxJet>(a: C, c: C) -> C::Mat {
    let (ab, cb) = (a.conj(), c.conj());
    C::Mat::from_entries(a * ab, a * cb, c * ab, c * cb)
}

/// diag(d, 1/d)
pub fn diag_pair<C: CxJet>(d: C) -> C::Mat {
    let z = C::cst(C64::new(0.0, 0.0));
    C::Mat::from_entries(d, z, z, d.recip())
}
