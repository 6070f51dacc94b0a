//! Truncated Taylor jets.
//!
//! `Jet2` carries a map of two real variables to second order, `Jet3` a map
//! of one real variable to third order and `CJet` a holomorphic germ to
//! second order. All three are generic over the carrier (`f64`, `C64`,
//! [`Mat2`](crate::cone::Mat2), [`HermMatrix`](crate::cone::HermMatrix)).

use num_complex::Complex64 as C64;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Additive carrier of jet slots.
pub trait Carrier:
    Copy + Debug + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + Send + Sync
{
    fn zero() -> Self;
}

/// Multiplication by a scalar of type `K`.
pub trait Scale<K>: Carrier {
    fn scale(self, k: K) -> Self;
}

/// Carriers with an associative (possibly non-commutative) product.
pub trait Ring: Carrier + Mul<Output = Self> {
    fn one() -> Self;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
    Recip,
    Powf(f64),
}

/// Scalars with elementary functions. `taylor` returns f, f', f'', f''' at
/// the point.
pub trait Elementary: Ring + Scale<Self> + Scale<f64> + PartialEq {
    fn taylor(self, f: Func) -> [Self; 4];
    fn from_f64(x: f64) -> Self;
}

impl Carrier for f64 {
    fn zero() -> Self {
        0.0
    }
}
impl Scale<f64> for f64 {
    fn scale(self, k: f64) -> Self {
        self * k
    }
}
impl Ring for f64 {
    fn one() -> Self {
        1.0
    }
}
impl Carrier for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
}
impl Scale<f64> for C64 {
    fn scale(self, k: f64) -> Self {
        self * k
    }
}
impl Scale<C64> for C64 {
    fn scale(self, k: C64) -> Self {
        self * k
    }
}
impl Ring for C64 {
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
}

macro_rules! taylor_body {
    ($x:expr, $f:expr, $one:expr) => {{
        let x = $x;
        let one = $one;
        match $f {
            Func::Exp => {
                let e = x.exp();
                [e, e, e, e]
            }
            Func::Ln => {
                let r = one / x;
                [x.ln(), r, -r * r, r * r * r * 2.0]
            }
            Func::Sin => {
                let (s, c) = (x.sin(), x.cos());
                [s, c, -s, -c]
            }
            Func::Cos => {
                let (s, c) = (x.sin(), x.cos());
                [c, -s, -c, s]
            }
            Func::Sinh => {
                let (s, c) = (x.sinh(), x.cosh());
                [s, c, s, c]
            }
            Func::Cosh => {
                let (s, c) = (x.sinh(), x.cosh());
                [c, s, c, s]
            }
            Func::Sqrt => {
                let r = x.sqrt();
                let r1 = one / r;
                [r, r1 * 0.5, -(r1 / x) * 0.25, (r1 / (x * x)) * 0.375]
            }
            Func::Recip => {
                let r = one / x;
                [r, -r * r, r * r * r * 2.0, -(r * r * r * r) * 6.0]
            }
            Func::Powf(p) => {
                if p == 0.0 {
                    [one, one * 0.0, one * 0.0, one * 0.0]
                } else {
                    let xp = x.powf(p);
                    let r = one / x;
                    [
                        xp,
                        xp * r * p,
                        xp * r * r * (p * (p - 1.0)),
                        xp * r * r * r * (p * (p - 1.0) * (p - 2.0)),
                    ]
                }
            }
        }
    }};
}

impl Elementary for f64 {
    fn taylor(self, f: Func) -> [Self; 4] {
        taylor_body!(self, f, 1.0f64)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Elementary for C64 {
    fn taylor(self, f: Func) -> [Self; 4] {
        taylor_body!(self, f, C64::new(1.0, 0.0))
    }
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }
}

// ---------------------------------------------------------------------------

/// Second-order jet in two real variables (u, v).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T> {
    pub value: T,
    pub d_u: T,
    pub d_v: T,
    pub d_uu: T,
    pub d_uv: T,
    pub d_vv: T,
}

/// Third-order jet in one real variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
    pub d3: T,
}

/// Holomorphic germ to second order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CJet<T> {
    pub value: T,
    pub d_z: T,
    pub d_zz: T,
}

/// Coordinate jets for u and v at (u, v).
pub fn seed_vars(u: f64, v: f64) -> (Jet2<f64>, Jet2<f64>) {
    (Jet2::var_u(u), Jet2::var_v(v))
}

macro_rules! slotwise {
    ($ty:ident { $($f:ident),* }) => {
        impl<T: Carrier> Add for $ty<T> {
            type Output = Self;
            fn add(self, o: Self) -> Self { $ty { $($f: self.$f + o.$f),* } }
        }
        impl<T: Carrier> Sub for $ty<T> {
            type Output = Self;
            fn sub(self, o: Self) -> Self { $ty { $($f: self.$f - o.$f),* } }
        }
        impl<T: Carrier> Neg for $ty<T> {
            type Output = Self;
            fn neg(self) -> Self { $ty { $($f: -self.$f),* } }
        }
        impl<T: Carrier> Carrier for $ty<T> {
            fn zero() -> Self { $ty { $($f: T::zero()),* } }
        }
        impl<T: Scale<f64>> Scale<f64> for $ty<T> {
            fn scale(self, k: f64) -> Self { $ty { $($f: self.$f.scale(k)),* } }
        }
        impl<T: Scale<C64>> Scale<C64> for $ty<T> {
            fn scale(self, k: C64) -> Self { $ty { $($f: self.$f.scale(k)),* } }
        }
        impl<T: Carrier> $ty<T> {
            pub fn constant(c: T) -> Self {
                let mut j = Self::zero();
                j.value = c;
                j
            }
            /// Applies `f` to every slot. Only valid for linear `f`.
            pub fn map<S: Carrier>(self, f: impl Fn(T) -> S) -> $ty<S> {
                $ty { $($f: f(self.$f)),* }
            }
            pub fn slots(&self) -> Vec<T> { vec![$(self.$f),*] }
        }
    };
}

slotwise!(Jet2 {
    value,
    d_u,
    d_v,
    d_uu,
    d_uv,
    d_vv
});
slotwise!(Jet3 { value, d1, d2, d3 });
slotwise!(CJet { value, d_z, d_zz });

impl<T: Ring> Mul for Jet2<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Jet2 {
            value: a.value * b.value,
            d_u: a.d_u * b.value + a.value * b.d_u,
            d_v: a.d_v * b.value + a.value * b.d_v,
            d_uu: a.d_uu * b.value + (a.d_u * b.d_u) + (a.d_u * b.d_u) + a.value * b.d_uu,
            d_uv: a.d_uv * b.value + a.d_u * b.d_v + a.d_v * b.d_u + a.value * b.d_uv,
            d_vv: a.d_vv * b.value + (a.d_v * b.d_v) + (a.d_v * b.d_v) + a.value * b.d_vv,
        }
    }
}

impl<T: Ring> Mul for Jet3<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        let two = |x: T| x + x;
        let three = |x: T| x + x + x;
        Jet3 {
            value: a.value * b.value,
            d1: a.d1 * b.value + a.value * b.d1,
            d2: a.d2 * b.value + two(a.d1 * b.d1) + a.value * b.d2,
            d3: a.d3 * b.value + three(a.d2 * b.d1) + three(a.d1 * b.d2) + a.value * b.d3,
        }
    }
}

impl<T: Ring> Mul for CJet<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        CJet {
            value: a.value * b.value,
            d_z: a.d_z * b.value + a.value * b.d_z,
            d_zz: a.d_zz * b.value + (a.d_z * b.d_z) + (a.d_z * b.d_z) + a.value * b.d_zz,
        }
    }
}

impl<T: Ring> Ring for Jet2<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}
impl<T: Ring> Ring for Jet3<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}
impl<T: Ring> Ring for CJet<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl Jet2<f64> {
    pub fn var_u(u: f64) -> Self {
        Jet2 {
            value: u,
            d_u: 1.0,
            ..Self::zero()
        }
    }
    pub fn var_v(v: f64) -> Self {
        Jet2 {
            value: v,
            d_v: 1.0,
            ..Self::zero()
        }
    }
    pub fn to_complex(self) -> Jet2<C64> {
        self.map(|x| C64::new(x, 0.0))
    }
}

impl Jet3<f64> {
    pub fn var(s: f64) -> Self {
        Jet3 {
            value: s,
            d1: 1.0,
            d2: 0.0,
            d3: 0.0,
        }
    }
    pub fn to_complex(self) -> Jet3<C64> {
        self.map(|x| C64::new(x, 0.0))
    }
}

impl CJet<C64> {
    pub fn var(z: C64) -> Self {
        CJet {
            value: z,
            d_z: C64::new(1.0, 0.0),
            d_zz: C64::new(0.0, 0.0),
        }
    }
}

impl Jet2<C64> {
    pub fn conj(self) -> Self {
        self.map(|x| x.conj())
    }
    pub fn re(self) -> Jet2<f64> {
        self.map(|x| x.re)
    }
    pub fn im(self) -> Jet2<f64> {
        self.map(|x| x.im)
    }
}

impl Jet3<C64> {
    pub fn conj(self) -> Self {
        self.map(|x| x.conj())
    }
    pub fn re(self) -> Jet3<f64> {
        self.map(|x| x.re)
    }
    pub fn im(self) -> Jet3<f64> {
        self.map(|x| x.im)
    }
}

impl<T: Carrier> Jet2<T> {
    /// Pushes univariate Taylor data `f` (f, f', f'') of an outer function
    /// through the inner jet.
    pub fn compose<S>(inner: &Jet2<S>, f: [T; 3]) -> Self
    where
        S: Elementary,
        T: Scale<S>,
    {
        let (iu, iv) = (inner.d_u, inner.d_v);
        Jet2 {
            value: f[0],
            d_u: f[1].scale(iu),
            d_v: f[1].scale(iv),
            d_uu: f[2].scale(iu * iu) + f[1].scale(inner.d_uu),
            d_uv: f[2].scale(iu * iv) + f[1].scale(inner.d_uv),
            d_vv: f[2].scale(iv * iv) + f[1].scale(inner.d_vv),
        }
    }

    /// Product with a scalar-valued jet (scalars commute with the carrier).
    pub fn scale_jet<S>(self, s: &Jet2<S>) -> Self
    where
        S: Carrier + Copy,
        T: Scale<S>,
    {
        let a = self;
        Jet2 {
            value: a.value.scale(s.value),
            d_u: a.d_u.scale(s.value) + a.value.scale(s.d_u),
            d_v: a.d_v.scale(s.value) + a.value.scale(s.d_v),
            d_uu: a.d_uu.scale(s.value)
                + a.d_u.scale(s.d_u)
                + a.d_u.scale(s.d_u)
                + a.value.scale(s.d_uu),
            d_uv: a.d_uv.scale(s.value)
                + a.d_u.scale(s.d_v)
                + a.d_v.scale(s.d_u)
                + a.value.scale(s.d_uv),
            d_vv: a.d_vv.scale(s.value)
                + a.d_v.scale(s.d_v)
                + a.d_v.scale(s.d_v)
                + a.value.scale(s.d_vv),
        }
    }
}

impl<T: Carrier> Jet3<T> {
    pub fn compose<S>(inner: &Jet3<S>, f: [T; 4]) -> Self
    where
        S: Elementary,
        T: Scale<S>,
    {
        let (i1, i2, i3) = (inner.d1, inner.d2, inner.d3);
        Jet3 {
            value: f[0],
            d1: f[1].scale(i1),
            d2: f[2].scale(i1 * i1) + f[1].scale(i2),
            d3: f[3].scale(i1 * i1 * i1)
                + f[2].scale(i1 * i2).scale(S::from_f64(3.0))
                + f[1].scale(i3),
        }
    }

    pub fn scale_jet<S>(self, s: &Jet3<S>) -> Self
    where
        S: Carrier + Copy,
        T: Scale<S>,
    {
        let a = self;
        let three = |x: T| x + x + x;
        Jet3 {
            value: a.value.scale(s.value),
            d1: a.d1.scale(s.value) + a.value.scale(s.d1),
            d2: a.d2.scale(s.value) + a.d1.scale(s.d1) + a.d1.scale(s.d1) + a.value.scale(s.d2),
            d3: a.d3.scale(s.value)
                + three(a.d2.scale(s.d1))
                + three(a.d1.scale(s.d2))
                + a.value.scale(s.d3),
        }
    }

    /// Embeds the jet as a function of u alone.
    pub fn along_u(self) -> Jet2<T> {
        Jet2 {
            value: self.value,
            d_u: self.d1,
            d_uu: self.d2,
            ..Jet2::constant(T::zero())
        }
    }
}

impl<T: Carrier> CJet<T> {
    pub fn compose(inner: &CJet<C64>, f: [T; 3]) -> Self
    where
        T: Scale<C64>,
    {
        let i1 = inner.d_z;
        CJet {
            value: f[0],
            d_z: f[1].scale(i1),
            d_zz: f[2].scale(i1 * i1) + f[1].scale(inner.d_zz),
        }
    }

    pub fn scale_jet(self, s: &CJet<C64>) -> Self
    where
        T: Scale<C64>,
    {
        let a = self;
        CJet {
            value: a.value.scale(s.value),
            d_z: a.d_z.scale(s.value) + a.value.scale(s.d_z),
            d_zz: a.d_zz.scale(s.value)
                + a.d_z.scale(s.d_z)
                + a.d_z.scale(s.d_z)
                + a.value.scale(s.d_zz),
        }
    }

    /// Evaluates the germ along a real bivariate jet z(u, v); for the seeded
    /// z = u + iv this gives ∂_u = f', ∂_v = i f'.
    pub fn on_plane(self, z: &Jet2<C64>) -> Jet2<T>
    where
        T: Scale<C64>,
    {
        Jet2::compose(z, [self.value, self.d_z, self.d_zz])
    }

    /// Seeded version of [`CJet::on_plane`].
    pub fn to_jet2(self) -> Jet2<T>
    where
        T: Scale<C64>,
    {
        let i = C64::new(0.0, 1.0);
        Jet2 {
            value: self.value,
            d_u: self.d_z,
            d_v: self.d_z.scale(i),
            d_uu: self.d_zz,
            d_uv: self.d_zz.scale(i),
            d_vv: -self.d_zz,
        }
    }
}

macro_rules! elementary_methods {
    ($ty:ident, $n:literal) => {
        impl<T: Elementary> $ty<T> {
            fn apply(self, f: Func) -> Self {
                let t = self.value.taylor(f);
                let mut a = [T::zero(); $n];
                a.copy_from_slice(&t[..$n]);
                Self::compose(&self, a)
            }
            pub fn exp(self) -> Self {
                self.apply(Func::Exp)
            }
            pub fn ln(self) -> Self {
                self.apply(Func::Ln)
            }
            pub fn sin(self) -> Self {
                self.apply(Func::Sin)
            }
            pub fn cos(self) -> Self {
                self.apply(Func::Cos)
            }
            pub fn sinh(self) -> Self {
                self.apply(Func::Sinh)
            }
            pub fn cosh(self) -> Self {
                self.apply(Func::Cosh)
            }
            pub fn sqrt(self) -> Self {
                self.apply(Func::Sqrt)
            }
            pub fn recip(self) -> Self {
                self.apply(Func::Recip)
            }
            pub fn powf(self, p: f64) -> Self {
                self.apply(Func::Powf(p))
            }
            pub fn powi(self, n: i32) -> Self {
                if n == 0 {
                    return Self::one();
                }
                let mut acc = self;
                for _ in 1..n.unsigned_abs() {
                    acc = acc * self;
                }
                if n < 0 {
                    acc.recip()
                } else {
                    acc
                }
            }
            pub fn tanh(self) -> Self {
                self.sinh() * self.cosh().recip()
            }
            pub fn sech(self) -> Self {
                self.cosh().recip()
            }
            pub fn add_const(mut self, c: T) -> Self {
                self.value = self.value + c;
                self
            }
        }
        impl<T: Elementary> std::ops::Div for $ty<T> {
            type Output = Self;
            fn div(self, o: Self) -> Self {
                self * o.recip()
            }
        }
    };
}

elementary_methods!(Jet2, 3);
elementary_methods!(Jet3, 4);

impl CJet<C64> {
    fn apply(self, f: Func) -> Self {
        let t = self.value.taylor(f);
        Self::compose(&self, [t[0], t[1], t[2]])
    }
    pub fn exp(self) -> Self {
        self.apply(Func::Exp)
    }
    pub fn ln(self) -> Self {
        self.apply(Func::Ln)
    }
    pub fn sin(self) -> Self {
        self.apply(Func::Sin)
    }
    pub fn cos(self) -> Self {
        self.apply(Func::Cos)
    }
    pub fn sqrt(self) -> Self {
        self.apply(Func::Sqrt)
    }
    pub fn recip(self) -> Self {
        self.apply(Func::Recip)
    }
    pub fn powi(self, n: i32) -> Self {
        self.apply(Func::Powf(n as f64))
    }
}

impl std::ops::Div for CJet<C64> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<T: Ring> Jet2<T> {
    pub fn sq(self) -> Self {
        self * self
    }
}
