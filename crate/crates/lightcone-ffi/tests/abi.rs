use lightcone_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn new(kind: LcKind, p0: f64, p1: f64) -> *mut LcSurface {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { lc_surface_new(kind as u32, p0, p1, &mut s) },
        LcStatus::Ok
    );
    s
}

fn last_error() -> String {
    let n = unsafe { lc_last_error(ptr::null_mut(), 0) };
    let mut b = vec![0 as c_char; n + 1];
    unsafe { lc_last_error(b.as_mut_ptr(), b.len()) };
    unsafe { CStr::from_ptr(b.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn helicoid_is_zmc_and_on_the_cone() {
    let s = new(LcKind::Helicoid, 1.0, 1.0);
    let mut x = [0.0; 4];
    let (mut h, mut k) = (1.0, 0.0);
    for &(u, v) in &[(0.3, 0.1), (0.7, -0.4), (1.1, 0.9)] {
        assert_eq!(
            unsafe { lc_surface_point(s, u, v, x.as_mut_ptr()) },
            LcStatus::Ok
        );
        let q = x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
        assert!(q.abs() < 1e-10 * (1.0 + x[0] * x[0]));
        assert!(x[0] > 0.0);
        assert_eq!(
            unsafe { lc_surface_curvature(s, u, v, &mut h, &mut k) },
            LcStatus::Ok
        );
        assert!(h.abs() < 1e-9, "H = {h}");
    }
    unsafe { lc_surface_free(s) };
}

#[test]
fn horosphere_gauss_map_is_constant() {
    let s = new(LcKind::Horosphere, 0.0, 0.0);
    let mut g = [0.0; 4];
    assert_eq!(
        unsafe { lc_surface_gauss_map(s, 0.4, -0.2, g.as_mut_ptr()) },
        LcStatus::Ok
    );
    // [[-2,0],[0,0]] has x0 = -1, x3 = -1
    let want = [-1.0, 0.0, 0.0, -1.0];
    for i in 0..4 {
        assert!((g[i] - want[i]).abs() < 1e-10, "{g:?}");
    }
    unsafe { lc_surface_free(s) };
}

#[test]
fn plane_and_domain() {
    let m = [1.0, 0.0, 0.0, 1.0];
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { lc_surface_new_plane(m.as_ptr(), -1.0, &mut s) },
        LcStatus::Ok
    );
    let mut d = [0.0; 4];
    assert_eq!(
        unsafe { lc_surface_domain(s, d.as_mut_ptr()) },
        LcStatus::Ok
    );
    assert!(d[0] < d[1] && d[2] < d[3]);
    unsafe { lc_surface_free(s) };
    // future-pointing M with q > 0 misses the cone
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { lc_surface_new_plane(m.as_ptr(), 1.0, &mut s) },
        LcStatus::Degenerate
    );
    assert!(s.is_null());
}

#[test]
fn delta_and_census() {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(
        unsafe { lc_delta_of_a(1.0, &mut re, &mut im) },
        LcStatus::Ok
    );
    // δ(1) = -(1-i)/(2-i)^2 = -(1-i)/(3-4i)
    let want = -num(1.0, -1.0) / num(3.0, -4.0);
    assert!((re - want.0).abs() < 1e-14 && (im - want.1).abs() < 1e-14);
    let mut c = LcCensus::default();
    assert_eq!(unsafe { lc_census(0.25, &mut c) }, LcStatus::Ok);
    assert_eq!(
        c,
        LcCensus {
            elliptic: 1,
            parabolic: 1,
            hyperbolic: 0,
            helicoid: 2
        }
    );
    assert_eq!(unsafe { lc_census(-1.0, &mut c) }, LcStatus::BadParameter);
}

#[derive(Clone, Copy)]
struct Cx(f64, f64);
fn num(a: f64, b: f64) -> Cx {
    Cx(a, b)
}
impl std::ops::Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx(-self.0, -self.1)
    }
}
impl std::ops::Div for Cx {
    type Output = Cx;
    fn div(self, o: Cx) -> Cx {
        let d = o.0 * o.0 + o.1 * o.1;
        Cx(
            (self.0 * o.0 + self.1 * o.1) / d,
            (self.1 * o.0 - self.0 * o.1) / d,
        )
    }
}

#[test]
fn classify_returns_json() {
    let spec = CString::new("diagonal a=1 b=2\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { lc_classify_spec(spec.as_ptr(), 0.0, &mut out) },
        LcStatus::Ok
    );
    let js = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { lc_string_free(out) };
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["branch"], "helicoid");
}

#[test]
fn errors_carry_codes_and_messages() {
    let spec = CString::new("case12 A=sin(s^2) B1=0 B2=0").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { lc_classify_spec(spec.as_ptr(), 0.0, &mut out) },
        LcStatus::ParseError
    );
    assert!(out.is_null());
    assert!(last_error().contains("column 14"), "{}", last_error());

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { lc_surface_new(42, 0.0, 0.0, &mut s) },
        LcStatus::BadParameter
    );
    assert!(last_error().contains("42"));
    assert_eq!(
        unsafe { lc_surface_new(0, 1.0, 0.0, ptr::null_mut()) },
        LcStatus::NullPointer
    );
    let mut x = [0.0; 4];
    assert_eq!(
        unsafe { lc_surface_point(ptr::null(), 0.0, 0.0, x.as_mut_ptr()) },
        LcStatus::NullPointer
    );
    unsafe { lc_surface_free(ptr::null_mut()) };
    unsafe { lc_string_free(ptr::null_mut()) };
}

#[test]
fn degenerate_point_reports_status() {
    let s = new(LcKind::Helicoid, 1.0, 1.0);
    let (mut h, mut k) = (0.0, 0.0);
    assert_eq!(
        unsafe { lc_surface_curvature(s, 0.0, 0.0, &mut h, &mut k) },
        LcStatus::Degenerate
    );
    unsafe { lc_surface_free(s) };
}
