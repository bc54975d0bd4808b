//! Floating scalar abstraction: `f64` and double-double (`TwoFloat`).

use core::fmt::{Debug, Display};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// Complex number with floating parts.
pub type ApproxComplex<R = f64> = Complex<R>;

/// A floating scalar usable by the numeric routines.
pub trait Real: Float + Debug + Display + Default + Send + Sync + 'static {
    /// Human readable precision name.
    const NAME: &'static str;
    /// Unit roundoff.
    const UNIT_ROUNDOFF: f64;

    /// Lift an `f64`.
    fn of(x: f64) -> Self;
    /// Round to the nearest `f64`.
    fn as_f64(self) -> f64;
    /// Nearest representable value of a rational.
    fn from_rational(q: &BigRational) -> Self;
    /// The constant pi.
    fn pi() -> Self;
    /// `(cos(pi x), sin(pi x))`, exact at multiples of 1/2.
    fn cos_sin_pi(self) -> (Self, Self);
}

fn reduce_cos_sin_pi<R: Real>(x: R, kernel: impl Fn(R) -> (R, R)) -> (R, R) {
    let two = R::of(2.0);
    let half = R::of(0.5);
    let quarter = R::of(0.25);
    let y = x - two * (x / two).round();
    let neg = y < R::zero();
    let mut a = y.abs();
    let mut cos_sign = R::one();
    if a > half {
        a = R::one() - a;
        cos_sign = -R::one();
    }
    let (c, s) = if a == R::zero() {
        (R::one(), R::zero())
    } else if a == half {
        (R::zero(), R::one())
    } else if a > quarter {
        let (c, s) = kernel(half - a);
        (s, c)
    } else {
        kernel(a)
    };
    let c = if c == R::zero() { c } else { cos_sign * c };
    let s = if neg { -s } else { s };
    (c, s)
}

impl Real for f64 {
    const NAME: &'static str = "f64";
    const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

    fn of(x: f64) -> Self {
        x
    }
    fn as_f64(self) -> f64 {
        self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn pi() -> Self {
        core::f64::consts::PI
    }
    fn cos_sin_pi(self) -> (Self, Self) {
        reduce_cos_sin_pi(self, |b| {
            let th = core::f64::consts::PI * b;
            (libm::cos(th), libm::sin(th))
        })
    }
}

const PI_HI: f64 = core::f64::consts::PI;
const PI_LO: f64 = 1.2246467991473532e-16;

fn dd_kernel(b: TwoFloat) -> (TwoFloat, TwoFloat) {
    let th = b * dd_pi();
    let th2 = th * th;
    let tiny = 1e-36;
    let mut s = th;
    let mut term = th;
    let mut k = 1.0;
    loop {
        term = -term * th2 / ((k + 1.0) * (k + 2.0));
        s += term;
        k += 2.0;
        if term.hi().abs() < tiny || k > 60.0 {
            break;
        }
    }
    let mut c = TwoFloat::from(1.0);
    let mut term = TwoFloat::from(1.0);
    let mut k = 0.0;
    loop {
        term = -term * th2 / ((k + 1.0) * (k + 2.0));
        c += term;
        k += 2.0;
        if term.hi().abs() < tiny || k > 60.0 {
            break;
        }
    }
    (c, s)
}

fn dd_pi() -> TwoFloat {
    TwoFloat::from(PI_HI) + TwoFloat::from(PI_LO)
}

impl Real for TwoFloat {
    const NAME: &'static str = "double-double";
    const UNIT_ROUNDOFF: f64 = 1.232595164407831e-32;

    fn of(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn as_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn from_rational(q: &BigRational) -> Self {
        let hi = q.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return TwoFloat::from(hi);
        }
        let rest = match BigRational::from_float(hi) {
            Some(h) => q - h,
            None => BigRational::zero(),
        };
        let lo = rest.to_f64().unwrap_or(0.0);
        TwoFloat::from(hi) + TwoFloat::from(lo)
    }
    fn pi() -> Self {
        dd_pi()
    }
    fn cos_sin_pi(self) -> (Self, Self) {
        reduce_cos_sin_pi(self, dd_kernel)
    }
}

/// `e^{i pi x}`.
pub fn exp_i_pi<R: Real>(x: R) -> Complex<R> {
    let (c, s) = x.cos_sin_pi();
    Complex::new(c, s)
}

/// Modulus without intermediate overflow.
pub fn cabs<R: Real>(z: Complex<R>) -> R {
    z.re.hypot(z.im)
}

/// Convert between floating precisions.
pub fn cconv<R: Real, S: Real>(z: Complex<R>) -> Complex<S> {
    Complex::new(S::of(z.re.as_f64()), S::of(z.im.as_f64()))
}

/// Lift an `f64` complex into `R`.
pub fn clift<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::of(z.re), R::of(z.im))
}

/// Principal square root, computed with real square roots only.
pub fn csqrt<R: Real>(z: Complex<R>) -> Complex<R> {
    let zero = R::zero();
    if z.re == zero && z.im == zero {
        return Complex::new(zero, zero);
    }
    let two = R::of(2.0);
    let r = cabs(z);
    if z.re >= zero {
        let u = ((r + z.re) / two).sqrt();
        Complex::new(u, z.im / (two * u))
    } else {
        let mut v = ((r - z.re) / two).sqrt();
        if z.im < zero {
            v = -v;
        }
        Complex::new(z.im / (two * v), v)
    }
}

/// Principal cube root (argument in `(-pi, pi]` divided by three).
pub fn ccbrt<R: Real>(z: Complex<R>) -> Complex<R> {
    let zero = R::zero();
    if z.re == zero && z.im == zero {
        return Complex::new(zero, zero);
    }
    let zf = Complex::new(z.re.as_f64(), z.im.as_f64());
    let mut r = libm::cbrt(libm::hypot(zf.re, zf.im));
    if r == 0.0 {
        r = f64::MIN_POSITIVE;
    }
    let th = libm::atan2(zf.im, zf.re) / 3.0;
    let mut w = Complex::new(R::of(r * libm::cos(th)), R::of(r * libm::sin(th)));
    let three = R::of(3.0);
    for _ in 0..3 {
        let w2 = w * w;
        w = w - (w2 * w - z) / (w2 * three);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_at_half_integers() {
        for k in -8i32..8 {
            let (c, s) = (k as f64 * 0.5).cos_sin_pi();
            let (ec, es) = match k.rem_euclid(4) {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, -1.0),
            };
            assert_eq!((c, s), (ec, es), "k = {k}");
        }
    }

    #[test]
    fn f64_matches_libm() {
        for i in 0..200 {
            let x = -3.0 + i as f64 * 0.0311;
            let (c, s) = x.cos_sin_pi();
            assert!((c - libm::cos(core::f64::consts::PI * x)).abs() < 1e-14);
            assert!((s - libm::sin(core::f64::consts::PI * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn double_double_identities() {
        for i in 1..50 {
            let x = TwoFloat::from(i as f64 / 37.0);
            let (c, s) = x.cos_sin_pi();
            let one = c * c + s * s - TwoFloat::from(1.0);
            assert!(one.abs().hi() < 1e-30);
            let (c2, s2) = (x * 2.0).cos_sin_pi();
            assert!((c2 - (c * c - s * s)).abs().hi() < 1e-30);
            assert!((s2 - c * s * 2.0).abs().hi() < 1e-30);
        }
    }

    #[test]
    fn double_double_sixth() {
        let x = TwoFloat::from(1.0) / 6.0;
        let (c, s) = x.cos_sin_pi();
        let half = TwoFloat::from(0.5);
        let root3_half = TwoFloat::from(3.0).sqrt() / 2.0;
        assert!((s - half).abs().hi() < 1e-31);
        assert!((c - root3_half).abs().hi() < 1e-31);
    }

    #[test]
    fn rational_lift() {
        let q = BigRational::new(1.into(), 3.into());
        let x = TwoFloat::from_rational(&q);
        let err = x * 3.0 - TwoFloat::from(1.0);
        assert!(err.abs().hi() < 1e-31);
    }

    #[test]
    fn complex_roots() {
        let z = Complex::new(-4.0, 0.0);
        assert_eq!(csqrt(z), Complex::new(0.0, 2.0));
        let z = Complex::new(3.0, -4.0);
        let w = csqrt(z);
        assert!((w * w - z).norm() < 1e-14 && w.re > 0.0);
        let z = Complex::new(-8.0, 1e-300);
        let w = ccbrt(z);
        assert!((w - Complex::new(1.0, 3f64.sqrt())).norm() < 1e-12);
        let z = Complex::new(TwoFloat::from(2.0), TwoFloat::from(1.0));
        let w = ccbrt(z);
        let d = w * w * w - z;
        assert!(cabs(d).hi() < 1e-30);
    }
}
