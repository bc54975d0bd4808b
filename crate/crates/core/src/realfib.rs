//! The derivative map on real configurations: min-max data, the `Ev_0`
//! coordinate and counterexamples to surjectivity.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{ExactComplex, Field, Poly, Rational};
use crate::real::Real;
use crate::roots::{exact_roots, roots};

/// Upper value `M(Q)`; infinite for linear `Q`.
#[derive(Clone, Debug, PartialEq)]
pub enum Upper<T> {
    /// A finite critical value.
    Finite(T),
    /// No upper bound.
    Infinite,
}

impl<T: PartialOrd> Upper<T> {
    /// `x < M`.
    pub fn exceeds(&self, x: &T) -> bool {
        match self {
            Upper::Finite(v) => x < v,
            Upper::Infinite => true,
        }
    }

    /// The finite value, if any.
    pub fn finite(&self) -> Option<&T> {
        match self {
            Upper::Finite(v) => Some(v),
            Upper::Infinite => None,
        }
    }
}

/// `m(Q)`, `M(Q)` and the critical data of `P = primitive(Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFiberData<T> {
    /// Largest of `P(b_{n-1}), P(b_{n-3}), ...`.
    pub m: T,
    /// Smallest of `P(b_{n-2}), P(b_{n-4}), ...`.
    pub upper: Upper<T>,
    /// Roots `b_1 < ... < b_{n-1}` of `Q`.
    pub critical_points: Vec<T>,
    /// `P(b_k)` in the same order.
    pub critical_values: Vec<T>,
}

impl<T: Field + PartialOrd> RealFiberData<T> {
    fn from_sorted(q: &Poly<T>, b: Vec<T>) -> Self {
        let prim = q.primitive();
        let v: Vec<T> = b.iter().map(|x| prim.eval(x)).collect();
        let d = v.len();
        let pick = |parity: usize| {
            (0..d)
                .rev()
                .filter(|k| (d - 1 - k) % 2 == parity)
                .map(|k| v[k].clone())
                .collect::<Vec<T>>()
        };
        let lows = pick(0);
        let highs = pick(1);
        let m = lows.into_iter().reduce(|a, b| if b > a { b } else { a }).unwrap_or_else(T::zero);
        let upper = match highs.into_iter().reduce(|a, b| if b < a { b } else { a }) {
            Some(x) => Upper::Finite(x),
            None => Upper::Infinite,
        };
        RealFiberData { m, upper, critical_points: b, critical_values: v }
    }

    /// `m(Q) < M(Q)`.
    pub fn in_qc_real(&self) -> bool {
        self.upper.exceeds(&self.m)
    }

    /// `M(Q) - m(Q)` when `M` is finite.
    pub fn gap(&self) -> Option<T> {
        self.upper.finite().map(|u| u.clone() - self.m.clone())
    }
}

fn newton<R: Real + Field>(p: &Poly<R>, dp: &Poly<R>, mut x: R) -> R {
    for _ in 0..60 {
        let d = dp.eval(&x);
        if d == R::zero() {
            break;
        }
        let step = p.eval(&x) / d;
        let next = x - step;
        if next == x || step.abs() <= R::of(4.0 * R::UNIT_ROUNDOFF) * x.abs() {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// Roots of a real polynomial in ascending order; errors unless they are real and simple.
pub fn real_roots<R: Real + Field>(q: &Poly<R>) -> Result<Vec<R>>
where
    Complex<R>: Field,
{
    let d = q.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let cq: Poly<Complex<R>> = q.map(|c| Complex::new(*c, R::zero()));
    let z = roots(&cq)?;
    let scale = z.iter().fold(R::one(), |a, w| a.max(R::one() + w.norm()));
    let tol = R::of(libm::sqrt(R::UNIT_ROUNDOFF)) * scale;
    if let Some(w) = z.iter().find(|w| w.im.abs() > tol) {
        return Err(Error::NotInSpace(format!(
            "non-real root {} + {}i",
            w.re.as_f64(),
            w.im.as_f64()
        )));
    }
    let dq = q.derive();
    let mut b: Vec<R> = z.iter().map(|w| newton(q, &dq, w.re)).collect();
    b.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    if b.windows(2).any(|w| w[1] - w[0] <= tol) {
        return Err(Error::RepeatedRoots);
    }
    Ok(b)
}

/// `m(Q)` and `M(Q)` for a real `q` with simple real roots.
pub fn minmax<R: Real + Field>(q: &Poly<R>) -> Result<RealFiberData<R>>
where
    Complex<R>: Field,
{
    let b = real_roots(q)?;
    Ok(RealFiberData::from_sorted(q, b))
}

/// Exact `m(Q)`, `M(Q)` when every root of `q` is rational; `None` otherwise.
pub fn minmax_exact(q: &Poly<Rational>) -> Result<Option<RealFiberData<Rational>>> {
    let d = q.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let cq: Poly<ExactComplex> = q.map(|c| Complex::new(c.clone(), Rational::zero()));
    let Some(z) = exact_roots(&cq) else { return Ok(None) };
    if z.iter().any(|w| !w.im.is_zero()) {
        return Err(Error::NotInSpace("non-real root".into()));
    }
    let mut b: Vec<Rational> = z.into_iter().map(|w| w.re).collect();
    b.sort();
    Ok(Some(RealFiberData::from_sorted(q, b)))
}

/// Whether `q` is the derivative of a polynomial with simple real roots.
pub fn in_qc_real<R: Real + Field>(q: &Poly<R>) -> Result<bool>
where
    Complex<R>: Field,
{
    Ok(minmax(q)?.in_qc_real())
}

/// The `Ev_0` coordinate of a monic `p` with simple real roots.
pub fn ev0<R: Real + Field>(p: &Poly<R>) -> Result<R>
where
    Complex<R>: Field,
{
    let n = p.degree().ok_or(Error::ConstantPolynomial)?;
    if n < 2 {
        return Err(Error::Precondition(format!("degree {n} is below 2")));
    }
    if p.leading() != R::one() {
        return Err(Error::Precondition("polynomial is not monic".into()));
    }
    real_roots(p)?;
    let data = minmax(&p.derive())?;
    let p0 = p.coeff(0);
    let v = match data.upper {
        Upper::Infinite => (p0 + data.m) / (p0 + data.m - R::one()),
        Upper::Finite(upper) => (p0 + upper) / (upper - data.m),
    };
    if !(v > R::zero() && v < R::one()) {
        return Err(Error::Precondition(format!("Ev_0 = {} outside (0, 1)", v.as_f64())));
    }
    Ok(v)
}

/// The polynomial with derivative `q` and `Ev_0` equal to `c`.
pub fn fiber_inverse<R: Real + Field>(q: &Poly<R>, c: R) -> Result<Poly<R>>
where
    Complex<R>: Field,
{
    if !(c > R::zero() && c < R::one()) {
        return Err(Error::Precondition(format!("c = {} outside (0, 1)", c.as_f64())));
    }
    let data = minmax(q)?;
    if !data.in_qc_real() {
        return Err(Error::NotInSpace("m(Q) >= M(Q)".into()));
    }
    let shift = match data.upper {
        Upper::Infinite => c / (c - R::one()) - data.m,
        Upper::Finite(upper) => (upper - data.m) * c - upper,
    };
    Ok(&q.primitive() + &Poly::constant(shift))
}

/// A degree-`d` real `Q` with simple real roots and `m(Q) >= M(Q)`.
///
/// `d = 4` gives `5X(X-1)(X-3)(X-pi)`; higher degrees add one root at a
/// time, one unit below `min(b, pi - P(pi)^{-1} int_0^pi P)`.
pub fn counterexample<R: Real + Field>(d: usize) -> Result<Poly<R>>
where
    Complex<R>: Field,
{
    if d < 4 {
        return Err(Error::Precondition(format!("degree {d}: none exists for cubic Q or below")));
    }
    let pi = R::pi();
    let mut b: Vec<R> = [0.0, 1.0, 3.0].iter().map(|x| R::of(*x)).collect();
    b.push(pi);
    let mut q = Poly::from_roots(R::of(5.0), &b);
    for deg in 5..=d {
        let p = q.primitive();
        let at_pi = p.eval(&pi);
        let area = p.primitive().eval(&pi);
        let lowest = b.iter().fold(R::infinity(), |a, x| a.min(*x));
        let bn = lowest.min(pi - area / at_pi) - R::one();
        let n = R::of(deg as f64);
        q = &Poly::new(alloc::vec![-bn * (n + R::one()) / n, (n + R::one()) / n]) * &q;
        b.push(bn);
    }
    let data = minmax(&q)?;
    if data.in_qc_real() {
        return Err(Error::Precondition(format!("construction failed at degree {d}")));
    }
    Ok(q)
}
