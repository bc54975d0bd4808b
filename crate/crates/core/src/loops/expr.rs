//! Coefficient expressions in the loop parameter `t`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::format::{fmt_complex, fmt_rational};
use crate::poly::{int, ExactComplex, Field, Rational};
use crate::real::{ccbrt, csqrt, exp_i_pi, Real};

/// Expression AST; build values through the normalising constructors of this module.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Gaussian rational constant.
    Const(ExactComplex),
    /// The loop parameter.
    T,
    /// `e^{i pi (q t + r)}`.
    ExpPi {
        /// Coefficient of `t`.
        q: Rational,
        /// Offset.
        r: Rational,
    },
    /// Complex conjugate.
    Conj(Box<Expr>),
    /// Sum of terms.
    Sum(Vec<Expr>),
    /// Product of factors.
    Product(Vec<Expr>),
    /// Integer power.
    Pow(Box<Expr>, i32),
    /// Quotient with a parameter-dependent denominator.
    Div(Box<Expr>, Box<Expr>),
    /// Principal square root.
    Sqrt(Box<Expr>),
    /// Principal cube root.
    Cbrt(Box<Expr>),
}

fn czero() -> ExactComplex {
    ExactComplex::zero()
}

fn cone() -> ExactComplex {
    ExactComplex::one()
}

/// A constant.
pub fn constant(c: ExactComplex) -> Expr {
    Expr::Const(c)
}

/// A real rational constant.
pub fn rational(q: Rational) -> Expr {
    Expr::Const(Complex::new(q, Rational::zero()))
}

/// Exact value of `e^{i pi a}` when `2a` is an integer.
fn exact_exp(a: &Rational) -> Option<ExactComplex> {
    let twice = a * int(2);
    if !twice.is_integer() {
        return None;
    }
    let k = twice.to_integer().mod_floor(&BigInt::from(4));
    let (re, im) = match u8::try_from(k).ok()? {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    Some(Complex::new(int(re), int(im)))
}

/// `e^{i pi (q t + r)}`, folded to a constant when exact.
pub fn exp_pi(q: Rational, r: Rational) -> Expr {
    if q.is_zero() {
        if let Some(c) = exact_exp(&r) {
            return Expr::Const(c);
        }
        let two = int(2);
        let r = r.clone() - (r / &two).floor() * two;
        return Expr::ExpPi { q, r };
    }
    Expr::ExpPi { q, r }
}

/// Normalised sum: flattened, constants folded to the front, zeros dropped.
pub fn sum(terms: Vec<Expr>) -> Expr {
    let mut c = czero();
    let mut rest = Vec::new();
    for t in terms {
        match t {
            Expr::Const(k) => c = c + k,
            Expr::Sum(inner) => {
                for u in inner {
                    match u {
                        Expr::Const(k) => c = c + k,
                        other => rest.push(other),
                    }
                }
            }
            other => rest.push(other),
        }
    }
    if !c.is_zero() {
        rest.insert(0, Expr::Const(c));
    }
    match rest.len() {
        0 => Expr::Const(czero()),
        1 => rest.pop().expect("one term"),
        _ => Expr::Sum(rest),
    }
}

/// `a + b`.
pub fn add(a: Expr, b: Expr) -> Expr {
    sum(vec![a, b])
}

/// Normalised product: flattened, constants then exponentials folded to the front.
pub fn product(factors: Vec<Expr>) -> Expr {
    let mut c = cone();
    let mut e: Option<(Rational, Rational)> = None;
    let mut rest = Vec::new();
    let mut stack: Vec<Expr> = factors.into_iter().rev().collect();
    while let Some(f) = stack.pop() {
        match f {
            Expr::Const(k) => c = c * k,
            Expr::ExpPi { q, r } => {
                e = Some(match e {
                    None => (q, r),
                    Some((q0, r0)) => (q0 + q, r0 + r),
                })
            }
            Expr::Product(inner) => stack.extend(inner.into_iter().rev()),
            other => rest.push(other),
        }
    }
    if c.is_zero() {
        return Expr::Const(czero());
    }
    let mut out = Vec::new();
    if let Some((q, r)) = e {
        match exp_pi(q, r) {
            Expr::Const(k) => c = c * k,
            other => out.push(other),
        }
    }
    if !c.is_one() {
        out.insert(0, Expr::Const(c));
    }
    out.extend(rest);
    match out.len() {
        0 => Expr::Const(cone()),
        1 => out.pop().expect("one factor"),
        _ => Expr::Product(out),
    }
}

/// `a * b`.
pub fn mul(a: Expr, b: Expr) -> Expr {
    product(vec![a, b])
}

/// `-a`.
pub fn neg(a: Expr) -> Expr {
    mul(Expr::Const(-cone()), a)
}

fn const_pow(c: &ExactComplex, k: i32) -> Option<ExactComplex> {
    if c.is_zero() && k < 0 {
        return None;
    }
    let mut acc = cone();
    for _ in 0..k.unsigned_abs() {
        acc = acc * c.clone();
    }
    Some(if k < 0 { cone() / acc } else { acc })
}

/// Integer power.
pub fn pow(base: Expr, k: i32) -> Expr {
    match (base, k) {
        (_, 0) => Expr::Const(cone()),
        (b, 1) => b,
        (Expr::Const(c), k) => match const_pow(&c, k) {
            Some(v) => Expr::Const(v),
            None => Expr::Pow(Box::new(Expr::Const(c)), k),
        },
        (Expr::ExpPi { q, r }, k) => exp_pi(q * int(k as i64), r * int(k as i64)),
        (Expr::Pow(b, j), k) => pow(*b, j * k),
        (b, k) => Expr::Pow(Box::new(b), k),
    }
}

/// `a / b`.
pub fn div(a: Expr, b: Expr) -> Expr {
    match b {
        Expr::Const(c) if !c.is_zero() => mul(a, Expr::Const(cone() / c)),
        Expr::ExpPi { q, r } => mul(a, exp_pi(-q, -r)),
        b => {
            if matches!(&a, Expr::Const(c) if c.is_zero()) {
                return a;
            }
            Expr::Div(Box::new(a), Box::new(b))
        }
    }
}

/// Complex conjugate, pushed through sums, products, powers and quotients.
pub fn conj(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(c.conj()),
        Expr::T => Expr::T,
        Expr::ExpPi { q, r } => exp_pi(-q, -r),
        Expr::Conj(x) => *x,
        Expr::Sum(v) => sum(v.into_iter().map(conj).collect()),
        Expr::Product(v) => product(v.into_iter().map(conj).collect()),
        Expr::Pow(x, k) => pow(conj(*x), k),
        Expr::Div(x, y) => div(conj(*x), conj(*y)),
        other => Expr::Conj(Box::new(other)),
    }
}

fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().nth_root(k);
    let d = q.denom().nth_root(k);
    let back = Rational::new(num_traits::pow(n.clone(), k as usize), num_traits::pow(d.clone(), k as usize));
    (&back == q).then(|| Rational::new(n, d))
}

/// Principal square root.
pub fn sqrt(a: Expr) -> Expr {
    if let Expr::Const(c) = &a {
        if c.im.is_zero() {
            if let Some(r) = exact_root(&c.re, 2) {
                return rational(r);
            }
        }
    }
    Expr::Sqrt(Box::new(a))
}

/// Principal cube root.
pub fn cbrt(a: Expr) -> Expr {
    if let Expr::Const(c) = &a {
        if c.im.is_zero() {
            if let Some(r) = exact_root(&c.re, 3) {
                return rational(r);
            }
        }
    }
    Expr::Cbrt(Box::new(a))
}

impl Expr {
    /// Whether this is the constant zero.
    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    /// Floating evaluation at `t`.
    pub fn eval<R: Real>(&self, t: R) -> Complex<R>
    where
        Complex<R>: Field,
    {
        match self {
            Expr::Const(c) => Complex::new(R::from_rational(&c.re), R::from_rational(&c.im)),
            Expr::T => Complex::new(t, R::zero()),
            Expr::ExpPi { q, r } => exp_i_pi(R::from_rational(q) * t + R::from_rational(r)),
            Expr::Conj(x) => x.eval(t).conj(),
            Expr::Sum(v) => v.iter().fold(Complex::new(R::zero(), R::zero()), |a, x| a + x.eval(t)),
            Expr::Product(v) => v.iter().fold(Complex::new(R::one(), R::zero()), |a, x| a * x.eval(t)),
            Expr::Pow(x, k) => {
                let b = x.eval(t);
                let mut acc = Complex::new(R::one(), R::zero());
                for _ in 0..k.unsigned_abs() {
                    acc = acc * b;
                }
                if *k < 0 {
                    Complex::new(R::one(), R::zero()) / acc
                } else {
                    acc
                }
            }
            Expr::Div(a, b) => a.eval(t) / b.eval(t),
            Expr::Sqrt(x) => csqrt(x.eval(t)),
            Expr::Cbrt(x) => ccbrt(x.eval(t)),
        }
    }

    /// Exact evaluation at a rational `t`, when the value is a Gaussian rational
    /// reachable without irrational intermediate values.
    pub fn eval_exact(&self, t: &Rational) -> Option<ExactComplex> {
        match self {
            Expr::Const(c) => Some(c.clone()),
            Expr::T => Some(Complex::new(t.clone(), Rational::zero())),
            Expr::ExpPi { q, r } => exact_exp(&(q * t + r)),
            Expr::Conj(x) => Some(x.eval_exact(t)?.conj()),
            Expr::Sum(v) => v.iter().try_fold(czero(), |a, x| Some(a + x.eval_exact(t)?)),
            Expr::Product(v) => v.iter().try_fold(cone(), |a, x| Some(a * x.eval_exact(t)?)),
            Expr::Pow(x, k) => const_pow(&x.eval_exact(t)?, *k),
            Expr::Div(a, b) => {
                let d = b.eval_exact(t)?;
                if d.is_zero() {
                    return None;
                }
                Some(a.eval_exact(t)? / d)
            }
            Expr::Sqrt(x) => {
                let v = x.eval_exact(t)?;
                if !v.im.is_zero() {
                    return None;
                }
                exact_root(&v.re, 2).map(|r| Complex::new(r, Rational::zero()))
            }
            Expr::Cbrt(x) => {
                let v = x.eval_exact(t)?;
                if !v.im.is_zero() {
                    return None;
                }
                exact_root(&v.re, 3).map(|r| Complex::new(r, Rational::zero()))
            }
        }
    }

    /// Substitute `t -> a t + b`.
    pub fn substitute(&self, a: &Rational, b: &Rational) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::T => add(mul(rational(a.clone()), Expr::T), rational(b.clone())),
            Expr::ExpPi { q, r } => exp_pi(q * a, q * b + r),
            Expr::Conj(x) => conj(x.substitute(a, b)),
            Expr::Sum(v) => sum(v.iter().map(|x| x.substitute(a, b)).collect()),
            Expr::Product(v) => product(v.iter().map(|x| x.substitute(a, b)).collect()),
            Expr::Pow(x, k) => pow(x.substitute(a, b), *k),
            Expr::Div(x, y) => div(x.substitute(a, b), y.substitute(a, b)),
            Expr::Sqrt(x) => sqrt(x.substitute(a, b)),
            Expr::Cbrt(x) => cbrt(x.substitute(a, b)),
        }
    }

    /// `(q, r)` when the expression equals `q t + r` with real rationals.
    pub fn affine(&self) -> Option<(Rational, Rational)> {
        match self {
            Expr::Const(c) if c.im.is_zero() => Some((Rational::zero(), c.re.clone())),
            Expr::T => Some((Rational::one(), Rational::zero())),
            Expr::Sum(v) => v.iter().try_fold((Rational::zero(), Rational::zero()), |(q, r), x| {
                let (a, b) = x.affine()?;
                Some((q + a, r + b))
            }),
            Expr::Product(v) => {
                let mut scale = Rational::one();
                let mut lin: Option<(Rational, Rational)> = None;
                for x in v {
                    let (a, b) = x.affine()?;
                    if a.is_zero() {
                        scale *= b;
                    } else if lin.is_none() {
                        lin = Some((a, b));
                    } else {
                        return None;
                    }
                }
                let (a, b) = lin.unwrap_or((Rational::zero(), Rational::one()));
                Some((a * &scale, b * scale))
            }
            _ => None,
        }
    }

    /// Visit every denominator and root argument, reporting a domain failure at `t`.
    pub fn check_domain(&self, t: f64, tol: f64) -> Option<String> {
        match self {
            Expr::Const(_) | Expr::T | Expr::ExpPi { .. } => None,
            Expr::Conj(x) => x.check_domain(t, tol),
            Expr::Sum(v) | Expr::Product(v) => v.iter().find_map(|x| x.check_domain(t, tol)),
            Expr::Pow(x, k) => {
                if *k < 0 && x.eval(t).norm() <= tol {
                    return Some(format!("negative power of a vanishing base at t = {t}"));
                }
                x.check_domain(t, tol)
            }
            Expr::Div(a, b) => {
                if b.eval(t).norm() <= tol {
                    return Some(format!("denominator vanishes at t = {t}"));
                }
                a.check_domain(t, tol).or_else(|| b.check_domain(t, tol))
            }
            Expr::Sqrt(x) | Expr::Cbrt(x) => {
                if x.eval(t).re <= tol {
                    return Some(format!("root argument leaves Re > 0 at t = {t}"));
                }
                x.check_domain(t, tol)
            }
        }
    }

    /// Canonical text.
    pub fn to_text(&self) -> String {
        match self {
            Expr::Const(c) => fmt_const(c, false),
            Expr::T => String::from("t"),
            Expr::ExpPi { q, r } => format!("E({})", fmt_affine(q, r)),
            Expr::Conj(x) => format!("conj({})", x.to_text()),
            Expr::Sqrt(x) => format!("sqrt({})", x.to_text()),
            Expr::Cbrt(x) => format!("cbrt({})", x.to_text()),
            Expr::Sum(v) => {
                let mut out = String::new();
                for (k, x) in v.iter().enumerate() {
                    if k == 0 {
                        out.push_str(&x.to_text());
                        continue;
                    }
                    match negated_product(x) {
                        Some(p) => {
                            out.push_str(" - ");
                            out.push_str(&p);
                        }
                        None => {
                            out.push_str(" + ");
                            out.push_str(&x.to_text());
                        }
                    }
                }
                out
            }
            Expr::Product(v) => {
                let minus_one = matches!(&v[0], Expr::Const(c) if (-c.clone()).is_one());
                let parts: Vec<String> = v
                    .iter()
                    .skip(usize::from(minus_one))
                    .map(|x| match x {
                        Expr::Const(c) => fmt_const(c, true),
                        other => factor_text(other),
                    })
                    .collect();
                let body = parts.join("*");
                if minus_one {
                    format!("-{body}")
                } else {
                    body
                }
            }
            Expr::Pow(x, k) => {
                let base = match **x {
                    Expr::T => String::from("t"),
                    _ => format!("({})", x.to_text()),
                };
                if *k < 0 {
                    format!("{base}^({k})")
                } else {
                    format!("{base}^{k}")
                }
            }
            Expr::Div(a, b) => format!("({})/({})", a.to_text(), b.to_text()),
        }
    }
}

fn factor_text(x: &Expr) -> String {
    match x {
        Expr::Sum(_) | Expr::Div(..) => format!("({})", x.to_text()),
        _ => x.to_text(),
    }
}

fn fmt_const(c: &ExactComplex, in_product: bool) -> String {
    let s = fmt_complex(c);
    if in_product && !c.im.is_zero() {
        format!("({s})")
    } else {
        s
    }
}

fn negated_product(x: &Expr) -> Option<String> {
    match x {
        Expr::Product(v) => match &v[0] {
            Expr::Const(c) if c.im.is_zero() && c.re.is_negative() => {
                let mut w = v.clone();
                let pos = -c.clone();
                if pos.is_one() {
                    w.remove(0);
                } else {
                    w[0] = Expr::Const(pos);
                }
                Some(if w.len() == 1 { factor_text(&w[0]) } else { Expr::Product(w).to_text() })
            }
            _ => None,
        },
        _ => None,
    }
}

fn fmt_affine(q: &Rational, r: &Rational) -> String {
    let tq = if q.is_zero() {
        String::new()
    } else if q.is_one() {
        String::from("t")
    } else if (-q).is_one() {
        String::from("-t")
    } else if q.denom().is_one() {
        format!("{}t", q.numer())
    } else {
        format!("{}*t", fmt_rational(q))
    };
    match (q.is_zero(), r.is_zero()) {
        (true, _) => fmt_rational(r),
        (false, true) => tq,
        (false, false) => {
            if r.is_negative() {
                format!("{tq}-{}", fmt_rational(&-r))
            } else {
                format!("{tq}+{}", fmt_rational(r))
            }
        }
    }
}
