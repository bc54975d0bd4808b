//! Piecewise-parametric loops of polynomials.

pub mod builtins;
pub mod expr;
pub mod parse;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::format::fmt_rational;
use crate::poly::{int, ExactComplex, Field, Poly, Rational};
use crate::real::Real;
use crate::restricted::qf_margins;
use crate::roots::{min_separation, roots};

pub use builtins::{builtin, builtin_names};
pub use expr::Expr;
pub use parse::{parse, parse_expr, print};

/// Space a loop is meant to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// Polynomials with distinct roots.
    C,
    /// Polynomials with distinct roots and distinct critical values of their primitive.
    QC,
    /// Polynomials with distinct roots whose derivative lies in `QC`.
    RC,
}

impl Space {
    /// Short name used in loop text.
    pub fn name(self) -> &'static str {
        match self {
            Space::C => "c",
            Space::QC => "qc",
            Space::RC => "rc",
        }
    }
}

/// One piece `[start, end]` of a loop with its coefficient expressions (ascending).
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    /// Left endpoint.
    pub start: Rational,
    /// Right endpoint.
    pub end: Rational,
    /// Coefficients of `X^0 .. X^n`.
    pub coeffs: Vec<Expr>,
}

impl Segment {
    fn value_exact(&self, t: &Rational) -> Vec<Option<ExactComplex>> {
        self.coeffs.iter().map(|c| c.eval_exact(t)).collect()
    }

    fn value<R: Real>(&self, t: R) -> Vec<Complex<R>>
    where
        Complex<R>: Field,
    {
        self.coeffs.iter().map(|c| c.eval(t)).collect()
    }

    fn reparam(&self, start: Rational, end: Rational) -> Segment {
        let a = (&self.end - &self.start) / (&end - &start);
        let b = &self.start - &a * &start;
        Segment { start, end, coeffs: self.coeffs.iter().map(|c| c.substitute(&a, &b)).collect() }
    }
}

/// A piecewise loop (or path) `[0,1] -> C[X]_{<= n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopSpec {
    /// Ambient degree.
    pub n: usize,
    /// Target space.
    pub space: Space,
    /// Pieces in parameter order.
    pub segments: Vec<Segment>,
}

const JOIN_TOL: f64 = 1e-12;

fn close_enough(a: &Segment, ta: &Rational, b: &Segment, tb: &Rational) -> bool {
    let ea = a.value_exact(ta);
    let eb = b.value_exact(tb);
    let fa = a.value(<f64 as Real>::from_rational(ta));
    let fb = b.value(<f64 as Real>::from_rational(tb));
    (0..a.coeffs.len()).all(|k| match (&ea[k], &eb[k]) {
        (Some(x), Some(y)) => x == y,
        _ => (fa[k] - fb[k]).norm() <= JOIN_TOL * (1.0 + fa[k].norm()),
    })
}

impl LoopSpec {
    /// Build and check that the pieces partition `[0,1]` and join continuously.
    pub fn new(n: usize, space: Space, mut segments: Vec<Segment>) -> Result<Self> {
        let cover = || Error::InvalidLoop(String::from("intervals do not cover [0,1]"));
        if segments.is_empty() || !segments[0].start.is_zero() || !segments[segments.len() - 1].end.is_one() {
            return Err(cover());
        }
        for s in &mut segments {
            if s.start >= s.end {
                return Err(Error::InvalidLoop(format!(
                    "empty interval [{}, {}]",
                    fmt_rational(&s.start),
                    fmt_rational(&s.end)
                )));
            }
            if s.coeffs.len() > n + 1 && s.coeffs[n + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidLoop(format!("polynomial degree exceeds n = {n}")));
            }
            s.coeffs.resize(n + 1, Expr::Const(ExactComplex::zero()));
        }
        for w in segments.windows(2) {
            if w[0].end != w[1].start {
                return Err(cover());
            }
            if !close_enough(&w[0], &w[0].end, &w[1], &w[1].start) {
                return Err(Error::InvalidLoop(format!(
                    "pieces disagree at t = {}",
                    fmt_rational(&w[0].end)
                )));
            }
        }
        Ok(LoopSpec { n, space, segments })
    }

    /// Parse loop text.
    pub fn from_text(text: &str) -> Result<Self> {
        parse(text)
    }

    /// Canonical loop text.
    pub fn to_text(&self) -> String {
        print(self)
    }

    /// Whether the value at `t = 1` equals the value at `t = 0`.
    pub fn is_closed(&self) -> bool {
        let first = &self.segments[0];
        let last = &self.segments[self.segments.len() - 1];
        close_enough(first, &Rational::zero(), last, &Rational::one())
    }

    fn segment_index_exact(&self, t: &Rational) -> usize {
        self.segments.iter().position(|s| t <= &s.end).unwrap_or(self.segments.len() - 1)
    }

    fn segment_index<R: Real>(&self, t: R) -> usize {
        self.segments
            .iter()
            .position(|s| t <= R::from_rational(&s.end))
            .unwrap_or(self.segments.len() - 1)
    }

    /// Exact value at a rational parameter, when every coefficient is a Gaussian rational there.
    pub fn eval_exact(&self, t: &Rational) -> Option<Poly<ExactComplex>> {
        let s = &self.segments[self.segment_index_exact(t)];
        let c: Option<Vec<ExactComplex>> = s.value_exact(t).into_iter().collect();
        c.map(Poly::new)
    }

    /// Floating value at `t` (clamped into `[0,1]`).
    pub fn eval_at<R: Real>(&self, t: R) -> Poly<Complex<R>>
    where
        Complex<R>: Field,
    {
        let t = t.max(R::zero()).min(R::one());
        Poly::new(self.segments[self.segment_index(t)].value(t))
    }

    /// Floating value at `t`, rejecting parameters outside `[0,1]`.
    pub fn eval_loop(&self, t: f64) -> Result<Poly<Complex<f64>>> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Precondition(format!("t = {t} lies outside [0,1]")));
        }
        Ok(self.eval_at(t))
    }

    /// Exact basepoint when available.
    pub fn basepoint_exact(&self) -> Option<Poly<ExactComplex>> {
        self.eval_exact(&Rational::zero())
    }

    /// Floating basepoint.
    pub fn basepoint(&self) -> Poly<Complex<f64>> {
        self.eval_at(0.0)
    }

    /// Parameters at which pieces meet, including `0` and `1`.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.segments.iter().map(|s| s.start.clone()).collect();
        v.push(Rational::one());
        v
    }

    fn same_base(&self, other: &LoopSpec) -> bool {
        let a = &self.segments[self.segments.len() - 1];
        let b = &other.segments[0];
        self.n == other.n && close_enough(a, &Rational::one(), b, &Rational::zero())
    }

    /// Run the given paths one after another, each on an equal share of `[0,1]`.
    pub fn concat_all(parts: &[&LoopSpec]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition(String::from("nothing to concatenate")));
        }
        for w in parts.windows(2) {
            if !w[0].same_base(w[1]) {
                return Err(Error::BasepointMismatch);
            }
        }
        let k = int(parts.len() as i64);
        let mut segs = Vec::new();
        for (j, l) in parts.iter().enumerate() {
            let off = int(j as i64);
            for s in &l.segments {
                segs.push(s.reparam((&s.start + &off) / &k, (&s.end + &off) / &k));
            }
        }
        LoopSpec::new(parts[0].n, parts[0].space, segs)
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &LoopSpec) -> Result<Self> {
        Self::concat_all(&[self, other])
    }

    /// Reverse time.
    pub fn invert(&self) -> Self {
        let one = Rational::one();
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| {
                let coeffs = s.coeffs.iter().map(|c| c.substitute(&-one.clone(), &one)).collect();
                Segment { start: &one - &s.end, end: &one - &s.start, coeffs }
            })
            .collect();
        LoopSpec { n: self.n, space: self.space, segments }
    }

    /// `by * self * by^{-1}`.
    pub fn conjugate(&self, by: &LoopSpec) -> Result<Self> {
        let inv = by.invert();
        Self::concat_all(&[by, self, &inv])
    }

    /// Sample parameters: Chebyshev-Lobatto nodes in every piece, about `samples` in total.
    pub fn sample_points(&self, samples: usize) -> Vec<f64> {
        let mut out = Vec::new();
        for s in &self.segments {
            let a = <f64 as Real>::from_rational(&s.start);
            let b = <f64 as Real>::from_rational(&s.end);
            let m = (libm::ceil(samples as f64 * (b - a)) as usize).max(8);
            for j in 0..m {
                let c = libm::cos(core::f64::consts::PI * j as f64 / (m - 1) as f64);
                out.push(0.5 * (a + b) - 0.5 * (b - a) * c);
            }
        }
        out
    }

    /// Check closure, domains and membership in the target space at sample points.
    pub fn validate(&self, samples: usize) -> ValidationReport {
        let mut rep = ValidationReport {
            samples: 0,
            closed: self.is_closed(),
            min_disc: f64::INFINITY,
            min_root_sep: f64::INFINITY,
            min_sij: None,
            worst_t: 0.0,
            failures: Vec::new(),
        };
        if !rep.closed {
            rep.failures.push(String::from("loop is not closed"));
        }
        let mut worst = f64::INFINITY;
        for t in self.sample_points(samples) {
            rep.samples += 1;
            let seg = &self.segments[self.segment_index(t)];
            if let Some(m) = seg.coeffs.iter().find_map(|c| c.check_domain(t, JOIN_TOL)) {
                rep.failures.push(m);
                continue;
            }
            if self.n == 0 {
                continue;
            }
            let p: Poly<Complex<f64>> = self.eval_at(t);
            if p.degree() != Some(self.n) {
                rep.failures.push(format!("leading coefficient vanishes at t = {t}"));
                continue;
            }
            let margin = match sample_margins(&p, self.space) {
                Ok(m) => m,
                Err(e) => {
                    rep.failures.push(format!("{e} at t = {t}"));
                    continue;
                }
            };
            rep.min_disc = rep.min_disc.min(margin.disc);
            rep.min_root_sep = rep.min_root_sep.min(margin.sep);
            if let Some(s) = margin.sij {
                rep.min_sij = Some(rep.min_sij.map_or(s, |v: f64| v.min(s)));
            }
            let m = margin.sep.min(margin.sij.unwrap_or(f64::INFINITY));
            if m < worst {
                worst = m;
                rep.worst_t = t;
            }
        }
        if worst <= MARGIN {
            rep.failures.push(format!(
                "leaves {} near t = {:.6} (margin {:.3e})",
                self.space.name().to_uppercase(),
                rep.worst_t,
                worst
            ));
        }
        rep
    }
}

/// Smallest membership margin accepted by [`LoopSpec::validate`].
pub const MARGIN: f64 = 1e-6;

struct Margins {
    disc: f64,
    sep: f64,
    sij: Option<f64>,
}

fn sample_margins(p: &Poly<Complex<f64>>, space: Space) -> Result<Margins> {
    let r = roots(p)?;
    let n = r.len();
    let lead = p.leading().norm();
    let mut disc = libm::pow(lead, (2 * n).saturating_sub(2) as f64);
    for i in 0..n {
        for j in i + 1..n {
            disc *= (r[i] - r[j]).norm_sqr();
        }
    }
    let sep = if n >= 2 { min_separation(&r) } else { f64::INFINITY };
    let (sep, sij) = match space {
        Space::C => (sep, None),
        Space::QC => {
            let (s, v) = qf_margins(&r);
            (s, (n >= 3).then_some(v))
        }
        Space::RC => {
            let d = p.derive();
            let b = roots(&d)?;
            let (s, v) = qf_margins(&b);
            (sep.min(s), (b.len() >= 3).then_some(v))
        }
    };
    Ok(Margins { disc, sep, sij })
}

/// Outcome of [`LoopSpec::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    /// Number of parameters sampled.
    pub samples: usize,
    /// Value at `1` equals value at `0`.
    pub closed: bool,
    /// Smallest `|disc|` seen.
    pub min_disc: f64,
    /// Smallest root separation seen (derivative roots included for `RC`).
    pub min_root_sep: f64,
    /// Smallest `|S_ij|` seen, when the space has such conditions.
    pub min_sij: Option<f64>,
    /// Parameter with the smallest margin.
    pub worst_t: f64,
    /// Human-readable failures.
    pub failures: Vec<String>,
}

impl ValidationReport {
    /// No failures.
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Smallest distance from the values of a degree-0 loop to `points`.
pub fn min_distance(l: &LoopSpec, points: &[Complex<f64>], samples: usize) -> f64 {
    l.sample_points(samples)
        .into_iter()
        .map(|t| {
            let v = l.eval_at(t).coeff(0);
            points.iter().map(|p| (v - p).norm()).fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Loop whose every coefficient is constant.
pub fn constant_loop(space: Space, p: &Poly<ExactComplex>, n: usize) -> Result<LoopSpec> {
    let mut coeffs: Vec<Expr> = p.coeffs().iter().cloned().map(Expr::Const).collect();
    coeffs.resize(n + 1, Expr::Const(ExactComplex::zero()));
    LoopSpec::new(n, space, vec![Segment { start: Rational::zero(), end: Rational::one(), coeffs }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn ops_preserve_endpoints() {
        let l = parse("loop n=1 { [0,1/2]: X + E(4t); [1/2,1]: X + 1 }").unwrap();
        assert!(l.is_closed());
        let inv = l.invert();
        let v = inv.eval_exact(&rat(1, 8)).unwrap();
        assert_eq!(v, l.eval_exact(&rat(7, 8)).unwrap());
        let c = l.concat(&inv).unwrap();
        assert_eq!(c.eval_exact(&rat(1, 8)).unwrap(), l.eval_exact(&rat(1, 4)).unwrap());
        assert_eq!(c.eval_exact(&rat(3, 4)).unwrap(), inv.eval_exact(&rat(1, 2)).unwrap());
        let k = l.conjugate(&l).unwrap();
        assert_eq!(k.segments.len(), 6);
        assert!(k.is_closed());
        let other = parse("loop n=1 { [0,1]: X + 2 }").unwrap();
        assert!(matches!(l.concat(&other), Err(Error::BasepointMismatch)));
    }

    #[test]
    fn eval_range() {
        let l = parse("loop n=1 { [0,1]: X + t }").unwrap();
        assert!(l.eval_loop(1.5).is_err());
        assert!((l.eval_loop(0.25).unwrap().coeff(0).re - 0.25).abs() < 1e-15);
        assert!(!l.is_closed());
        assert!(!l.validate(64).valid());
    }

    #[test]
    fn discontinuity_rejected() {
        let e = parse("loop n=1 { [0,1/2]: X + t; [1/2,1]: X }").unwrap_err();
        assert!(matches!(e, Error::InvalidLoop(_)));
    }
}
