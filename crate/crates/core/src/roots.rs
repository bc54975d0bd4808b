//! Simultaneous root finding (Aberth–Ehrlich) and root-set utilities.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{to_approx, ExactComplex, Field, Poly, Rational};
use crate::real::{cabs, Real};

/// Offset (in units of pi) of the initial circle of iterates.
const START_ROTATION: f64 = 0.381_966_011_250_105_1;

/// Iteration limits for [`roots_with`].
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Maximum number of sweeps.
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { max_iter: 500 }
    }
}

fn eval_with_derivative<R: Real>(c: &[Complex<R>], z: Complex<R>) -> (Complex<R>, Complex<R>, R) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    let mut bound = R::zero();
    let az = cabs(z);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
        bound = bound * az + cabs(*a);
    }
    (p, dp, bound)
}

fn to_pairs<R: Real>(z: &[Complex<R>]) -> Vec<(f64, f64)> {
    z.iter().map(|w| (w.re.as_f64(), w.im.as_f64())).collect()
}

/// Roots of `p` in a deterministic order (ascending real part, then imaginary part).
pub fn roots<R: Real>(p: &Poly<Complex<R>>) -> Result<Vec<Complex<R>>>
where
    Complex<R>: Field,
{
    roots_with(p, RootOptions::default())
}

/// [`roots`] with explicit options.
pub fn roots_with<R: Real>(p: &Poly<Complex<R>>, opts: RootOptions) -> Result<Vec<Complex<R>>>
where
    Complex<R>: Field,
{
    let n = match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let c = p.coeffs();
    let lead = cabs(c[n]);
    let mut rho = R::zero();
    for a in &c[..n] {
        rho = rho.max(cabs(*a) / lead);
    }
    rho = rho + R::one();
    let nn = R::of(n as f64);
    let start: Vec<Complex<R>> = (0..n)
        .map(|k| {
            let (co, si) = (R::of(2.0) * R::of(k as f64) / nn + R::of(START_ROTATION)).cos_sin_pi();
            Complex::new(rho * co, rho * si)
        })
        .collect();
    let mut z = aberth(c, start, opts.max_iter)?;
    sort_roots(&mut z);
    Ok(z)
}

/// Roots of an exact polynomial, computed at precision `R`.
pub fn roots_exact<R: Real>(p: &Poly<ExactComplex>) -> Result<Vec<Complex<R>>>
where
    Complex<R>: Field,
{
    roots(&to_approx::<R>(p))
}

/// Refine approximate roots, keeping the order of `start`.
pub fn polish<R: Real>(p: &Poly<Complex<R>>, start: &[Complex<R>], max_iter: usize) -> Result<Vec<Complex<R>>>
where
    Complex<R>: Field,
{
    match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) if n != start.len() => {
            return Err(Error::Precondition("start vector length differs from degree".into()))
        }
        _ => {}
    }
    aberth(p.coeffs(), start.to_vec(), max_iter)
}

fn aberth<R: Real>(c: &[Complex<R>], mut z: Vec<Complex<R>>, max_iter: usize) -> Result<Vec<Complex<R>>> {
    let n = z.len();
    let u = R::of(R::UNIT_ROUNDOFF);
    let nn = R::of(n as f64);
    let small = u * R::of(4.0);
    let loose = u * nn * R::of(64.0);
    let mut done = alloc::vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (pv, dpv, bound) = eval_with_derivative(c, z[k]);
            if cabs(pv) <= small * bound {
                done[k] = true;
                continue;
            }
            all = false;
            let w = pv / dpv;
            let mut s = Complex::zero();
            for j in 0..n {
                if j != k {
                    s = s + (z[k] - z[j]).inv();
                }
            }
            let corr = w / (Complex::new(R::one(), R::zero()) - w * s);
            if !(corr.re.is_finite() && corr.im.is_finite()) {
                continue;
            }
            z[k] = z[k] - corr;
            if cabs(corr) <= small * (R::one() + cabs(z[k])) {
                done[k] = true;
            }
        }
        if all {
            return Ok(z);
        }
    }
    for w in &z {
        let (pv, _, bound) = eval_with_derivative(c, *w);
        let within = cabs(pv) <= loose * bound;
        if !within {
            return Err(Error::NoConvergence { iterations: max_iter, best: to_pairs(&z) });
        }
    }
    Ok(z)
}

/// Sort by ascending real part, then imaginary part.
pub fn sort_roots<R: Real>(z: &mut [Complex<R>]) {
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
}

/// Smallest pairwise distance (`+inf` for fewer than two points).
pub fn min_separation<R: Real>(z: &[Complex<R>]) -> R {
    let mut m = R::infinity();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            m = m.min(cabs(z[i] - z[j]));
        }
    }
    m
}

/// [`min_separation`], erroring on fewer than two points.
pub fn min_separation_checked<R: Real>(z: &[Complex<R>]) -> Result<R> {
    if z.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: z.len() });
    }
    Ok(min_separation(z))
}

/// `prod_{i<j} (r_i - r_j)^2` from floating roots.
pub fn discriminant_oracle<R: Real>(z: &[Complex<R>]) -> Complex<R>
where
    Complex<R>: Field,
{
    crate::poly::discriminant_from_roots(z)
}

/// Simplest rational within `tol` of `x` from the continued-fraction convergents.
pub fn rational_near(x: f64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = libm::floor(y);
        let ai = BigInt::from_f64(a)?;
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        let c = BigRational::new(h2.clone(), k2.clone());
        if (c.to_f64()? - x).abs() <= tol {
            return Some(c);
        }
        let frac = y - a;
        if frac == 0.0 {
            return None;
        }
        y = 1.0 / frac;
        h0 = core::mem::replace(&mut h1, h2);
        k0 = core::mem::replace(&mut k1, k2);
    }
    None
}

/// All roots as Gaussian rationals, if they are simple and rational; `None` otherwise.
///
/// Candidates come from the floating roots and are verified exactly.
pub fn exact_roots(p: &Poly<ExactComplex>) -> Option<Vec<ExactComplex>> {
    let approx = roots_exact::<f64>(p).ok()?;
    let mut out: Vec<ExactComplex> = Vec::with_capacity(approx.len());
    for z in approx {
        let scale = 1.0 + z.norm();
        let re = rational_near(z.re, 1e-9 * scale)?;
        let im = if z.im.abs() <= 1e-9 * scale { Rational::zero() } else { rational_near(z.im, 1e-9 * scale)? };
        let c = Complex::new(re, im);
        if !p.eval(&c).is_zero() || out.contains(&c) {
            return None;
        }
        out.push(c);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{cq, int, real};
    use twofloat::TwoFloat;

    #[test]
    fn cubic_roots() {
        let p = Poly::new(alloc::vec![real(int(0)), real(int(-3)), real(int(0)), real(int(1))]);
        let r = roots_exact::<f64>(&p).unwrap();
        let s3 = 3f64.sqrt();
        let expect = [-s3, 0.0, s3];
        for (a, b) in r.iter().zip(expect) {
            assert!((a - Complex::new(b, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn double_double_roots() {
        let p = Poly::new(alloc::vec![real(int(-2)), real(int(0)), real(int(1))]);
        let r = roots_exact::<TwoFloat>(&p).unwrap();
        let s2 = TwoFloat::from(2.0).sqrt();
        assert!((r[1].re - s2).abs().hi() < 1e-30);
        assert!((r[0].re + s2).abs().hi() < 1e-30);
    }

    #[test]
    fn complex_coefficients() {
        let rs = [cq((1, 1), (2, 1)), cq((-1, 3), (0, 1)), cq((5, 2), (-1, 7)), cq((0, 1), (-3, 1))];
        let p = Poly::from_roots(real(int(2)), &rs);
        let r = roots_exact::<f64>(&p).unwrap();
        for e in &rs {
            let e = Complex::new(f64::from_rational(&e.re), f64::from_rational(&e.im));
            assert!(r.iter().any(|w| (w - e).norm() < 1e-12));
        }
    }

    #[test]
    fn constant_rejected() {
        let p = Poly::new(alloc::vec![Complex::new(1.0, 0.0)]);
        assert_eq!(roots(&p), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn rational_recovery() {
        assert_eq!(rational_near(5.0 / 3.0, 1e-12), Some(crate::poly::rat(5, 3)));
        assert_eq!(rational_near(-9.0, 1e-12), Some(int(-9)));
        let p = Poly::from_roots(real(int(4)), &[real(int(0)), real(crate::poly::rat(5, 3)), cq((-1, 2), (2, 7))]);
        let r = exact_roots(&p).unwrap();
        assert!(r.contains(&cq((-1, 2), (2, 7))));
        let irr = Poly::new(alloc::vec![real(int(-2)), real(int(0)), real(int(1))]);
        assert!(exact_roots(&irr).is_none());
    }

    #[test]
    fn separation() {
        let z = [Complex::new(0.0, 0.0), Complex::new(3.0, 4.0), Complex::new(1.0, 0.0)];
        assert_eq!(min_separation(&z), 1.0);
    }
}
