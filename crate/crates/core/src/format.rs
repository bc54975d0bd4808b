//! Canonical text forms of rationals, Gaussian rationals and polynomials.
//!
//! A polynomial is written as its ascending coefficient list, e.g.
//! `[-1/3, 0, 6, -16/3, 1]`; a complex coefficient is written `re+im*i`
//! (`2*i`, `-i`, `1/2-3*i`).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{ExactComplex, Poly, Rational};

/// `p` or `p/q` in lowest terms.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical complex form.
pub fn fmt_complex(z: &ExactComplex) -> String {
    let im = if z.im.abs().is_one() {
        String::from("i")
    } else {
        format!("{}*i", fmt_rational(&z.im.abs()))
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_rational(&z.re),
        (true, false) => {
            if z.im.is_negative() {
                format!("-{im}")
            } else {
                im
            }
        }
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("{}{sign}{im}", fmt_rational(&z.re))
        }
    }
}

/// Canonical polynomial form `[c0, c1, ..., cn]` (`[0]` for zero).
pub fn fmt_poly(p: &Poly<ExactComplex>) -> String {
    if p.is_zero() {
        return String::from("[0]");
    }
    let parts: Vec<String> = p.coeffs().iter().map(fmt_complex).collect();
    format!("[{}]", parts.join(", "))
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, col: 1, msg: msg.into() }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("invalid integer `{s}`")));
    }
    t.parse::<BigInt>().map_err(|_| err(format!("invalid integer `{s}`")))
}

/// Parse `p`, `p/q` or a terminating decimal `d.ddd` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let d = parse_int(b)?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(parse_int(a)?, d));
    }
    if let Some((a, b)) = t.split_once('.') {
        if b.is_empty() || !b.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err(format!("invalid decimal `{s}`")));
        }
        let neg = a.trim_start().starts_with('-');
        let whole = if a.trim().is_empty() || a.trim() == "-" || a.trim() == "+" {
            BigInt::zero()
        } else {
            parse_int(a)?
        };
        let frac: BigInt = b.parse().map_err(|_| err("invalid decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), b.len());
        let f = BigRational::new(frac, scale);
        let w = BigRational::from_integer(whole);
        return Ok(if neg { w - f } else { w + f });
    }
    Ok(BigRational::from_integer(parse_int(t)?))
}

/// Parse a Gaussian rational in canonical (or decimal) form.
pub fn parse_complex(s: &str) -> Result<ExactComplex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err("empty number"));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&t)?, Rational::zero()));
    };
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (Rational::zero(), body),
    };
    let (neg, mag) = match im.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, im.strip_prefix('+').unwrap_or(im)),
    };
    let mag = if mag.is_empty() {
        Rational::one()
    } else {
        let m = mag
            .strip_suffix('*')
            .ok_or_else(|| err(format!("invalid complex number `{s}`")))?;
        parse_rational(m)?
    };
    Ok(Complex::new(re, if neg { -mag } else { mag }))
}

/// Parse `[c0, c1, ...]`.
pub fn parse_poly(s: &str) -> Result<Poly<ExactComplex>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("polynomial must be written as [c0, c1, ...]"))?;
    if inner.trim().is_empty() {
        return Ok(Poly::zero());
    }
    let coeffs = inner.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}
