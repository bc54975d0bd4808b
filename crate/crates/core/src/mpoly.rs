//! Sparse multivariate polynomials with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::format::fmt_rational;
use crate::poly::{ExactComplex, Rational};

/// Exponent vector ordered by total degree, then by the exponents of
/// `z_m, z_{m-1}, ..., z_1` (so `z_1 < z_2 < ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `z_1, ..., z_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    /// A constant.
    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `z_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Add `c * z^exps`.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        let v = self.terms.remove(&key).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    /// Whether all terms have total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            p.add_term(m.0.clone(), v * c);
        }
        p
    }

    /// Rename variables: `z_i` becomes `z_{perm[i]}` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            p.add_term(e, v.clone());
        }
        p
    }

    /// Evaluate at a point.
    pub fn eval(&self, z: &[ExactComplex]) -> ExactComplex {
        let mut acc = ExactComplex::zero();
        for (m, c) in &self.terms {
            let mut t = ExactComplex::new(c.clone(), Rational::zero());
            for (zi, &e) in z.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * zi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Text form with variables `z1, z2, ...` in ascending monomial order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (m, v) in &rhs.terms {
            p.add_term(m.0.clone(), v.clone());
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut p = MPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.0.iter().zip(&b.0).map(|(u, v)| u.saturating_add(*v)).collect();
                p.add_term(e, x * y);
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn order_and_text() {
        let z = |i| MPoly::var(3, i);
        let p = &(&z(2).scale(&int(-4)) + &z(0).scale(&int(2))) + &z(1).scale(&int(2));
        assert_eq!(p.to_text(), "2*z1 + 2*z2 - 4*z3");
        let q = &(&z(0) * &z(0)) - &(&z(1) * &z(2));
        assert_eq!(q.to_text(), "z1^2 - z2*z3");
        assert!(q.is_homogeneous(2));
    }
}
