//! Univariate polynomials over a field, stored with ascending coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;
/// Gaussian rational `a + b i`.
pub type ExactComplex = Complex<BigRational>;

/// Coefficient field of a [`Poly`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer.
    fn from_int(k: i64) -> Self;
    /// Image of a rational (nearest value for floating fields).
    fn from_ratio(q: &BigRational) -> Self;
    /// Determinant of a square matrix.
    fn det(a: Vec<Vec<Self>>) -> Self {
        gauss_determinant(a)
    }
}

macro_rules! field_impl {
    ($($t:ty),*) => {$(
        impl Field for $t {
            fn from_int(k: i64) -> Self {
                <$t as crate::real::Real>::of(k as f64)
            }
            fn from_ratio(q: &BigRational) -> Self {
                <$t as crate::real::Real>::from_rational(q)
            }
        }
        impl Field for Complex<$t> {
            fn from_int(k: i64) -> Self {
                Complex::new(<$t as crate::real::Real>::of(k as f64), <$t>::zero())
            }
            fn from_ratio(q: &BigRational) -> Self {
                Complex::new(<$t as crate::real::Real>::from_rational(q), <$t>::zero())
            }
        }
    )*};
}
field_impl!(f64, TwoFloat);

impl Field for BigRational {
    fn from_int(k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
    fn from_ratio(q: &BigRational) -> Self {
        q.clone()
    }
    fn det(a: Vec<Vec<Self>>) -> Self {
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = a
            .into_iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                scale *= &l;
                row.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        BigRational::new(bareiss(rows), scale)
    }
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

impl Field for ExactComplex {
    fn from_int(k: i64) -> Self {
        Complex::new(BigRational::from_int(k), BigRational::zero())
    }
    fn from_ratio(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }
}

/// Rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Real rational as a Gaussian rational.
pub fn real(q: Rational) -> ExactComplex {
    Complex::new(q, BigRational::zero())
}

/// Gaussian rational from numerator/denominator pairs.
pub fn cq(re: (i64, i64), im: (i64, i64)) -> ExactComplex {
    Complex::new(rat(re.0, re.1), rat(im.0, im.1))
}

/// Univariate polynomial `sum c_k X^k` with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    /// Build from ascending coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c X^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `lead * prod (X - r)`.
    pub fn from_roots(lead: T, roots: &[T]) -> Self {
        let mut p = Self::constant(lead);
        for r in roots {
            p = &p * &Self::new(vec![-r.clone(), T::one()]);
        }
        p
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative.
    pub fn derive(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn primitive(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            v.push(c.clone() / T::from_int(k as i64 + 1));
        }
        Self::new(v)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        Self::new(self.coeffs.iter().map(|a| a.clone() / l.clone()).collect())
    }

    /// Map coefficients into another field.
    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division `self = q * d + r`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); n - dd];
        let lead = d.leading();
        for k in (0..n - dd).rev() {
            let c = r[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dj.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Sylvester-matrix resultant.
    pub fn resultant(&self, other: &Self) -> T {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return T::zero(),
        };
        if m == 0 && n == 0 {
            return T::one();
        }
        let size = m + n;
        let mut a = vec![vec![T::zero(); size]; size];
        for row in 0..n {
            for k in 0..=m {
                a[row][row + k] = self.coeffs[m - k].clone();
            }
        }
        for row in 0..m {
            for k in 0..=n {
                a[n + row][row + k] = other.coeffs[n - k].clone();
            }
        }
        determinant(a)
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(p, p') / a_n`.
    pub fn discriminant(&self) -> Result<T> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let res = self.resultant(&self.derive());
        let sign = if (n * (n - 1) / 2) % 2 == 0 { T::one() } else { -T::one() };
        Ok(sign * res / self.leading())
    }

    /// Characteristic polynomial of multiplication by `f` on `K[X]/(self)`.
    ///
    /// Its roots are the values `f(b)` at the roots `b` of `self`, with multiplicity.
    pub fn mult_charpoly(&self, f: &Self) -> Result<Self> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        let f = f.divrem(self).1;
        let mut mat = vec![vec![T::zero(); d]; d];
        let mut col = f;
        let x = Self::monomial(T::one(), 1);
        for j in 0..d {
            for (i, row) in mat.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = (&col * &x).divrem(self).1;
        }
        Ok(charpoly(&mat))
    }
}

/// Determinant of a square matrix (fraction-free over the rationals).
pub fn determinant<T: Field>(a: Vec<Vec<T>>) -> T {
    T::det(a)
}

/// Determinant by Gaussian elimination (first nonzero pivot).
pub fn gauss_determinant<T: Field>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det = det * piv.clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / piv.clone();
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *x = x.clone() - y.clone() * f.clone();
            }
        }
    }
    det
}

/// Characteristic polynomial `det(X I - A)`, interpolated from `n + 1` determinants.
pub fn charpoly<T: Field>(a: &[Vec<T>]) -> Poly<T> {
    let n = a.len();
    let xs: Vec<T> = (0..=n).map(|k| T::from_int(k as i64)).collect();
    let mut dd: Vec<T> = xs
        .iter()
        .map(|x| {
            let m: Vec<Vec<T>> = a
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| if i == j { x.clone() - v.clone() } else { -v.clone() })
                        .collect()
                })
                .collect();
            T::det(m)
        })
        .collect();
    for level in 1..=n {
        for k in (level..=n).rev() {
            dd[k] = (dd[k].clone() - dd[k - 1].clone()) / (xs[k].clone() - xs[k - level].clone());
        }
    }
    let mut p = Poly::constant(dd[n].clone());
    for k in (0..n).rev() {
        let lin = Poly::new(vec![-xs[k].clone(), T::one()]);
        p = &(&p * &lin) + &Poly::constant(dd[k].clone());
    }
    p
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Exact polynomial to floating coefficients.
pub fn to_approx<R: crate::real::Real>(p: &Poly<ExactComplex>) -> Poly<Complex<R>>
where
    Complex<R>: Field,
{
    p.map(|c| Complex::new(R::from_rational(&c.re), R::from_rational(&c.im)))
}

/// `prod_{i<j} (r_i - r_j)^2`: the monic discriminant from the roots.
pub fn discriminant_from_roots<T: Field>(roots: &[T]) -> T {
    let mut acc = T::one();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = roots[i].clone() - roots[j].clone();
            acc = acc * d.clone() * d;
        }
    }
    acc
}

/// Elementary symmetric polynomial `e_k` of the given values; `k` at most `values.len()`.
pub fn elem_symmetric<T: Field>(values: &[T], k: usize) -> Result<T> {
    if k > values.len() {
        return Err(Error::IndexOutOfRange(alloc::format!("e_{k} of {} values", values.len())));
    }
    let mut e = vec![T::zero(); k + 1];
    e[0] = T::one();
    for v in values {
        for j in (1..=k).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    Ok(e[k].clone())
}
