//! The hypersurfaces `S_ij`, membership in the restricted spaces and the
//! fibration helpers (critical values, section, plane shift, local
//! trivialisation, the `QF_3` chart and the Lagrange resolvent).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::poly::{int, rat, real, ExactComplex, Field, Poly, Rational};
use crate::real::Real;
use crate::roots::{exact_roots, min_separation, roots, roots_exact};

/// Coefficient table `A_0, ..., A_{n-3}` at level `n`.
///
/// `entries[d][k]` is the coefficient of `b_i^{d-k} b_j^k` in `A_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ATable {
    /// Level (degree of `P_n`).
    pub n: usize,
    /// Homogeneous two-variable entries, indexed by degree.
    pub entries: Vec<Vec<Rational>>,
}

/// Build the table at level `n >= 3`.
pub fn a_table(n: usize) -> Result<ATable> {
    if n < 3 {
        return Err(Error::IndexOutOfRange(format!("a_table needs n >= 3, got {n}")));
    }
    let mut entries = vec![vec![int(1)]];
    for level in 4..=n {
        let f = rat(-(level as i64), level as i64 - 3);
        let mut next: Vec<Vec<Rational>> =
            entries.iter().map(|e| e.iter().map(|c| c * &f).collect()).collect();
        let top = level - 3;
        next.push((0..=top).map(|k| int(((k + 1) * (level - 2 - k)) as i64)).collect());
        entries = next;
    }
    Ok(ATable { n, entries })
}

impl ATable {
    /// Evaluate `A_d(b_i, b_j)`.
    pub fn eval<T: Field>(&self, d: usize, bi: &T, bj: &T) -> T {
        let e = &self.entries[d];
        let mut acc = T::zero();
        for (k, c) in e.iter().enumerate() {
            let mut t = T::from_ratio(c);
            for _ in 0..d - k {
                t = t * bi.clone();
            }
            for _ in 0..k {
                t = t * bj.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// `A_d` as a polynomial in two of `nvars` variables.
    pub fn entry_mpoly(&self, d: usize, nvars: usize, i: usize, j: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (k, c) in self.entries[d].iter().enumerate() {
            let mut e = vec![0u32; nvars];
            e[i] += (d - k) as u32;
            e[j] += k as u32;
            p.add_term(e, c.clone());
        }
        p
    }
}

fn check_pair(m: usize, i: usize, j: usize) -> Result<()> {
    if i == j || i == 0 || j == 0 || i > m || j > m {
        return Err(Error::IndexOutOfRange(format!("pair ({i}, {j}) for m = {m}")));
    }
    Ok(())
}

/// `S_ij` for `m >= 3` base points (1-based `i != j`), as a polynomial in `z_1..z_m`.
pub fn sij_poly(m: usize, i: usize, j: usize) -> Result<MPoly> {
    if m < 3 {
        return Err(Error::IndexOutOfRange(format!("S_ij needs m >= 3, got {m}")));
    }
    check_pair(m, i, j)?;
    let table = a_table(m + 1)?;
    let others: Vec<usize> = (0..m).filter(|&k| k != i - 1 && k != j - 1).collect();
    let mut sigma = vec![MPoly::constant(m, int(1))];
    for &v in &others {
        let z = MPoly::var(m, v);
        let mut next = sigma.clone();
        next.push(MPoly::zero(m));
        for k in 1..next.len() {
            next[k] = &sigma.get(k).cloned().unwrap_or_else(|| MPoly::zero(m)) + &(&sigma[k - 1] * &z);
        }
        sigma = next;
    }
    let mut s = MPoly::zero(m);
    for (k, sk) in sigma.iter().enumerate() {
        let a = table.entry_mpoly(m - 2 - k, m, i - 1, j - 1);
        s = &s + &(&a * sk);
    }
    Ok(s)
}

/// Value of `S_ij` at a point (1-based indices, `m >= 3`).
pub fn eval_sij<T: Field>(table: &ATable, z: &[T], i: usize, j: usize) -> T {
    let m = z.len();
    let mut sigma = vec![T::zero(); m - 1];
    sigma[0] = T::one();
    for (k, v) in z.iter().enumerate() {
        if k == i - 1 || k == j - 1 {
            continue;
        }
        for d in (1..m - 1).rev() {
            sigma[d] = sigma[d].clone() + sigma[d - 1].clone() * v.clone();
        }
    }
    let pow = |b: &T| {
        let mut out = vec![T::one()];
        for _ in 0..m - 2 {
            let next = out[out.len() - 1].clone() * b.clone();
            out.push(next);
        }
        out
    };
    let (pi, pj) = (pow(&z[i - 1]), pow(&z[j - 1]));
    let mut acc = T::zero();
    for (k, sk) in sigma.iter().enumerate() {
        let d = m - 2 - k;
        let mut a = T::zero();
        for (l, c) in table.entries[d].iter().enumerate() {
            a = a + T::from_ratio(c) * pi[d - l].clone() * pj[l].clone();
        }
        acc = acc + a * sk.clone();
    }
    acc
}

/// Reason a point fails to lie in `QF_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QfWitness {
    /// `z_i = z_j` (1-based).
    Coincide(usize, usize),
    /// `S_ij(z) = 0` (1-based).
    Hypersurface(usize, usize),
}

/// Verdict of [`in_qf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfVerdict {
    /// Whether the point lies in `QF_m`.
    pub member: bool,
    /// The first failing condition in lexicographic pair order.
    pub witness: Option<QfWitness>,
}

/// Exact membership of an ordered point in `QF_m`.
pub fn in_qf(points: &[ExactComplex]) -> QfVerdict {
    let m = points.len();
    for i in 0..m {
        for j in i + 1..m {
            if points[i] == points[j] {
                return QfVerdict { member: false, witness: Some(QfWitness::Coincide(i + 1, j + 1)) };
            }
        }
    }
    if m >= 3 {
        let table = a_table(m + 1).expect("m >= 3");
        let re: Option<Vec<Rational>> = points.iter().map(as_real_rational).collect();
        for i in 1..=m {
            for j in i + 1..=m {
                let zero = match &re {
                    Some(r) => eval_sij(&table, r, i, j).is_zero(),
                    None => eval_sij(&table, points, i, j).is_zero(),
                };
                if zero {
                    return QfVerdict { member: false, witness: Some(QfWitness::Hypersurface(i, j)) };
                }
            }
        }
    }
    QfVerdict { member: true, witness: None }
}

/// Smallest `|z_i - z_j|` and smallest `|S_ij(z)|` of a floating point.
pub fn qf_margins<R: Real>(points: &[Complex<R>]) -> (R, R)
where
    Complex<R>: Field,
{
    let m = points.len();
    let sep = min_separation(points);
    let mut smin = R::infinity();
    if m >= 3 {
        let table = a_table(m + 1).expect("m >= 3");
        for i in 1..=m {
            for j in i + 1..=m {
                smin = smin.min(crate::real::cabs(eval_sij(&table, points, i, j)));
            }
        }
    }
    (sep, smin)
}

/// Reason a polynomial fails membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipWitness {
    /// The polynomial has a repeated root.
    RepeatedRoot,
    /// The derivative has a repeated root.
    DerivativeRepeatedRoot,
    /// Two critical values coincide; the pair of critical points (1-based,
    /// ascending real part) when it could be identified exactly.
    CriticalValuesCoincide(Option<(usize, usize)>),
}

/// Membership verdict for `C_n`, `QC_{n-1}` (derivative level) and `RC_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    /// Distinct roots.
    pub in_c: bool,
    /// The derivative lies in `QC_{n-1}`.
    pub in_qc: bool,
    /// `in_c && in_qc`.
    pub in_rc: bool,
    /// Failing condition (the first one found).
    pub witness: Option<MembershipWitness>,
}

/// Exact test that `q` lies in `QC`: simple roots with pairwise distinct critical values.
///
/// Rational roots are compared directly; otherwise the test goes through the
/// characteristic polynomial of multiplication by `primitive(q)` modulo `q`,
/// whose roots are the critical values.
pub fn qc_check(q: &Poly<ExactComplex>) -> Result<Option<MembershipWitness>> {
    let d = q.degree().ok_or(Error::ConstantPolynomial)?;
    if d <= 1 {
        return Ok(None);
    }
    let prim = q.primitive();
    if let Some(b) = exact_roots(q) {
        let v: Vec<ExactComplex> = b.iter().map(|x| prim.eval(x)).collect();
        let pair = (0..v.len())
            .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
            .find(|&(i, j)| v[i] == v[j]);
        return Ok(pair.map(|(i, j)| MembershipWitness::CriticalValuesCoincide(Some((i + 1, j + 1)))));
    }
    let re: Option<Vec<Rational>> = q.coeffs().iter().map(as_real_rational).collect();
    match re {
        Some(c) => qc_eliminate(&Poly::new(c)),
        None => qc_eliminate(q),
    }
}

fn qc_eliminate<T: Field>(q: &Poly<T>) -> Result<Option<MembershipWitness>> {
    if q.discriminant()?.is_zero() {
        return Ok(Some(MembershipWitness::DerivativeRepeatedRoot));
    }
    let cp = q.monic().mult_charpoly(&q.primitive())?;
    if cp.discriminant()?.is_zero() {
        return Ok(Some(MembershipWitness::CriticalValuesCoincide(None)));
    }
    Ok(None)
}

/// Exact membership of a polynomial with Gaussian-rational coefficients.
pub fn membership(p: &Poly<ExactComplex>) -> Result<MembershipVerdict> {
    match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let p = p.monic();
    let in_c = !p.discriminant()?.is_zero();
    let dq = p.derive();
    let qc = if dq.degree() == Some(0) { None } else { qc_check(&dq)? };
    let in_qc = qc.is_none();
    let witness = if !in_c { Some(MembershipWitness::RepeatedRoot) } else { qc };
    Ok(MembershipVerdict { in_c, in_qc, in_rc: in_c && in_qc, witness })
}

/// Floating membership: a condition fails when its margin is at most `tol`.
pub fn membership_approx(p: &Poly<Complex<f64>>, tol: f64) -> Result<MembershipVerdict> {
    let n = p.degree().ok_or(Error::ConstantPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = roots(p)?;
    let in_c = n < 2 || min_separation(&r) > tol;
    let dq = p.derive();
    let mut qc = None;
    if n >= 3 {
        let b = roots(&dq)?;
        if min_separation(&b) <= tol {
            qc = Some(MembershipWitness::DerivativeRepeatedRoot);
        } else {
            let prim = dq.primitive();
            let v: Vec<Complex<f64>> = b.iter().map(|x| prim.eval(x)).collect();
            'outer: for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if (v[i] - v[j]).norm() <= tol {
                        qc = Some(MembershipWitness::CriticalValuesCoincide(Some((i + 1, j + 1))));
                        break 'outer;
                    }
                }
            }
        }
    }
    let in_qc = qc.is_none();
    let witness = if !in_c { Some(MembershipWitness::RepeatedRoot) } else { qc };
    Ok(MembershipVerdict { in_c, in_qc, in_rc: in_c && in_qc, witness })
}

/// Critical values `P(b_k)` of `P = primitive(q)`, ordered like the roots of `q`.
#[derive(Clone, Debug, PartialEq)]
pub enum CriticalValues {
    /// All roots of `q` are Gaussian rationals.
    Exact(Vec<ExactComplex>),
    /// Floating values.
    Approx(Vec<Complex<f64>>),
}

impl CriticalValues {
    /// Floating view.
    pub fn to_approx(&self) -> Vec<Complex<f64>> {
        match self {
            CriticalValues::Exact(v) => v
                .iter()
                .map(|z| Complex::new(<f64 as Real>::from_rational(&z.re), <f64 as Real>::from_rational(&z.im)))
                .collect(),
            CriticalValues::Approx(v) => v.clone(),
        }
    }

    /// Number of values.
    pub fn len(&self) -> usize {
        match self {
            CriticalValues::Exact(v) => v.len(),
            CriticalValues::Approx(v) => v.len(),
        }
    }

    /// Whether there are no values.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Critical values of `primitive(q)`; `q` must have simple roots.
pub fn critical_values(q: &Poly<ExactComplex>) -> Result<CriticalValues> {
    let d = q.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Ok(CriticalValues::Exact(Vec::new()));
    }
    if q.discriminant()?.is_zero() {
        return Err(Error::RepeatedRoots);
    }
    let prim = q.primitive();
    if let Some(b) = exact_roots(q) {
        return Ok(CriticalValues::Exact(b.iter().map(|x| prim.eval(x)).collect()));
    }
    let b = roots_exact::<f64>(q)?;
    let pf = crate::poly::to_approx::<f64>(&prim);
    Ok(CriticalValues::Approx(b.iter().map(|x| pf.eval(x)).collect()))
}

fn rational_abs(z: &ExactComplex) -> Option<Rational> {
    if z.im.is_zero() {
        Some(z.re.abs())
    } else if z.re.is_zero() {
        Some(z.im.abs())
    } else {
        None
    }
}

/// `primitive(q) - (1 + sum |P(b_k)|)`, a point of `RC` over `q`.
pub fn section_point(q: &Poly<ExactComplex>) -> Result<Poly<ExactComplex>> {
    if let Some(w) = qc_check(q)? {
        return Err(Error::NotInSpace(format!("section needs q in QC ({w:?})")));
    }
    let cv = critical_values(q)?;
    let exact_sum = match &cv {
        CriticalValues::Exact(v) => v.iter().map(rational_abs).try_fold(int(0), |a, x| x.map(|x| a + x)),
        CriticalValues::Approx(_) => None,
    };
    let sum = match exact_sum {
        Some(s) => s,
        None => {
            let s: f64 = cv.to_approx().iter().map(|z| z.norm()).sum();
            BigRational::from_float(s).ok_or_else(|| Error::Precondition("non-finite critical value".into()))?
        }
    };
    let gamma = real(int(1) + sum);
    Ok(&q.primitive() - &Poly::constant(gamma))
}

/// The shift of the plane moving `anchors0[i]` to `anchors[i]` inside the
/// `eps`-disks and fixing everything outside them.
pub fn plane_shift(
    anchors0: &[Complex<f64>],
    anchors: &[Complex<f64>],
    eps: f64,
    z: Complex<f64>,
) -> Result<Complex<f64>> {
    if anchors0.len() != anchors.len() {
        return Err(Error::Precondition("anchor lists differ in length".into()));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    for (a0, a) in anchors0.iter().zip(anchors) {
        if (a - a0).norm() >= eps {
            return Err(Error::Precondition("anchor moved by eps or more".into()));
        }
    }
    if anchors0.len() >= 2 && min_separation(anchors0) <= 3.0 * eps {
        return Err(Error::Precondition("anchors closer than 3 eps".into()));
    }
    for (a0, a) in anchors0.iter().zip(anchors) {
        let r = (z - a0).norm();
        if r < eps {
            return Ok(z + (a - a0) * (1.0 - r / eps));
        }
    }
    Ok(z)
}

/// Local trivialisation of the fibration around a base point `q0`.
#[derive(Clone, Debug)]
pub struct Trivialization {
    q0: Poly<ExactComplex>,
    beta0: Vec<Complex<f64>>,
    cv0: Vec<Complex<f64>>,
    /// Root-drift radius.
    pub delta1: f64,
    /// Critical-value disk radius.
    pub eps: f64,
    /// Coefficient radius keeping critical values within `eps`.
    pub delta2: f64,
    /// Coefficient radius keeping roots within `delta1`.
    pub delta3: f64,
}

const RING_SAMPLES: usize = 512;

fn coeff_bound(c: &[Complex<f64>], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

impl Trivialization {
    /// Compute the neighbourhood constants at `q0`, which must lie in `QC`.
    pub fn new(q0: &Poly<ExactComplex>) -> Result<Self> {
        let n = q0.degree().ok_or(Error::ConstantPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if let Some(w) = qc_check(q0)? {
            return Err(Error::NotInSpace(format!("base point not in QC ({w:?})")));
        }
        let beta0 = roots_exact::<f64>(q0)?;
        let cv0 = critical_values(q0)?.to_approx();
        let eps = if cv0.len() >= 2 { (min_separation(&cv0) / 3.0).min(1.0) * 0.99 } else { 1.0 };
        let radius = 2.0 + beta0.iter().map(|b| b.norm()).fold(0.0, f64::max);
        let qf = crate::poly::to_approx::<f64>(q0);
        let lip = coeff_bound(qf.coeffs(), radius);
        let sep = if beta0.len() >= 2 { min_separation(&beta0) / 3.0 } else { 1.0 };
        let delta1 = sep.min(1.0).min(eps / (2.0 * lip)) * 0.99;
        let prim_bound: f64 = (0..=n).map(|j| libm::pow(radius, j as f64 + 1.0) / (j as f64 + 1.0)).sum();
        let delta2 = 0.99 * (eps / 2.0) / prim_bound;
        let mut ring_min = f64::INFINITY;
        for b in &beta0 {
            for k in 0..RING_SAMPLES {
                let (c, s) = (2.0 * k as f64 / RING_SAMPLES as f64).cos_sin_pi();
                let z = b + Complex::new(c, s) * delta1;
                let pow_sum: f64 = (0..=n).map(|j| libm::pow(z.norm(), j as f64)).sum();
                ring_min = ring_min.min(qf.eval(&z).norm() / pow_sum);
            }
        }
        let delta3 = 0.5 * ring_min;
        Ok(Trivialization { q0: q0.clone(), beta0, cv0, delta1, eps, delta2, delta3 })
    }

    /// Neighbourhood radius in the coefficient max-norm.
    pub fn delta(&self) -> f64 {
        self.delta2.min(self.delta3)
    }

    /// Critical values at the base point.
    pub fn base_critical_values(&self) -> &[Complex<f64>] {
        &self.cv0
    }

    /// `primitive(q) - shift(c)`: the point of the fiber over `q` corresponding to `c`.
    pub fn apply(&self, q: &Poly<ExactComplex>, c: &ExactComplex) -> Result<Poly<ExactComplex>> {
        let n = self.q0.degree().unwrap_or(0);
        if q.degree() != Some(n) {
            return Err(Error::Trivialization("q must have the degree of q0".into()));
        }
        let mut dist = 0.0f64;
        for k in 0..=n {
            let d = q.coeff(k) - self.q0.coeff(k);
            let d = Complex::new(<f64 as Real>::from_rational(&d.re), <f64 as Real>::from_rational(&d.im));
            dist = dist.max(d.norm());
        }
        if dist >= self.delta3 {
            return Err(Error::Trivialization(format!(
                "delta3 (root drift): |q - q0| = {dist:e} >= {:e}",
                self.delta3
            )));
        }
        if dist >= self.delta2 {
            return Err(Error::Trivialization(format!(
                "delta2 (critical value drift): |q - q0| = {dist:e} >= {:e}",
                self.delta2
            )));
        }
        let cf = Complex::new(<f64 as Real>::from_rational(&c.re), <f64 as Real>::from_rational(&c.im));
        if self.cv0.iter().any(|v| (v - cf).norm() == 0.0) {
            return Err(Error::NotInSpace("c is a critical value of the base point".into()));
        }
        let qf = crate::poly::to_approx::<f64>(q);
        let beta = roots(&qf)?;
        let prim = qf.primitive();
        let mut cv = Vec::with_capacity(n);
        for b0 in &self.beta0 {
            let b = beta
                .iter()
                .min_by(|x, y| (*x - b0).norm().total_cmp(&(*y - b0).norm()))
                .ok_or(Error::ConstantPolynomial)?;
            if (b - b0).norm() >= self.delta1 {
                return Err(Error::Trivialization("delta1 (root drift) exceeded".into()));
            }
            cv.push(prim.eval(b));
        }
        let moved = self.cv0.iter().any(|v| (v - cf).norm() < self.eps);
        let shift = if moved && *q != self.q0 {
            let z = plane_shift(&self.cv0, &cv, self.eps, cf)
                .map_err(|e| Error::Trivialization(format!("eps (critical value disks): {e}")))?;
            Complex::new(
                BigRational::from_float(z.re).ok_or(Error::Precondition("non-finite shift".into()))?,
                BigRational::from_float(z.im).ok_or(Error::Precondition("non-finite shift".into()))?,
            )
        } else {
            c.clone()
        };
        Ok(&q.primitive() - &Poly::constant(shift))
    }
}

/// One-shot form of [`Trivialization::apply`].
pub fn trivialize(q0: &Poly<ExactComplex>, q: &Poly<ExactComplex>, c: &ExactComplex) -> Result<Poly<ExactComplex>> {
    Trivialization::new(q0)?.apply(q, c)
}

/// Ratios excluded by the `QF_3` chart.
pub fn qf3_forbidden_ratios() -> [Rational; 5] {
    [int(1), int(0), rat(-1, 2), int(-1), int(-2)]
}

/// The chart `(z1, z2, z3) -> (X/Y, Y, Z)` with
/// `(X, Y, Z) = (z2 + z3 - 2 z1, z1 + z3 - 2 z2, z1 + z2 + z3)`.
pub fn qf3_chart(z: &[ExactComplex; 3]) -> Result<[ExactComplex; 3]> {
    let two = real(int(2));
    let x = z[1].clone() + z[2].clone() - two.clone() * z[0].clone();
    let y = z[0].clone() + z[2].clone() - two * z[1].clone();
    let s = z[0].clone() + z[1].clone() + z[2].clone();
    if y.is_zero() {
        return Err(Error::ChartUndefined("not in QF_3: Y = 0".into()));
    }
    let ratio = x / y.clone();
    check_ratio(&ratio)?;
    Ok([ratio, y, s])
}

fn check_ratio(ratio: &ExactComplex) -> Result<()> {
    if ratio.im.is_zero() && qf3_forbidden_ratios().contains(&ratio.re) {
        return Err(Error::ChartUndefined(format!(
            "not in QF_3: ratio {} is forbidden",
            crate::format::fmt_complex(ratio)
        )));
    }
    Ok(())
}

/// Inverse of [`qf3_chart`].
pub fn qf3_chart_inverse(c: &[ExactComplex; 3]) -> Result<[ExactComplex; 3]> {
    if c[1].is_zero() {
        return Err(Error::ChartUndefined("not in QF_3: Y = 0".into()));
    }
    check_ratio(&c[0])?;
    let three = real(int(3));
    let x = c[0].clone() * c[1].clone();
    let z1 = (c[2].clone() - x) / three.clone();
    let z2 = (c[2].clone() - c[1].clone()) / three;
    let z3 = c[2].clone() - z1.clone() - z2.clone();
    Ok([z1, z2, z3])
}

/// `((z1+z2)(z3+z4), (z1+z3)(z2+z4), (z1+z4)(z2+z3))`.
pub fn lagrange_resolvent<T: Field>(z: &[T; 4]) -> [T; 3] {
    let s = |a: usize, b: usize| z[a].clone() + z[b].clone();
    [s(0, 1) * s(2, 3), s(0, 2) * s(1, 3), s(0, 3) * s(1, 2)]
}

/// Rational value of a real rational (or `None`).
pub fn as_real_rational(z: &ExactComplex) -> Option<Rational> {
    z.im.is_zero().then(|| z.re.clone())
}

/// Nearest `f64` of a rational (helper for reports).
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Format a verdict witness.
pub fn describe_witness(w: &MembershipWitness) -> String {
    match w {
        MembershipWitness::RepeatedRoot => String::from("repeated root"),
        MembershipWitness::DerivativeRepeatedRoot => String::from("derivative has a repeated root"),
        MembershipWitness::CriticalValuesCoincide(Some((i, j))) => {
            format!("critical values {i} and {j} coincide")
        }
        MembershipWitness::CriticalValuesCoincide(None) => String::from("two critical values coincide"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_poly;

    fn z(v: &[i64]) -> Vec<ExactComplex> {
        v.iter().map(|&x| real(int(x))).collect()
    }

    #[test]
    fn table_levels() {
        assert_eq!(a_table(3).unwrap().entries, vec![vec![int(1)]]);
        let t4 = a_table(4).unwrap();
        assert_eq!(t4.entries, vec![vec![int(-4)], vec![int(2), int(2)]]);
        let t6 = a_table(6).unwrap();
        assert_eq!(t6.entries[3], vec![int(4), int(6), int(6), int(4)]);
        assert_eq!(t6.entries[2], vec![int(-6), int(-8), int(-6)]);
        assert_eq!(t6.entries[1], vec![int(10), int(10)]);
        assert_eq!(t6.entries[0], vec![int(-20)]);
        assert!(a_table(2).is_err());
    }

    #[test]
    fn qf_examples() {
        assert!(in_qf(&z(&[0, 1, 3])).member);
        let v = in_qf(&z(&[0, 1, 2]));
        assert_eq!(v.witness, Some(QfWitness::Hypersurface(1, 3)));
        let v = in_qf(&z(&[0, 0, 1]));
        assert_eq!(v.witness, Some(QfWitness::Coincide(1, 2)));
    }

    #[test]
    fn membership_examples() {
        let v = membership(&parse_poly("[0, -3, 0, 1]").unwrap()).unwrap();
        assert!(v.in_rc);
        let v = membership(&parse_poly("[0, 0, 0, 1]").unwrap()).unwrap();
        assert!(!v.in_c && !v.in_rc);
        let v = membership(&parse_poly("[-1/3, 0, 6, -16/3, 1]").unwrap()).unwrap();
        assert!(v.in_rc);
        let v = membership(&parse_poly("[0, 0, 6, -16/3, 1]").unwrap()).unwrap();
        assert!(!v.in_c && v.in_qc);
    }

    #[test]
    fn critical_value_examples() {
        let cv = critical_values(&parse_poly("[0, 12, -16, 4]").unwrap()).unwrap();
        assert_eq!(cv, CriticalValues::Exact(vec![real(int(0)), real(rat(5, 3)), real(int(-9))]));
        let cv = critical_values(&parse_poly("[-3, 0, 3]").unwrap()).unwrap();
        assert_eq!(cv, CriticalValues::Exact(vec![real(int(2)), real(int(-2))]));
        let cv = critical_values(&parse_poly("[0, 2]").unwrap()).unwrap();
        assert_eq!(cv, CriticalValues::Exact(vec![real(int(0))]));
        assert_eq!(critical_values(&parse_poly("[1, 2, 1]").unwrap()), Err(Error::RepeatedRoots));
    }

    #[test]
    fn section_examples() {
        let s = section_point(&parse_poly("[-3, 0, 3]").unwrap()).unwrap();
        assert_eq!(s, parse_poly("[-5, -3, 0, 1]").unwrap());
        let s = section_point(&parse_poly("[0, 2]").unwrap()).unwrap();
        assert_eq!(s, parse_poly("[-1, 0, 1]").unwrap());
    }

    #[test]
    fn chart_examples() {
        let c = qf3_chart(&[real(int(0)), real(int(1)), real(int(3))]).unwrap();
        assert_eq!(c, [real(int(4)), real(int(1)), real(int(4))]);
        assert_eq!(qf3_chart_inverse(&c).unwrap(), [real(int(0)), real(int(1)), real(int(3))]);
        assert!(qf3_chart(&[real(int(0)), real(int(1)), real(int(2))]).is_err());
    }

    #[test]
    fn resolvent_examples() {
        let w = lagrange_resolvent(&[int(0), int(1), int(2), int(3)]);
        assert_eq!(w, [int(5), int(8), int(9)]);
        let w = lagrange_resolvent(&[int(0), int(1), int(-1), int(2)]);
        assert_eq!(w, [int(1), int(-3), int(0)]);
    }

    #[test]
    fn shift_fixes_outside() {
        let a0 = [Complex::new(0.0, 0.0), Complex::new(5.0, 0.0)];
        let a = [Complex::new(0.1, 0.0), Complex::new(5.0, -0.2)];
        assert_eq!(plane_shift(&a0, &a, 1.0, a0[0]).unwrap(), a[0]);
        let far = Complex::new(2.0, 2.0);
        assert_eq!(plane_shift(&a0, &a, 1.0, far).unwrap(), far);
        assert!(plane_shift(&a0, &a, 0.1, far).is_err());
    }
}
