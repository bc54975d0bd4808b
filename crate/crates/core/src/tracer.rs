//! Root continuation along a loop and braid-word extraction.
//!
//! Strands are ordered by the key `Re z + c (Im z + (Im z)^2)` with a small
//! `c`; on real configurations this is the real-axis order.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::Zero;
use twofloat::TwoFloat;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::loops::{builtin, LoopSpec};
use crate::poly::{discriminant_from_roots, Field, Poly};
use crate::real::{cabs, ccbrt, cconv, csqrt, exp_i_pi, Real};
use crate::roots::{min_separation, polish, roots};

/// Weight of the imaginary part in the projection key.
pub const KEY_TILT: f64 = 0.001_381_067_932_005_543;

/// Sign of `x_i` when the strand moving right passes below (smaller `Im`) the other one.
pub const SIGN_BELOW: i32 = 1;

/// Separation at which the trace is retried in double-double precision.
pub const RETRY_SEPARATION: f64 = 1e-5;

/// Precision selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// `f64` only.
    Double,
    /// Double-double only.
    DoubleDouble,
    /// `f64`, retried in double-double when strands come close.
    Auto,
}

/// Continuation parameters.
#[derive(Clone, Copy, Debug)]
pub struct TraceOptions {
    /// Largest parameter step.
    pub max_step: f64,
    /// Smallest parameter step before giving up.
    pub min_step: f64,
    /// Separation below which roots count as colliding.
    pub collide_floor: f64,
    /// Width of the bisection bracket for crossing times.
    pub bisect_tol: f64,
    /// Precision.
    pub precision: Precision,
    /// Keep every accepted step.
    pub record: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            max_step: 1.0 / 64.0,
            min_step: 1e-13,
            collide_floor: 1e-9,
            bisect_tol: 1e-12,
            precision: Precision::Auto,
            record: false,
        }
    }
}

/// A detected crossing.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingEvent {
    /// Refined crossing time.
    pub t: f64,
    /// Strand identities (left, right) before the swap.
    pub strands: (usize, usize),
    /// Position of the left strand in key order (0-based) before the swap.
    pub position: usize,
    /// `+1` or `-1`.
    pub sign: i32,
    /// `|Im|` difference at the crossing.
    pub im_gap: f64,
}

/// Accepted steps of a continuation.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct StrandPath {
    /// Accepted parameters.
    pub times: Vec<f64>,
    /// Root of each strand at each accepted parameter (`positions[step][strand]`).
    pub positions: Vec<Vec<Complex<f64>>>,
    /// Final key-order position of each strand.
    pub matching: Vec<usize>,
}

/// Outcome of [`trace`].
#[derive(Clone, Debug, PartialEq)]
pub struct TraceResult {
    /// Braid word in path order.
    pub word: BraidWord,
    /// Final position of each strand (0-based).
    pub permutation: Vec<usize>,
    /// Smallest root separation met at accepted steps.
    pub min_separation: f64,
    /// Accepted steps.
    pub steps: usize,
    /// Crossings in time order.
    pub crossings: Vec<CrossingEvent>,
    /// Recorded path when requested.
    pub path: Option<StrandPath>,
    /// Precision that produced the result.
    pub precision: &'static str,
}

fn key<R: Real>(z: Complex<R>) -> R {
    z.re + R::of(KEY_TILT) * (z.im + z.im * z.im)
}

fn key_order<R: Real>(z: &[Complex<R>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..z.len()).collect();
    idx.sort_by(|&a, &b| {
        key(z[a])
            .partial_cmp(&key(z[b]))
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(z[a].im.partial_cmp(&z[b].im).unwrap_or(core::cmp::Ordering::Equal))
    });
    idx
}

struct Tracer<'a, R: Real> {
    l: &'a LoopSpec,
    opts: TraceOptions,
    _r: core::marker::PhantomData<R>,
}

impl<R: Real> Tracer<'_, R>
where
    Complex<R>: Field,
{
    fn poly(&self, t: R) -> Poly<Complex<R>> {
        self.l.eval_at(t)
    }

    fn polish_at(&self, t: R, start: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        polish(&self.poly(t), start, 60)
    }

    fn run(&self) -> Result<TraceResult> {
        let n = self.l.n;
        if n == 0 {
            return Err(Error::Precondition(format!("cannot trace a loop of degree {n}")));
        }
        let p0 = self.poly(R::zero());
        if p0.degree() != Some(n) {
            return Err(Error::Precondition("leading coefficient vanishes at t = 0".into()));
        }
        let mut r0 = roots(&p0)?;
        let ord0 = key_order(&r0);
        r0 = ord0.iter().map(|&k| r0[k]).collect();
        let mut z = r0;
        let mut order: Vec<usize> = (0..n).collect();
        let mut word = BraidWord::identity(n);
        let mut crossings = Vec::new();
        let mut min_sep = min_separation(&z).as_f64();
        let mut path = StrandPath::default();
        if self.opts.record {
            path.times.push(0.0);
            path.positions.push(z.iter().map(|w| cconv(*w)).collect());
        }
        let breaks: Vec<f64> = self.l.breakpoints().iter().map(<f64 as Real>::from_rational).collect();
        let mut t = 0.0f64;
        let mut h = self.opts.max_step / 4.0;
        let mut steps = 0usize;
        let mut prev: Option<(Vec<Complex<R>>, f64)> = None;
        while t < 1.0 {
            let next_break = breaks.iter().copied().find(|&b| b > t + 1e-15).unwrap_or(1.0);
            let t1 = (t + h).min(next_break).min(1.0);
            let dt = t1 - t;
            let sep = min_separation(&z);
            if n >= 2 && sep.as_f64() < self.opts.collide_floor {
                return Err(Error::RootsCollide { t, separation: sep.as_f64() });
            }
            let start: Vec<Complex<R>> = match &prev {
                Some((zp, dtp)) if *dtp > 0.0 => {
                    let f = Complex::new(R::of(dt / dtp), R::zero());
                    z.iter().zip(zp).map(|(a, b)| *a + (*a - *b) * f).collect()
                }
                _ => z.clone(),
            };
            let reach = if n >= 2 { sep / R::of(3.0) } else { R::infinity() };
            let cand = self
                .polish_at(R::of(t1), &start)
                .ok()
                .filter(|w| w.iter().zip(&z).all(|(a, b)| cabs(*a - *b) < reach));
            let Some(w) = cand else {
                h = dt / 2.0;
                if h < self.opts.min_step {
                    return Err(Error::StepFloor { t });
                }
                continue;
            };
            let new_order = {
                let mut o = order.clone();
                o.sort_by(|&a, &b| {
                    key(w[a]).partial_cmp(&key(w[b])).unwrap_or(core::cmp::Ordering::Equal)
                });
                o
            };
            if new_order != order {
                let flips = flipped_pairs(&order, &new_order);
                if flips.len() > 1 && dt > 4.0 * self.opts.min_step {
                    h = dt / 2.0;
                    continue;
                }
                let mut events = Vec::new();
                for &(a, b) in &flips {
                    events.push(self.refine(t, t1, &z, &w, a, b)?);
                }
                events.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(core::cmp::Ordering::Equal));
                for (tc, a, b, gap) in events {
                    let pos = order.iter().position(|&s| s == a).expect("strand present");
                    if order.get(pos + 1) != Some(&b) {
                        return Err(Error::AmbiguousCrossing { t: tc });
                    }
                    order.swap(pos, pos + 1);
                    let below = gap < 0.0;
                    let sign = if below { SIGN_BELOW } else { -SIGN_BELOW };
                    word.push(sign * (pos as i32 + 1));
                    crossings.push(CrossingEvent { t: tc, strands: (a, b), position: pos, sign, im_gap: gap.abs() });
                }
                if order != new_order {
                    return Err(Error::AmbiguousCrossing { t: t1 });
                }
            }
            prev = Some((z, dt));
            z = w;
            t = t1;
            steps += 1;
            if n >= 2 {
                min_sep = min_sep.min(min_separation(&z).as_f64());
            }
            if self.opts.record {
                path.times.push(t);
                path.positions.push(z.iter().map(|w| cconv(*w)).collect());
            }
            h = (dt * 1.6).min(self.opts.max_step);
            if t1 == next_break {
                h = h.min(self.opts.max_step / 4.0);
                prev = None;
            }
        }
        let mut permutation = vec![0; n];
        for (p, &s) in order.iter().enumerate() {
            permutation[s] = p;
        }
        if self.opts.record {
            path.matching = permutation.clone();
        }
        Ok(TraceResult {
            word,
            permutation,
            min_separation: min_sep,
            steps,
            crossings,
            path: self.opts.record.then_some(path),
            precision: R::NAME,
        })
    }

    /// Bisect the sign change of `key(a) - key(b)`; returns `(t, a, b, Im a - Im b)`.
    fn refine(
        &self,
        t0: f64,
        t1: f64,
        z0: &[Complex<R>],
        z1: &[Complex<R>],
        a: usize,
        b: usize,
    ) -> Result<(f64, usize, usize, f64)> {
        let (mut ta, mut tb) = (t0, t1);
        let (mut za, mut zb) = (z0.to_vec(), z1.to_vec());
        let mut zm = za.clone();
        while tb - ta > self.opts.bisect_tol {
            let tm = 0.5 * (ta + tb);
            let start: Vec<Complex<R>> = za.iter().zip(&zb).map(|(x, y)| (*x + *y) * Complex::new(R::of(0.5), R::zero())).collect();
            zm = self.polish_at(R::of(tm), &start)?;
            let reach = min_separation(&za) / R::of(3.0);
            if zm.iter().zip(&za).any(|(x, y)| cabs(*x - *y) >= reach) {
                return Err(Error::AmbiguousCrossing { t: tm });
            }
            if key(zm[a]) < key(zm[b]) {
                ta = tm;
                za = zm.clone();
            } else {
                tb = tm;
                zb = zm.clone();
            }
        }
        let gap = (zm[a].im - zm[b].im).as_f64();
        let tc = 0.5 * (ta + tb);
        if gap.abs() < self.opts.collide_floor {
            return Err(Error::AmbiguousCrossing { t: tc });
        }
        Ok((tc, a, b, gap))
    }
}

/// Pairs `(a, b)` with `a` before `b` in `old` and after it in `new`.
fn flipped_pairs(old: &[usize], new: &[usize]) -> Vec<(usize, usize)> {
    let mut pos_new = vec![0; old.len()];
    for (p, &s) in new.iter().enumerate() {
        pos_new[s] = p;
    }
    let mut out = Vec::new();
    for i in 0..old.len() {
        for j in i + 1..old.len() {
            if pos_new[old[i]] > pos_new[old[j]] {
                out.push((old[i], old[j]));
            }
        }
    }
    out
}

/// Trace in a fixed precision.
pub fn trace_in<R: Real>(l: &LoopSpec, opts: TraceOptions) -> Result<TraceResult>
where
    Complex<R>: Field,
{
    Tracer::<R> { l, opts, _r: core::marker::PhantomData }.run()
}

/// Continue the roots along `l` and read off the braid word.
pub fn trace(l: &LoopSpec, opts: &TraceOptions) -> Result<TraceResult> {
    match opts.precision {
        Precision::Double => trace_in::<f64>(l, *opts),
        Precision::DoubleDouble => trace_in::<TwoFloat>(l, *opts),
        Precision::Auto => match trace_in::<f64>(l, *opts) {
            Ok(r) if r.min_separation >= RETRY_SEPARATION => Ok(r),
            first => match trace_in::<TwoFloat>(l, *opts) {
                Ok(r) => Ok(r),
                Err(e) => first.and(Err(e)),
            },
        },
    }
}

/// Whether the loop lifts to a loop of ordered roots, with the permutation.
pub fn trace_pure_check(l: &LoopSpec) -> Result<(bool, Vec<usize>)> {
    let r = trace(l, &TraceOptions::default())?;
    let pure = r.permutation.iter().enumerate().all(|(i, &p)| i == p);
    Ok((pure, r.permutation))
}

/// Smallest `|Re z - c|` over the recorded strands, zero when a strand crosses `Re = c` between steps.
pub fn min_distance_to_line(path: &StrandPath, c: f64) -> f64 {
    let mut m = f64::INFINITY;
    for (k, pos) in path.positions.iter().enumerate() {
        for (s, z) in pos.iter().enumerate() {
            let d = z.re - c;
            m = m.min(d.abs());
            if k > 0 {
                let prev = path.positions[k - 1][s].re - c;
                if prev * d < 0.0 {
                    m = 0.0;
                }
            }
        }
    }
    m
}

/// Deviations found by [`verify_h_discriminant`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HReport {
    /// Largest `|disc H(t,s) - 27 e^{6 pi i t}(4 - a(s)^2)|` on the grid.
    pub max_disc_deviation: f64,
    /// Largest coefficient deviation in the four boundary identities.
    pub max_boundary_deviation: f64,
    /// Grid points evaluated.
    pub points: usize,
}

/// `H(t, s)` built from the parameter loop `a`.
pub fn h_poly(a: Complex<f64>, t: f64) -> Poly<Complex<f64>> {
    let one = Complex::new(1.0, 0.0);
    let w = 1.0 - t + t * t;
    let mu = ccbrt(one + a * a * ((t - t * t) / (4.0 * w)));
    let nu = exp_i_pi(3.0 * t) / csqrt(Complex::new(w, 0.0));
    Poly::new(vec![a * nu, exp_i_pi(2.0 * t) * mu * -3.0, Complex::zero(), one])
}

fn coeff_dev(p: &Poly<Complex<f64>>, q: &Poly<Complex<f64>>) -> f64 {
    (0..4).map(|k| (p.coeff(k) - q.coeff(k)).norm()).fold(0.0, f64::max)
}

/// Check the discriminant identity of `H` on a `grid x grid` lattice, with the root-based
/// discriminant as oracle, and its four boundary identities.
pub fn verify_h_discriminant(grid: usize) -> Result<HReport> {
    let alpha = builtin("alpha3")?;
    let beta = builtin("beta3")?;
    let gamma = builtin("gamma3")?;
    let a = |s: f64| alpha.eval_at(s).coeff(0);
    let g = grid.max(2);
    let mut rep = HReport { max_disc_deviation: 0.0, max_boundary_deviation: 0.0, points: 0 };
    for i in 0..g {
        let t = i as f64 / (g - 1) as f64;
        for j in 0..g {
            let s = j as f64 / (g - 1) as f64;
            let av = a(s);
            let h = h_poly(av, t);
            let r = roots(&h)?;
            let disc = discriminant_from_roots(&r);
            let expect = exp_i_pi(6.0 * t) * (Complex::new(4.0, 0.0) - av * av) * 27.0;
            rep.max_disc_deviation = rep.max_disc_deviation.max((disc - expect).norm());
            rep.points += 1;
        }
        rep.max_boundary_deviation = rep
            .max_boundary_deviation
            .max(coeff_dev(&h_poly(a(0.0), t), &gamma.eval_at(t)))
            .max(coeff_dev(&h_poly(a(1.0), t), &gamma.eval_at(t)))
            .max(coeff_dev(&h_poly(a(t), 0.0), &alpha.eval_at(t)))
            .max(coeff_dev(&h_poly(a(t), 1.0), &beta.eval_at(t)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_equal, fmt_permutation};

    fn word(name: &str) -> BraidWord {
        trace(&builtin(name).unwrap(), &TraceOptions::default()).unwrap().word
    }

    fn eq(w: &BraidWord, s: &str) -> bool {
        braid_equal(w, &BraidWord::parse(w.n(), s).unwrap()).unwrap()
    }

    #[test]
    fn anchors() {
        let g = word("gamma3");
        assert!(eq(&g, "x1 x2 x1"), "{g}");
        let a = word("alpha3");
        assert!(eq(&a, "x2^-1"), "{a}");
        let b = word("beta3");
        assert!(eq(&b, "x1^-1"), "{b}");
    }

    #[test]
    fn purity() {
        let (pure, _) = trace_pure_check(&builtin("qc3_beta").unwrap()).unwrap();
        assert!(pure);
        let (pure, perm) = trace_pure_check(&builtin("qc3_gamma1").unwrap()).unwrap();
        assert!(!pure);
        assert_eq!(fmt_permutation(&perm), "(12)");
    }

    #[test]
    fn h_identity() {
        let rep = verify_h_discriminant(16).unwrap();
        assert!(rep.max_disc_deviation < 1e-9, "{rep:?}");
        assert!(rep.max_boundary_deviation < 1e-12, "{rep:?}");
        let h = h_poly(Complex::new(0.0, 0.0), 0.0);
        let d = discriminant_from_roots(&roots(&h).unwrap());
        assert!((d - Complex::new(108.0, 0.0)).norm() < 1e-12);
    }
}
