//! Reproduction checks, grouped by acceptance criterion.

use std::error::Error as StdError;
use std::time::{Duration, Instant};

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rconf_core::braid::{braid_equal, BraidWord, GroupSpec};
use rconf_core::loops::{builtin, builtin_names, LoopSpec};
use rconf_core::mpoly::MPoly;
use rconf_core::poly::{int, rat, real, Rational};
use rconf_core::realfib::{counterexample, ev0, fiber_inverse, in_qc_real, minmax, minmax_exact, Upper};
use rconf_core::restricted::{
    a_table, eval_sij, in_qf, membership_approx, qc_check, rational_to_f64, sij_poly,
};
use rconf_core::roots::{discriminant_oracle, roots, roots_exact};
use rconf_core::schreier::{
    parse_cycles, subgroup_presentation, tietze_simplify, validate_transversal, FiniteQuotient, Presentation,
    SubgroupPresentation,
};
use rconf_core::tracer::{min_distance_to_line, trace, verify_h_discriminant, Precision, TraceOptions};
use rconf_core::{ExactComplex, Poly};
use twofloat::TwoFloat;

use crate::report::{CheckReport, ReproReport};

type Res = Result<Outcome, Box<dyn StdError>>;
type Run = Box<dyn Fn(&Ctx) -> Res + Send + Sync>;

/// Settings shared by every check.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    /// Seed of the randomized checks.
    pub seed: u64,
    /// Tracing precision.
    pub precision: Precision,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { seed: DEFAULT_SEED, precision: Precision::Auto }
    }
}

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    fn opts(&self) -> TraceOptions {
        TraceOptions { precision: self.precision, ..TraceOptions::default() }
    }

    fn word(&self, name: &str) -> Result<BraidWord, Box<dyn StdError>> {
        Ok(trace(&builtin(name)?, &self.opts())?.word)
    }
}

/// Name of a precision setting.
pub fn precision_name(p: Precision) -> &'static str {
    match p {
        Precision::Double => "double",
        Precision::DoubleDouble => "double-double",
        Precision::Auto => "auto",
    }
}

/// Expected and computed values of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Expected value.
    pub expected: String,
    /// Computed value.
    pub computed: String,
    /// Verdict.
    pub pass: bool,
}

impl Outcome {
    fn new(expected: impl Into<String>, computed: impl Into<String>, pass: bool) -> Self {
        Outcome { expected: expected.into(), computed: computed.into(), pass }
    }

    fn count(label: &str, good: usize, total: usize) -> Self {
        Outcome::new(format!("{total}/{total} {label}"), format!("{good}/{total} {label}"), good == total)
    }
}

/// One named check.
pub struct Check {
    /// Dotted name.
    pub name: String,
    /// Acceptance criterion (1-based).
    pub criterion: u8,
    /// Statement being checked.
    pub anchor: String,
    run: Run,
}

impl Check {
    fn new(name: impl Into<String>, criterion: u8, anchor: impl Into<String>, run: Run) -> Self {
        Check { name: name.into(), criterion, anchor: anchor.into(), run }
    }

    /// Run the check; errors become failures.
    pub fn run(&self, ctx: &Ctx) -> (CheckReport, Duration) {
        let start = Instant::now();
        let out = match (self.run)(ctx) {
            Ok(o) => o,
            Err(e) => Outcome::new("no error", format!("error: {e}"), false),
        };
        let elapsed = start.elapsed();
        let rep = CheckReport {
            name: self.name.clone(),
            criterion: self.criterion,
            anchor: self.anchor.clone(),
            expected: out.expected,
            computed: out.computed,
            pass: out.pass,
            elapsed_ms: None,
        };
        (rep, elapsed)
    }
}

/// An acceptance criterion with its time budget.
#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    /// Number (1-based).
    pub id: u8,
    /// Short title.
    pub title: &'static str,
    /// Budget for all checks of the criterion.
    pub limit: Duration,
    /// Budget for each single check, when one is stated.
    pub per_check: Option<Duration>,
}

/// The twelve acceptance criteria.
pub fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    let c = |id, title, limit, per_check| Criterion { id, title, limit, per_check };
    vec![
        c(1, "difference of critical values matches the recurrence expansion", s(10), None),
        c(2, "S_ij polynomials for base sizes 3, 4, 5", s(1), None),
        c(3, "braid anchors of gamma, alpha, beta", s(6), Some(s(2))),
        c(4, "braid images of the QC3 and RC4 generators", s(35), Some(s(5))),
        c(5, "images of the QP3 generators", s(30), None),
        c(6, "relations of the explicit lifts", s(10), None),
        c(7, "Reidemeister-Schreier presentation of RP3", s(5), None),
        c(8, "discriminant identity of the homotopy H", s(2), None),
        c(9, "separating lines along the RC4 loops", s(10), None),
        c(10, "real min-max fibration", s(20), None),
        c(11, "memberships of the two closing examples", s(1), None),
        c(12, "property suites", s(60), None),
    ]
}

fn boxed<F>(f: F) -> Run
where
    F: Fn(&Ctx) -> Res + Send + Sync + 'static,
{
    Box::new(f)
}

fn braid_check(expected_text: &str, expected: &BraidWord, computed: &BraidWord) -> Res {
    let pass = braid_equal(expected, computed)?;
    Ok(Outcome::new(format!("Artin-equal to {expected_text}"), computed.to_string(), pass))
}

fn parse_word(n: usize, text: &str) -> Result<BraidWord, Box<dyn StdError>> {
    Ok(BraidWord::parse(n, text)?)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-40..=40), rng.gen_range(1..=9))
}

fn distinct_rationals(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = Vec::with_capacity(len);
    while v.len() < len {
        let x = random_rational(rng);
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v
}

fn reals(v: &[Rational]) -> Vec<ExactComplex> {
    v.iter().cloned().map(real).collect()
}

fn trace_checks(out: &mut Vec<Check>) {
    let anchors = [
        ("gamma3", "x1 x2 x1", "gamma traces to the Garside braid"),
        ("alpha3", "x2^-1", "alpha traces to x2^-1"),
        ("beta3", "x1^-1", "beta traces to x1^-1"),
    ];
    for (name, word, anchor) in anchors {
        out.push(Check::new(
            format!("trace.{name}"),
            3,
            anchor,
            boxed(move |ctx| braid_check(word, &parse_word(3, word)?, &ctx.word(name)?)),
        ));
    }
    let images = [
        ("qc3_gamma1", 3, "x1"),
        ("qc3_gamma2", 3, "x2"),
        ("rc4_delta1", 4, "x1"),
        ("rc4_delta2", 4, "x2"),
        ("rc4_delta3", 4, "x3"),
        ("rc4_Gamma1", 4, "x2"),
        ("rc4_Gamma2", 4, "x3"),
    ];
    for (name, n, word) in images {
        out.push(Check::new(
            format!("trace.{name}"),
            4,
            format!("{name} maps to the generator {word}"),
            boxed(move |ctx| braid_check(word, &parse_word(n, word)?, &ctx.word(name)?)),
        ));
    }
}

fn qp_checks(out: &mut Vec<Check>) {
    let rows = [
        ("qc3_alpha_1", "gamma1^2", "x1 x1"),
        ("qc3_alpha_0", "(gamma1 gamma2)^2 gamma1^-1 gamma2^-1", "x1 x2 x1 x2 x1^-1 x2^-1"),
        ("qc3_alpha_mhalf", "(gamma1 gamma2)^2 gamma1 gamma2^-1", "x1 x2 x1 x2 x1 x2^-1"),
        ("qc3_alpha_m1", "gamma1 gamma2^2 gamma1", "x1 x2 x2 x1"),
        ("qc3_alpha_m2", "Delta3^2", "x1 x2 x1 x1 x2 x1"),
        ("qc3_beta", "(gamma1 gamma2)^3", "x1 x2 x1 x2 x1 x2"),
    ];
    for (name, gamma, word) in rows {
        out.push(Check::new(
            format!("qp.{name}"),
            5,
            format!("{name} maps to {gamma}"),
            boxed(move |ctx| braid_check(&format!("{word} ({gamma})"), &parse_word(3, word)?, &ctx.word(name)?)),
        ));
    }
    out.push(Check::new(
        "relation.g2a1g2inv",
        6,
        "the lift of gamma2 alpha_1 gamma2^-1 equals alpha_0^-1 alpha_-1/2",
        boxed(|ctx| {
            let expect = ctx.word("qc3_alpha_0")?.inverse().concat(&ctx.word("qc3_alpha_mhalf")?)?;
            braid_check("trace(qc3_alpha_0)^-1 trace(qc3_alpha_mhalf)", &expect, &ctx.word("lift_g2a1g2inv")?)
        }),
    ));
    out.push(Check::new(
        "relation.commutator",
        6,
        "the commutator lift equals alpha_-2 beta^-1",
        boxed(|ctx| {
            let expect = ctx.word("qc3_alpha_m2")?.concat(&ctx.word("qc3_beta")?.inverse())?;
            braid_check("trace(qc3_alpha_m2) trace(qc3_beta)^-1", &expect, &ctx.word("lift_commutator")?)
        }),
    ));
}

fn rp3() -> Result<(Presentation, SubgroupPresentation), Box<dyn StdError>> {
    let p = Presentation::rb3();
    let im = |s| parse_cycles(s, 3);
    let q = FiniteQuotient::new(&p, 3, vec![im("(23)")?, im("(12)")?, im("(13)")?])?;
    let given = ["", "alpha", "beta", "gamma", "alpha beta", "beta alpha"];
    let reps = given.iter().map(|s| p.parse_word(s)).collect::<Result<Vec<_>, _>>()?;
    let t = validate_transversal(&q, reps)?;
    let sp = subgroup_presentation(&p, &q, &t)?;
    Ok((p, tietze_simplify(&sp, 100, &[])))
}

const RP3_GENERATORS: [&str; 5] = ["s[alpha|alpha]", "s[alpha|gamma]", "s[beta|beta]", "s[beta|gamma]", "s[gamma|gamma]"];

fn schreier_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "schreier.rp3.generators",
        7,
        "five surviving Schreier generators",
        boxed(|_| {
            let (_, s) = rp3()?;
            let got = s.presentation.generators.join(", ");
            Ok(Outcome::new(RP3_GENERATORS.join(", "), got, s.presentation.generators == RP3_GENERATORS && !s.partial))
        }),
    ));
    out.push(Check::new(
        "schreier.rp3.relators",
        7,
        "four relators, each a commutator with s[gamma|gamma]",
        boxed(|_| {
            let (_, s) = rp3()?;
            let pres = &s.presentation;
            let c = s.generator("s[gamma|gamma]").map(|g| g as i32 + 1);
            let mut partners: Vec<i32> = Vec::new();
            let commutators = c.is_some_and(|c| {
                pres.relators.iter().all(|r| {
                    let others: Vec<i32> = r.iter().copied().filter(|x| x.abs() != c).collect();
                    let ok = r.len() == 4
                        && others.len() == 2
                        && others[0] == -others[1]
                        && r.iter().filter(|&&x| x == c).count() == 1
                        && r.iter().filter(|&&x| x == -c).count() == 1;
                    if ok {
                        partners.push(others[0].abs());
                    }
                    ok
                })
            });
            partners.sort_unstable();
            let text: Vec<String> = pres.relators.iter().map(|r| pres.word_text(r)).collect();
            let pass = commutators && pres.relators.len() == 4 && partners == [1, 2, 3, 4];
            Ok(Outcome::new("[s, s[gamma|gamma]] for the other four generators", text.join("; "), pass))
        }),
    ));
    out.push(Check::new(
        "schreier.rp3.table",
        7,
        "generator expansions alpha^2, alpha gamma alpha^-1 beta^-1, beta^2, beta gamma beta^-1 alpha^-1, gamma^2",
        boxed(|_| {
            let (p, s) = rp3()?;
            let table = ["alpha alpha", "alpha gamma alpha^-1 beta^-1", "beta beta", "beta gamma beta^-1 alpha^-1", "gamma gamma"];
            let g = GroupSpec::preset("RB3")?;
            let conv = |w: &[i32]| -> Vec<(usize, i32)> { w.iter().map(|&x| (x.unsigned_abs() as usize - 1, x.signum())).collect() };
            let mut good = 0;
            let mut got = Vec::new();
            for (k, expect) in table.iter().enumerate() {
                let Some(d) = s.definitions.get(k) else { break };
                got.push(p.word_text(d));
                if g.decide_equal(&conv(d), &conv(&p.parse_word(expect)?))? {
                    good += 1;
                }
            }
            Ok(Outcome::new(table.join("; "), got.join("; "), good == table.len()))
        }),
    ));
}

fn homotopy_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "homotopy.discriminant",
        8,
        "disc H(t,s) = 27 e^{6 pi i t} (4 - a(s)^2) on a 64 x 64 grid",
        boxed(|_| {
            let r = verify_h_discriminant(64)?;
            Ok(Outcome::new("max deviation < 1e-9", format!("{:.3e}", r.max_disc_deviation), r.max_disc_deviation < 1e-9))
        }),
    ));
    out.push(Check::new(
        "homotopy.boundary",
        8,
        "H(0,s) = alpha(s), H(1,s) = beta(s), H(t,0) = H(t,1) = gamma(t)",
        boxed(|_| {
            let r = verify_h_discriminant(64)?;
            Ok(Outcome::new(
                "max deviation < 1e-12",
                format!("{:.3e}", r.max_boundary_deviation),
                r.max_boundary_deviation < 1e-12,
            ))
        }),
    ));
}

fn line_checks(out: &mut Vec<Check>) {
    let cases: [(&str, &[f64]); 5] = [
        ("rc4_delta1", &[1.0, 3.0]),
        ("rc4_delta2", &[0.0, 3.0]),
        ("rc4_delta3", &[1.0]),
        ("rc4_Gamma1", &[0.0, 3.0]),
        ("rc4_Gamma2", &[0.0, 1.0]),
    ];
    for (name, lines) in cases {
        let list: Vec<String> = lines.iter().map(|c| format!("Re = {c}")).collect();
        out.push(Check::new(
            format!("lines.{name}"),
            9,
            format!("no root of {name} meets {}", list.join(" or ")),
            boxed(move |ctx| {
                let opts = TraceOptions { record: true, ..ctx.opts() };
                let r = trace(&builtin(name)?, &opts)?;
                let path = r.path.ok_or("no recorded path")?;
                let d = lines.iter().map(|&c| min_distance_to_line(&path, c)).fold(f64::INFINITY, f64::min);
                Ok(Outcome::new("min distance > 1e-6", format!("{d:.6e}"), d > 1e-6))
            }),
        ));
    }
}

fn rel_dev(a: &Poly<f64>, b: &Poly<f64>) -> f64 {
    let scale = a.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
    if a.coeffs().len() != b.coeffs().len() {
        return f64::INFINITY;
    }
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).abs() / scale).fold(0.0, f64::max)
}

fn real_root_count(p: &Poly<f64>) -> Result<usize, Box<dyn StdError>> {
    let z = roots(&p.map(|c| Complex::new(*c, 0.0)))?;
    Ok(z.iter().filter(|w| w.im.abs() <= 1e-7 * (1.0 + w.norm())).count())
}

fn upper_text<T: std::fmt::Display>(u: &Upper<T>) -> String {
    match u {
        Upper::Finite(x) => x.to_string(),
        Upper::Infinite => String::from("inf"),
    }
}

fn realfib_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "realfib.minmax",
        10,
        "m(3(X^2-1)) = -2 and M(3(X^2-1)) = 2",
        boxed(|_| {
            let e = minmax_exact(&Poly::new(vec![int(-3), int(0), int(3)]))?.ok_or("roots are not rational")?;
            let f = minmax(&Poly::new(vec![-3.0, 0.0, 3.0]))?;
            let pass = e.m == int(-2) && e.upper == Upper::Finite(int(2)) && f.m == -2.0 && f.upper == Upper::Finite(2.0);
            Ok(Outcome::new("(-2, 2)", format!("({}, {})", e.m, upper_text(&e.upper)), pass))
        }),
    ));
    out.push(Check::new(
        "realfib.roundtrip",
        10,
        "fiber_inverse(P', ev0(P)) = P",
        boxed(|ctx| {
            let mut rng = ctx.rng(10);
            let p = Poly::new(vec![0.0, -3.0, 0.0, 1.0]);
            let mut worst = rel_dev(&fiber_inverse(&p.derive(), ev0(&p)?)?, &p);
            for _ in 0..100 {
                let n = rng.gen_range(2..=7);
                let r: Vec<f64> = distinct_rationals(&mut rng, n).iter().map(rational_to_f64).collect();
                let p = Poly::from_roots(1.0, &r);
                let c = ev0(&p)?;
                worst = worst.max(rel_dev(&fiber_inverse(&p.derive(), c)?, &p));
            }
            Ok(Outcome::new("max relative deviation < 1e-10 over 101 polynomials", format!("{worst:.3e}"), worst < 1e-10))
        }),
    ));
    out.push(Check::new(
        "realfib.counterexample4",
        10,
        "5X(X-1)(X-3)(X-pi) has m - M > pi^3/4",
        boxed(|_| {
            let pi = std::f64::consts::PI;
            let q = counterexample::<f64>(4)?;
            let same = rel_dev(&q, &Poly::from_roots(5.0, &[0.0, 1.0, 3.0, pi])) < 1e-15;
            let d = minmax(&q)?;
            let gap = d.upper.finite().map(|u| d.m - u).ok_or("M is infinite")?;
            let bound = pi.powi(3) / 4.0 - 0.01;
            Ok(Outcome::new(format!("m - M > {bound:.6}"), format!("m - M = {gap:.6}"), same && gap > bound))
        }),
    ));
    for d in [5usize, 6] {
        out.push(Check::new(
            format!("realfib.counterexample{d}"),
            10,
            format!("inductive degree-{d} Q with simple real roots and m >= M"),
            boxed(move |_| {
                let q = counterexample::<f64>(d)?;
                let data = minmax(&q)?;
                let gap = data.upper.finite().map(|u| data.m - u).ok_or("M is infinite")?;
                let pass = q.degree() == Some(d) && data.critical_points.len() == d && !data.in_qc_real();
                Ok(Outcome::new("m - M >= 0", format!("m - M = {gap:.6}"), pass))
            }),
        ));
    }
    out.push(Check::new(
        "realfib.converse",
        10,
        "primitives of Q have all roots real exactly for offsets in (m, M)",
        boxed(|ctx| {
            let mut rng = ctx.rng(11);
            let mut good = 0;
            for _ in 0..100 {
                let d = rng.gen_range(3..=4);
                let b: Vec<f64> = distinct_rationals(&mut rng, d).iter().map(rational_to_f64).collect();
                let q = Poly::from_roots(rng.gen_range(1..=5) as f64, &b);
                let data = minmax(&q)?;
                let base = q.primitive();
                let n = d + 1;
                let ok = match data.upper.finite().copied() {
                    Some(upper) if data.m < upper => (1..=11).all(|k| {
                        let v = data.m + (upper - data.m) * k as f64 / 12.0;
                        real_root_count(&(&base - &Poly::constant(v))).is_ok_and(|c| c == n)
                    }),
                    _ => {
                        let lo = data.critical_values.iter().fold(f64::INFINITY, |a, x| a.min(*x)) - 1.0;
                        let hi = data.critical_values.iter().fold(f64::NEG_INFINITY, |a, x| a.max(*x)) + 1.0;
                        (0..=100).all(|k| {
                            let v = lo + (hi - lo) * k as f64 / 100.0;
                            real_root_count(&(&base - &Poly::constant(v))).is_ok_and(|c| c < n)
                        })
                    }
                };
                good += usize::from(ok);
            }
            Ok(Outcome::count("random Q agree with the root-count oracle", good, 100))
        }),
    ));
}

fn remark_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "remark.symmetric_cubic",
        11,
        "4(X+5)X(X-5) lies in QC3(R) but not in QC3",
        boxed(|_| {
            let q = Poly::new(vec![int(0), int(-100), int(0), int(4)]);
            let real_in = minmax_exact(&q)?.ok_or("roots are not rational")?.in_qc_real();
            let complex_in = qc_check(&q.map(|c| real(c.clone())))?.is_none();
            Ok(Outcome::new("real: in, complex: out", verdict(real_in, complex_in), real_in && !complex_in))
        }),
    ));
    out.push(Check::new(
        "remark.pi_quartic",
        11,
        "5X(X-1)(X-3)(X-pi) lies in QC4 but not in QC4(R)",
        boxed(|_| {
            let q = counterexample::<f64>(4)?;
            let real_in = in_qc_real(&q)?;
            let p = q.primitive().map(|c| Complex::new(*c, 0.0));
            let complex_in = membership_approx(&p, 1e-9)?.in_qc;
            Ok(Outcome::new("real: out, complex: in", verdict(real_in, complex_in), !real_in && complex_in))
        }),
    ));
}

fn verdict(real_in: bool, complex_in: bool) -> String {
    let w = |b: bool| if b { "in" } else { "out" };
    format!("real: {}, complex: {}", w(real_in), w(complex_in))
}

fn identity_checks(out: &mut Vec<Check>) {
    for n in 4..=8usize {
        out.push(Check::new(
            format!("identity.recurrence.n{n}"),
            1,
            format!("P_{n}(b_i) - P_{n}(b_j) = -(b_i - b_j)^3 S_ij / (({n}-1)({n}-2))"),
            boxed(move |ctx| {
                let mut rng = ctx.rng(n as u64);
                let table = a_table(n)?;
                let m = n - 1;
                let mut good = 0;
                for _ in 0..200 {
                    let beta = distinct_rationals(&mut rng, m);
                    let i = rng.gen_range(0..m);
                    let j = (i + rng.gen_range(1..m)) % m;
                    let b = reals(&beta);
                    let p = Poly::from_roots(real(int(n as i64)), &b).primitive();
                    let lhs = p.eval(&b[i]) - p.eval(&b[j]);
                    let d = &beta[i] - &beta[j];
                    let rhs = -(&d * &d * &d) / int(((n - 1) * (n - 2)) as i64) * eval_sij(&table, &beta, i + 1, j + 1);
                    good += usize::from(lhs == real(rhs));
                }
                Ok(Outcome::count("exact", good, 200))
            }),
        ));
    }
}

fn z(m: usize, i: usize) -> MPoly {
    MPoly::var(m, i - 1)
}

fn k(m: usize, c: i64) -> MPoly {
    MPoly::constant(m, int(c))
}

fn displayed_sij(m: usize) -> MPoly {
    match m {
        3 => (&(&z(3, 1) + &z(3, 2)) - &(&k(3, 2) * &z(3, 3))).scale(&int(2)),
        4 => {
            let (zi, zj, zh, zk) = (z(m, 1), z(m, 2), z(m, 3), z(m, 4));
            let quad = &(&(&k(m, 3) * &(&zi * &zi)) + &(&k(m, 4) * &(&zi * &zj))) + &(&k(m, 3) * &(&zj * &zj));
            let mixed = &k(m, 5) * &(&(&zh + &zk) * &(&zi + &zj));
            &(&quad - &mixed) + &(&k(m, 10) * &(&zh * &zk))
        }
        _ => {
            let (zi, zj, zh, zk, zl) = (z(m, 1), z(m, 2), z(m, 3), z(m, 4), z(m, 5));
            let cube = |a: &MPoly, b: &MPoly, c: &MPoly| &(a * b) * c;
            let top = &(&(&k(m, 4) * &cube(&zi, &zi, &zi)) + &(&k(m, 6) * &cube(&zi, &zi, &zj)))
                + &(&(&k(m, 6) * &cube(&zi, &zj, &zj)) + &(&k(m, 4) * &cube(&zj, &zj, &zj)));
            let quad = &(&(&k(m, 3) * &(&zi * &zi)) + &(&k(m, 4) * &(&zi * &zj))) + &(&k(m, 3) * &(&zj * &zj));
            let s1 = &(&zh + &zk) + &zl;
            let s2 = &(&(&zh * &zk) + &(&zh * &zl)) + &(&zk * &zl);
            let s3 = cube(&zh, &zk, &zl);
            &(&(&top - &(&k(m, 2) * &(&s1 * &quad))) + &(&k(m, 10) * &(&s2 * &(&zi + &zj)))) - &(&k(m, 20) * &s3)
        }
    }
}

fn sij_checks(out: &mut Vec<Check>) {
    let anchors = [
        (3usize, "S_12 = 2(z1 + z2 - 2 z3)"),
        (4, "S_12 = 3z1^2 + 4z1z2 + 3z2^2 - 5(z3 + z4)(z1 + z2) + 10z3z4"),
        (5, "S_12 is the displayed cubic in z1, ..., z5"),
    ];
    for (m, anchor) in anchors {
        out.push(Check::new(
            format!("sij.base{m}"),
            2,
            anchor,
            boxed(move |_| {
                let expect = displayed_sij(m);
                let got = sij_poly(m, 1, 2)?;
                Ok(Outcome::new(expect.to_text(), got.to_text(), got == expect))
            }),
        ));
    }
}

fn multi_strand_builtins() -> Result<Vec<(String, LoopSpec)>, Box<dyn StdError>> {
    let mut v = Vec::new();
    for n in builtin_names() {
        let l = builtin(&n)?;
        if l.n >= 2 {
            v.push((n, l));
        }
    }
    Ok(v)
}

fn direct_qc(points: &[Rational]) -> bool {
    let b = reals(points);
    if (0..b.len()).any(|i| (i + 1..b.len()).any(|j| b[i] == b[j])) {
        return false;
    }
    let p = Poly::from_roots(real(int(1)), &b).primitive();
    let v: Vec<ExactComplex> = b.iter().map(|x| p.eval(x)).collect();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}

fn force_onto_sij(mut pts: Vec<Rational>, i: usize, j: usize, kk: usize) -> Result<Vec<Rational>, Box<dyn StdError>> {
    let table = a_table(pts.len() + 1)?;
    pts[kk] = int(0);
    let a = eval_sij(&table, &pts, i, j);
    pts[kk] = int(1);
    let b = eval_sij(&table, &pts, i, j) - &a;
    if !b.is_zero() {
        pts[kk] = -a / b;
    }
    Ok(pts)
}

fn property_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "prop.step_halving",
        12,
        "halving the largest step leaves every traced braid unchanged",
        boxed(|ctx| {
            let loops = multi_strand_builtins()?;
            let half = TraceOptions { max_step: ctx.opts().max_step / 2.0, ..ctx.opts() };
            let mut good = 0;
            for (_, l) in &loops {
                let a = trace(l, &ctx.opts())?;
                let b = trace(l, &half)?;
                good += usize::from(braid_equal(&a.word, &b.word)?);
            }
            Ok(Outcome::count("builtins stable", good, loops.len()))
        }),
    ));
    out.push(Check::new(
        "prop.trace_inverse",
        12,
        "the reversed loop traces to the inverse braid",
        boxed(|ctx| {
            let loops = multi_strand_builtins()?;
            let mut good = 0;
            for (_, l) in &loops {
                let w = trace(l, &ctx.opts())?.word;
                let v = trace(&l.invert(), &ctx.opts())?.word;
                good += usize::from(braid_equal(&v, &w.inverse())?);
            }
            Ok(Outcome::count("builtins", good, loops.len()))
        }),
    ));
    out.push(Check::new(
        "prop.trace_concat",
        12,
        "a concatenated loop traces to the product of braids",
        boxed(|ctx| {
            let loops = multi_strand_builtins()?;
            let words = loops.iter().map(|(_, l)| trace(l, &ctx.opts()).map(|r| r.word)).collect::<Result<Vec<_>, _>>()?;
            let (mut good, mut total) = (0, 0);
            for (a, (_, la)) in loops.iter().enumerate() {
                for (b, (_, lb)) in loops.iter().enumerate() {
                    let Ok(c) = la.concat(lb) else { continue };
                    total += 1;
                    let w = trace(&c, &ctx.opts())?.word;
                    good += usize::from(braid_equal(&w, &words[a].concat(&words[b])?)?);
                }
            }
            Ok(Outcome::count("same-basepoint pairs", good, total))
        }),
    ));
    out.push(Check::new(
        "prop.discriminant_oracle",
        12,
        "resultant discriminant agrees with the root product",
        boxed(|ctx| {
            let mut rng = ctx.rng(12);
            let mut good = 0;
            for _ in 0..200 {
                let deg = rng.gen_range(1..=8);
                let mut c: Vec<ExactComplex> = (0..deg).map(|_| real(int(rng.gen_range(-10..=10)))).collect();
                c.push(real(int(1)));
                let p = Poly::new(c);
                let d = p.discriminant()?;
                let exact = Complex::new(rational_to_f64(&d.re), rational_to_f64(&d.im));
                let o = discriminant_oracle(&roots_exact::<TwoFloat>(&p)?);
                let o = Complex::new(o.re.hi(), o.im.hi());
                good += usize::from((exact - o).norm() / exact.norm().max(1.0) < 1e-9);
            }
            Ok(Outcome::count("within 1e-9", good, 200))
        }),
    ));
    out.push(Check::new(
        "prop.membership",
        12,
        "S_ij membership agrees with direct comparison of critical values",
        boxed(|ctx| {
            let mut rng = ctx.rng(13);
            let mut good = 0;
            for _ in 0..1000 {
                let m = rng.gen_range(3..=6);
                let mut pts = distinct_rationals(&mut rng, m);
                if rng.gen_bool(0.5) {
                    let i = rng.gen_range(0..m);
                    let j = (i + rng.gen_range(1..m)) % m;
                    let kk = (0..m).find(|&x| x != i && x != j).unwrap_or(0);
                    pts = force_onto_sij(pts, i.min(j) + 1, i.max(j) + 1, kk)?;
                }
                let direct = direct_qc(&pts);
                let b = reals(&pts);
                let q = Poly::from_roots(real(int(m as i64 + 1)), &b);
                good += usize::from(in_qf(&b).member == direct && qc_check(&q)?.is_none() == direct);
            }
            Ok(Outcome::count("exact agreement", good, 1000))
        }),
    ));
}

/// Every check in declaration order.
pub fn all_checks() -> Vec<Check> {
    let mut out = Vec::new();
    identity_checks(&mut out);
    sij_checks(&mut out);
    trace_checks(&mut out);
    qp_checks(&mut out);
    schreier_checks(&mut out);
    homotopy_checks(&mut out);
    line_checks(&mut out);
    realfib_checks(&mut out);
    remark_checks(&mut out);
    property_checks(&mut out);
    out.sort_by_key(|c| c.criterion);
    out
}

/// Checks whose name equals `filter` or starts with `filter.`; all checks without a filter.
pub fn select(filter: Option<&str>) -> Result<Vec<Check>, String> {
    let all = all_checks();
    let Some(f) = filter else { return Ok(all) };
    let picked: Vec<Check> =
        all.into_iter().filter(|c| c.name == f || c.name.starts_with(&format!("{f}."))).collect();
    if picked.is_empty() {
        let names: Vec<String> = all_checks().into_iter().map(|c| c.name).collect();
        return Err(format!("no check matches `{f}`; available: {}", names.join(", ")));
    }
    Ok(picked)
}

/// Run checks in order and collect the report.
pub fn run(checks: &[Check], ctx: &Ctx, timings: bool) -> ReproReport {
    let reports = checks
        .iter()
        .map(|c| {
            let (mut r, t) = c.run(ctx);
            if timings {
                r.elapsed_ms = Some(t.as_millis() as u64);
            }
            r
        })
        .collect();
    ReproReport::new(ctx.seed, precision_name(ctx.precision), reports)
}
