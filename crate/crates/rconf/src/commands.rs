//! Subcommand implementations shared by the binary and its tests.

use std::fmt;

use rconf_core::format::{fmt_poly, fmt_rational, parse_complex, parse_poly};
use rconf_core::loops::{builtin, parse, LoopSpec};
use rconf_core::realfib::{counterexample, ev0, minmax, minmax_exact, RealFiberData, Upper};
use rconf_core::restricted::{
    as_real_rational, describe_witness, in_qf, membership, rational_to_f64, sij_poly, QfWitness,
};
use rconf_core::schreier::{
    parse_cycles, schreier_transversal, subgroup_presentation, tietze_simplify, validate_transversal, FiniteQuotient,
    Presentation, SubgroupPresentation, Transversal,
};
use rconf_core::tracer::{trace, Precision, TraceOptions};
use rconf_core::{Error, Poly};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::checks::{self, Ctx};

/// Failure of a subcommand with its exit code.
#[derive(Debug)]
pub struct CliError {
    /// Process exit code.
    pub code: i32,
    /// Message for standard error.
    pub message: String,
}

impl CliError {
    /// Exit code 2.
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    /// Exit code 1.
    pub fn failure(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let input = matches!(
            e,
            Error::Parse { .. }
                | Error::InvalidLoop(_)
                | Error::UnknownLoop { .. }
                | Error::UnknownGenerator(_)
                | Error::InvalidGroup(_)
                | Error::InvalidTransversal(_)
                | Error::IndexOutOfRange(_)
                | Error::StrandMismatch { .. }
                | Error::BasepointMismatch
        );
        let message = e.to_string();
        if input {
            CliError::usage(message)
        } else {
            CliError::failure(message)
        }
    }
}

/// Result of a subcommand: text for standard output and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    /// Printed text, newline terminated.
    pub text: String,
    /// Process exit code.
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text: ensure_newline(text), code: 0 }
    }

    fn json(v: &impl Serialize) -> Self {
        Output::ok(serde_json::to_string_pretty(v).expect("value serializes"))
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

type CliResult = Result<Output, CliError>;

/// Source of a loop for `trace`.
pub enum LoopSource<'a> {
    /// Loop file contents.
    Text(&'a str),
    /// Builtin loop name.
    Builtin(&'a str),
}

/// JSON form of a traced braid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceJson {
    /// Letters such as `x1` or `x2^-1`.
    pub word: Vec<String>,
    /// Final position of each strand (1-based).
    pub permutation: Vec<usize>,
    /// Smallest root separation met.
    pub min_separation: f64,
    /// Accepted steps.
    pub steps: usize,
}

/// `trace`: braid word of a loop.
pub fn cmd_trace(src: LoopSource<'_>, precision: Precision) -> CliResult {
    let l: LoopSpec = match src {
        LoopSource::Text(t) => parse(t)?,
        LoopSource::Builtin(name) => builtin(name)?,
    };
    let r = trace(&l, &TraceOptions { precision, ..TraceOptions::default() })?;
    Ok(Output::json(&TraceJson {
        word: r.word.tokens(),
        permutation: r.permutation.iter().map(|p| p + 1).collect(),
        min_separation: r.min_separation,
        steps: r.steps,
    }))
}

fn parse_points(text: &str) -> Result<Vec<rconf_core::ExactComplex>, CliError> {
    let t = text.trim();
    let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
    inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_complex(s).map_err(CliError::from))
        .collect()
}

/// `member`: exact membership of a polynomial, or of a point when `points` is set.
pub fn cmd_member(input: &str, points: bool, as_json: bool) -> CliResult {
    if points {
        let z = parse_points(input)?;
        let v = in_qf(&z);
        let witness = v.witness.map(|w| match w {
            QfWitness::Coincide(i, j) => format!("z{i} = z{j}"),
            QfWitness::Hypersurface(i, j) => format!("S_{i}{j} vanishes"),
        });
        if as_json {
            return Ok(Output::json(&json!({ "points": z.len(), "in_qf": v.member, "witness": witness })));
        }
        let verdict = if v.member { "in QF" } else { "not in QF" };
        return Ok(Output::ok(match witness {
            Some(w) => format!("{verdict}: {w}"),
            None => verdict.to_string(),
        }));
    }
    let p = parse_poly(input)?;
    let v = membership(&p)?;
    let witness = v.witness.as_ref().map(describe_witness);
    if as_json {
        return Ok(Output::json(&json!({
            "poly": fmt_poly(&p),
            "in_c": v.in_c,
            "in_qc": v.in_qc,
            "in_rc": v.in_rc,
            "witness": witness,
        })));
    }
    let mut text = format!("C: {}\nQC (derivative): {}\nRC: {}", v.in_c, v.in_qc, v.in_rc);
    if let Some(w) = witness {
        text.push_str(&format!("\nwitness: {w}"));
    }
    Ok(Output::ok(text))
}

/// `sij`: one `S_ij` polynomial, or every pair for base size `m`.
pub fn cmd_sij(m: usize, pair: Option<(usize, usize)>, as_json: bool) -> CliResult {
    let pairs: Vec<(usize, usize)> = match pair {
        Some(p) => vec![p],
        None => (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect(),
    };
    let mut rows = Vec::new();
    for (i, j) in pairs {
        rows.push((i, j, sij_poly(m, i, j)?.to_text()));
    }
    if as_json {
        let polys: Vec<Value> = rows.iter().map(|(i, j, p)| json!({ "i": i, "j": j, "poly": p })).collect();
        return Ok(Output::json(&json!({ "m": m, "polys": polys })));
    }
    let lines: Vec<String> = rows.iter().map(|(i, j, p)| format!("S_{i},{j} = {p}")).collect();
    Ok(Output::ok(lines.join("\n")))
}

/// Input of `present`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentInput {
    /// Generator names.
    pub generators: Vec<String>,
    /// Relators as words in the generator names.
    pub relators: Vec<String>,
    /// Number of points permuted by the images.
    pub degree: usize,
    /// Image of each generator in cycle notation.
    pub images: Vec<String>,
    /// Coset representatives; breadth-first when absent.
    #[serde(default)]
    pub transversal: Option<Vec<String>>,
    /// Tietze elimination budget.
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Whether to run Tietze simplification.
    #[serde(default = "default_simplify")]
    pub simplify: bool,
}

fn default_budget() -> usize {
    100
}

fn default_simplify() -> bool {
    true
}

/// The RB3 example with the map onto the symmetric group of degree 3.
pub fn rb3_input() -> PresentInput {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let p = Presentation::rb3();
    PresentInput {
        relators: p.relators.iter().map(|r| p.word_text(r)).collect(),
        generators: p.generators,
        degree: 3,
        images: s(&["(23)", "(12)", "(13)"]),
        transversal: Some(s(&["", "alpha", "beta", "gamma", "alpha beta", "beta alpha"])),
        budget: default_budget(),
        simplify: true,
    }
}

fn present_from(input: &PresentInput) -> Result<(Presentation, Transversal, SubgroupPresentation), CliError> {
    let mut p = Presentation::new(input.generators.clone(), Vec::new())?;
    let relators = input.relators.iter().map(|r| p.parse_word(r)).collect::<Result<Vec<_>, _>>()?;
    p = Presentation::new(input.generators.clone(), relators)?;
    let images = input.images.iter().map(|c| parse_cycles(c, input.degree)).collect::<Result<Vec<_>, _>>()?;
    let q = FiniteQuotient::new(&p, input.degree, images)?;
    let t = match &input.transversal {
        Some(reps) => {
            let words = reps.iter().map(|r| p.parse_word(r)).collect::<Result<Vec<_>, _>>()?;
            validate_transversal(&q, words)?
        }
        None => schreier_transversal(&p, &q)?,
    };
    let sp = subgroup_presentation(&p, &q, &t)?;
    let sp = if input.simplify { tietze_simplify(&sp, input.budget, &[]) } else { sp };
    Ok((p, t, sp))
}

fn word_or_one(p: &Presentation, w: &[i32]) -> String {
    if w.is_empty() {
        String::from("1")
    } else {
        p.word_text(w)
    }
}

/// `present`: subgroup presentation as JSON.
pub fn cmd_present(input: &PresentInput) -> CliResult {
    let (p, t, sp) = present_from(input)?;
    let sub = &sp.presentation;
    let definitions: Vec<Value> = sub
        .generators
        .iter()
        .zip(&sp.definitions)
        .map(|(g, d)| json!({ "generator": g, "word": word_or_one(&p, d) }))
        .collect();
    Ok(Output::json(&json!({
        "generators": sub.generators,
        "relators": sub.relators.iter().map(|r| word_or_one(sub, r)).collect::<Vec<_>>(),
        "definitions": definitions,
        "trivial": sp.trivial,
        "partial": sp.partial,
        "index": t.len(),
        "transversal": t.reps.iter().map(|r| word_or_one(&p, r)).collect::<Vec<_>>(),
    })))
}

/// Parse the `present` input document.
pub fn parse_present_input(text: &str) -> Result<PresentInput, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid presentation JSON: {e}")))
}

fn real_poly(text: &str) -> Result<(Poly<f64>, Option<Poly<rconf_core::Rational>>), CliError> {
    let p = parse_poly(text)?;
    let mut exact = Vec::new();
    for c in p.coeffs() {
        match as_real_rational(c) {
            Some(q) => exact.push(q),
            None => return Err(CliError::usage("coefficients must be real")),
        }
    }
    let approx = Poly::new(exact.iter().map(rational_to_f64).collect());
    Ok((approx, Some(Poly::new(exact)).filter(|e| !e.is_zero())))
}

fn upper_json<T: Serialize>(u: &Upper<T>) -> Value {
    match u {
        Upper::Finite(x) => json!(x),
        Upper::Infinite => json!("inf"),
    }
}

fn fiber_json(d: &RealFiberData<f64>) -> Value {
    json!({
        "m": d.m,
        "M": upper_json(&d.upper),
        "critical_points": d.critical_points,
        "critical_values": d.critical_values,
        "in_qc_real": d.in_qc_real(),
    })
}

/// `realfib minmax`: `m(Q)` and `M(Q)` of a real polynomial `Q`.
pub fn cmd_minmax(poly: &str) -> CliResult {
    let (q, exact) = real_poly(poly)?;
    let mut v = fiber_json(&minmax(&q)?);
    if let Some(e) = exact {
        if let Some(d) = minmax_exact(&e)? {
            let upper = match &d.upper {
                Upper::Finite(x) => fmt_rational(x),
                Upper::Infinite => String::from("inf"),
            };
            v["exact"] = json!({ "m": fmt_rational(&d.m), "M": upper });
        }
    }
    Ok(Output::json(&v))
}

/// `realfib ev0`: the fiber coordinate of a monic real polynomial.
pub fn cmd_ev0(poly: &str) -> CliResult {
    let (p, _) = real_poly(poly)?;
    Ok(Output::json(&json!({ "ev0": ev0(&p)? })))
}

/// `realfib counterexample`: a derivative outside `QC(R)` of degree `d`.
pub fn cmd_counterexample(degree: usize) -> CliResult {
    let q = counterexample::<f64>(degree)?;
    let d = minmax(&q)?;
    let mut v = fiber_json(&d);
    v["coefficients"] = json!(q.coeffs());
    v["gap"] = json!(d.upper.finite().map(|u| d.m - u));
    Ok(Output::json(&v))
}

/// `reproduce`: run the acceptance checks.
pub fn cmd_reproduce(ctx: &Ctx, only: Option<&str>, timings: bool, list: bool, as_json: bool) -> CliResult {
    let selected = checks::select(only).map_err(CliError::usage)?;
    if list {
        let lines: Vec<String> = selected.iter().map(|c| format!("{} [{}] {}", c.name, c.criterion, c.anchor)).collect();
        return Ok(Output::ok(lines.join("\n")));
    }
    let report = checks::run(&selected, ctx, timings);
    let text = if as_json { report.to_json() } else { report.to_text() };
    Ok(Output { text: ensure_newline(text), code: if report.all_pass() { 0 } else { 1 } })
}
