mod common;

use common::c64;
use rconf_core::braid::{braid_equal, BraidWord};
use rconf_core::loops::{builtin, builtin_names, min_distance, parse, print, LoopSpec, MARGIN};
use rconf_core::poly::{int, rat, real, Rational};
use rconf_core::restricted::qf_margins;
use rconf_core::roots::roots;
use rconf_core::tracer::{trace, TraceOptions};
use rconf_core::{Error, Poly};

fn word(l: &LoopSpec) -> BraidWord {
    trace(l, &TraceOptions::default()).unwrap().word
}

fn artin_eq(a: &BraidWord, b: &BraidWord) -> bool {
    braid_equal(a, b).unwrap()
}

fn close(p: &Poly<num_complex::Complex<f64>>, expect: &[(f64, f64)]) {
    assert_eq!(p.coeffs().len(), expect.len(), "{:?}", p.coeffs());
    for (c, e) in p.coeffs().iter().zip(expect) {
        assert!((c - c64(e.0, e.1)).norm() < 1e-13, "{c} vs {e:?}");
    }
}

#[test]
fn parse_matches_builtin_gamma3() {
    let l = parse("loop n=3 { [0,1]: X^3 - 3*E(2t)*X }").unwrap();
    let g = builtin("gamma3").unwrap();
    assert_eq!(l.n, g.n);
    assert_eq!(l.segments, g.segments);
}

#[test]
fn print_parse_round_trip() {
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        let text = print(&l);
        let back = parse(&text).unwrap();
        assert_eq!(back, l, "{name}");
        assert_eq!(print(&back), text, "{name}");
    }
}

#[test]
fn partial_cover_rejected() {
    let e = parse("loop n=3 { [0,1/2]: X^3 - 3X }").unwrap_err();
    assert_eq!(e, Error::InvalidLoop("intervals do not cover [0,1]".into()));
    assert!(e.to_string().contains("intervals do not cover [0,1]"));
}

#[test]
fn syntax_errors_carry_position() {
    match parse("loop n=3 {\n  [0,1]: X^3 - * X\n}") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn eval_examples() {
    let g = builtin("gamma3").unwrap();
    close(&g.eval_loop(0.0).unwrap(), &[(0.0, 0.0), (-3.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
    let g4 = builtin("Gamma4_2").unwrap();
    close(
        &g4.eval_loop(0.0).unwrap(),
        &[(-1.0 / 3.0, 0.0), (0.0, 0.0), (6.0, 0.0), (-16.0 / 3.0, 0.0), (1.0, 0.0)],
    );
    let g2 = builtin("qc3_gamma2").unwrap();
    let mut r = roots(&g2.eval_loop(0.5).unwrap()).unwrap();
    r.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    for (z, e) in r.iter().zip([c64(0.0, 0.0), c64(2.0, -1.0), c64(2.0, 1.0)]) {
        assert!((z - e).norm() < 1e-12, "{z} vs {e}");
    }
    assert!(matches!(g.eval_loop(1.5), Err(Error::Precondition(_))));
    assert!(matches!(g.eval_loop(-0.1), Err(Error::Precondition(_))));
}

#[test]
fn alpha3_midpoint() {
    let a = builtin("alpha3").unwrap();
    let p = a.eval_exact(&rat(1, 2)).unwrap();
    let expect = Poly::new(vec![real(rat(11, 5)), real(int(-3)), real(int(0)), real(int(1))]);
    assert_eq!(p, expect);
}

#[test]
fn fiber_d3_avoids_fiber_points() {
    let d = builtin("fiber_d3").unwrap();
    assert!(d.is_closed());
    assert_eq!(d.basepoint_exact().unwrap(), Poly::new(vec![real(rat(-1, 3))]));
    let avoid = [c64(-5.0 / 3.0, 0.0), c64(0.0, 0.0), c64(9.0, 0.0)];
    assert!(min_distance(&d, &avoid, 512) > 1e-4);
}

#[test]
fn qc3_alpha_m2_stays_in_qf3() {
    let l = builtin("qc3_alpha_m2").unwrap();
    for t in l.sample_points(256) {
        let r = roots(&l.eval_at(t)).unwrap();
        let (sep, sij) = qf_margins(&r);
        assert!(sep > MARGIN && sij > MARGIN, "t = {t}");
    }
    assert!(l.validate(256).valid());
}

#[test]
fn loop_algebra() {
    let g = builtin("gamma3").unwrap();
    let a = builtin("alpha3").unwrap();
    let back = g.concat(&g.invert()).unwrap();
    assert!(artin_eq(&word(&back), &BraidWord::identity(3)));
    assert_eq!(g.invert().invert(), g);
    let c = a.conjugate(&g).unwrap();
    let expect = word(&g).concat(&word(&a)).unwrap().concat(&word(&g).inverse()).unwrap();
    assert!(artin_eq(&word(&c), &expect));
    let g1 = builtin("qc3_gamma1").unwrap();
    let sq = g1.concat(&g1).unwrap();
    assert!(artin_eq(&word(&sq), &word(&builtin("qc3_alpha_1").unwrap())));
    let conj = builtin("qc3_alpha_1").unwrap().conjugate(&builtin("qc3_gamma2").unwrap()).unwrap();
    assert!(artin_eq(&word(&conj), &word(&builtin("lift_g2a1g2inv").unwrap())));
    let other = builtin("rc4_delta1").unwrap();
    assert_eq!(g.concat(&other).unwrap_err(), Error::BasepointMismatch);
}

#[test]
fn validate_examples() {
    let r = builtin("rc4_Gamma1").unwrap().validate(512);
    assert!(r.valid(), "{:?}", r.failures);
    assert!(r.min_disc > 0.0);
    assert!(builtin("gamma3").unwrap().validate(512).valid());
    let bad = parse("loop n=3 { [0,1]: X^3 - 3X + (4t - 2) }").unwrap();
    let r = bad.validate(512);
    assert!(!r.valid());
    assert!(!r.closed);
    assert!(r.worst_t < 1e-9 || r.worst_t > 1.0 - 1e-9, "{}", r.worst_t);
    assert!(r.failures.iter().any(|f| f.contains("near t")), "{:?}", r.failures);
}

#[test]
fn every_builtin_validates() {
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        let r = l.validate(512);
        assert!(r.valid(), "{name}: {:?}", r.failures);
        assert!(r.closed, "{name}");
        if l.n >= 2 {
            assert!(r.min_root_sep > MARGIN, "{name}");
        }
        if let Some(s) = r.min_sij {
            assert!(s > MARGIN, "{name}");
        }
    }
}

#[test]
fn segment_boundaries_join() {
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        for w in l.segments.windows(2) {
            let t: &Rational = &w[0].end;
            for (a, b) in w[0].coeffs.iter().zip(&w[1].coeffs) {
                match (a.eval_exact(t), b.eval_exact(t)) {
                    (Some(x), Some(y)) => assert_eq!(x, y, "{name} at {t}"),
                    _ => {
                        let tf = rconf_core::restricted::rational_to_f64(t);
                        let d = (a.eval(tf) - b.eval(tf)).norm();
                        assert!(d < 1e-12, "{name} at {t}: {d}");
                    }
                }
            }
        }
    }
}

#[test]
fn groupoid_laws() {
    let g = builtin("gamma3").unwrap();
    let a = builtin("alpha3").unwrap();
    let b = builtin("beta3").unwrap();
    let left = g.concat(&a).unwrap().concat(&b).unwrap();
    let right = g.concat(&a.concat(&b).unwrap()).unwrap();
    assert!(artin_eq(&word(&left), &word(&right)));
    let expect = word(&g).concat(&word(&a)).unwrap().concat(&word(&b)).unwrap();
    assert!(artin_eq(&word(&left), &expect));
}
