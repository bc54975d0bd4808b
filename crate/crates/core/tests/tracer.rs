mod common;

use common::c64;
use rconf_core::braid::{braid_equal, fmt_permutation, BraidWord};
use rconf_core::loops::{builtin, builtin_names, parse, LoopSpec};
use rconf_core::roots::{discriminant_oracle, roots};
use rconf_core::tracer::{
    h_poly, min_distance_to_line, trace, trace_pure_check, verify_h_discriminant, Precision, TraceOptions,
    TraceResult,
};
use rconf_core::Error;

fn run(l: &LoopSpec) -> TraceResult {
    trace(l, &TraceOptions::default()).unwrap()
}

fn recorded(l: &LoopSpec) -> TraceResult {
    trace(l, &TraceOptions { record: true, ..TraceOptions::default() }).unwrap()
}

fn word(name: &str) -> BraidWord {
    run(&builtin(name).unwrap()).word
}

fn is(w: &BraidWord, text: &str) -> bool {
    braid_equal(w, &BraidWord::parse(w.n(), text).unwrap()).unwrap()
}

#[test]
fn anchors() {
    let g = word("gamma3");
    assert!(is(&g, "x1 x2 x1"), "{g}");
    assert!(is(&g, "x2 x1 x2"), "{g}");
    assert!(is(&word("alpha3"), "x2^-1"));
    assert!(is(&word("beta3"), "x1^-1"));
}

#[test]
fn rc4_images() {
    for k in 1..=3 {
        let w = word(&format!("rc4_delta{k}"));
        assert!(is(&w, &format!("x{k}")), "delta{k}: {w}");
    }
    for k in 1..=2 {
        let w = word(&format!("rc4_Gamma{k}"));
        assert!(is(&w, &format!("x{}", k + 1)), "Gamma{k}: {w}");
    }
}

#[test]
fn purity_examples() {
    let (pure, _) = trace_pure_check(&builtin("qc3_beta").unwrap()).unwrap();
    assert!(pure);
    let (pure, perm) = trace_pure_check(&builtin("qc3_gamma1").unwrap()).unwrap();
    assert!(!pure);
    assert_eq!(fmt_permutation(&perm), "(12)");
    let g = builtin("gamma3").unwrap();
    let (pure, _) = trace_pure_check(&g.concat(&g.invert()).unwrap()).unwrap();
    assert!(pure);
}

#[test]
fn collision_is_reported() {
    let l = parse("loop n=2 { [0,1]: X^2 - (2t - 1)^2 }").unwrap();
    let opts = TraceOptions { precision: Precision::Double, ..TraceOptions::default() };
    match trace(&l, &opts) {
        Err(Error::RootsCollide { t, .. }) => assert!((t - 0.5).abs() < 1e-3, "{t}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn h_homotopy() {
    let h = h_poly(c64(0.0, 0.0), 0.0);
    let d = discriminant_oracle(&roots(&h).unwrap());
    assert!((d - c64(108.0, 0.0)).norm() < 1e-10, "{d}");
    for s in [-2.5, -1.0, 0.3, 1.7] {
        let p = h_poly(c64(s, 0.5 * s), 0.0);
        assert!((p.coeff(1) - c64(-3.0, 0.0)).norm() < 1e-15);
    }
    let rep = verify_h_discriminant(64).unwrap();
    assert_eq!(rep.points, 64 * 64);
    assert!(rep.max_disc_deviation < 1e-9, "{}", rep.max_disc_deviation);
    assert!(rep.max_boundary_deviation < 1e-12, "{}", rep.max_boundary_deviation);
}

#[test]
fn step_halving_is_stable() {
    let half = TraceOptions { max_step: TraceOptions::default().max_step / 2.0, ..TraceOptions::default() };
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        if l.n < 2 {
            continue;
        }
        let a = run(&l);
        let b = trace(&l, &half).unwrap();
        assert!(braid_equal(&a.word, &b.word).unwrap(), "{name}: {} vs {}", a.word, b.word);
        assert_eq!(a.permutation, b.permutation, "{name}");
    }
}

#[test]
fn inverse_law() {
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        if l.n < 2 {
            continue;
        }
        let w = run(&l).word;
        let v = run(&l.invert()).word;
        assert!(braid_equal(&v, &w.inverse()).unwrap(), "{name}: {v} vs {w}");
    }
}

#[test]
fn concatenation_law() {
    let mut loops: Vec<(String, LoopSpec)> = builtin_names()
        .into_iter()
        .map(|n| (n.clone(), builtin(&n).unwrap()))
        .filter(|(_, l)| l.n >= 2)
        .collect();
    loops.sort_by(|a, b| a.0.cmp(&b.0));
    let mut pairs = 0;
    for (na, a) in &loops {
        for (nb, b) in &loops {
            let Ok(c) = a.concat(b) else { continue };
            let expect = run(a).word.concat(&run(b).word).unwrap();
            assert!(braid_equal(&run(&c).word, &expect).unwrap(), "{na} . {nb}");
            pairs += 1;
        }
    }
    assert!(pairs >= 40, "{pairs}");
}

#[test]
fn endpoint_matching() {
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        if l.n < 2 {
            continue;
        }
        let r = recorded(&l);
        let path = r.path.as_ref().unwrap();
        let first = &path.positions[0];
        let last = &path.positions[path.positions.len() - 1];
        for (s, z) in last.iter().enumerate() {
            let nearest = (0..first.len())
                .min_by(|&i, &j| (z - first[i]).norm().partial_cmp(&(z - first[j]).norm()).unwrap())
                .unwrap();
            assert_eq!(nearest, r.permutation[s], "{name} strand {s}");
        }
        assert_eq!(r.word.permutation(), r.permutation, "{name}");
        assert_eq!(path.matching, r.permutation, "{name}");
        if r.word.is_empty() {
            assert!(r.permutation.iter().enumerate().all(|(i, &p)| i == p), "{name}");
        }
    }
}

#[test]
fn separating_lines() {
    let cases: [(&str, &[f64]); 5] = [
        ("rc4_delta1", &[1.0, 3.0]),
        ("rc4_delta2", &[0.0, 3.0]),
        ("rc4_delta3", &[1.0]),
        ("rc4_Gamma1", &[0.0, 3.0]),
        ("rc4_Gamma2", &[0.0, 1.0]),
    ];
    for (name, lines) in cases {
        let r = recorded(&builtin(name).unwrap());
        let path = r.path.unwrap();
        for &c in lines {
            let d = min_distance_to_line(&path, c);
            assert!(d > 1e-6, "{name}: Re = {c} at distance {d}");
        }
    }
}

#[test]
fn qc3_relations() {
    let g1 = builtin("qc3_gamma1").unwrap();
    let sq = run(&g1.concat(&g1).unwrap()).word;
    assert!(braid_equal(&sq, &word("qc3_alpha_1")).unwrap());
    assert!(is(&word("qc3_alpha_1"), "x1 x1"));
    let c = builtin("qc3_alpha_1").unwrap().conjugate(&builtin("qc3_gamma2").unwrap()).unwrap();
    assert!(braid_equal(&run(&c).word, &word("lift_g2a1g2inv")).unwrap());
}

#[test]
fn crossings_are_well_separated() {
    for name in builtin_names() {
        let l = builtin(&name).unwrap();
        if l.n < 2 {
            continue;
        }
        let r = run(&l);
        assert_eq!(r.crossings.len(), r.word.len(), "{name}");
        for e in &r.crossings {
            assert!(e.im_gap > 1e-9, "{name}: {e:?}");
            assert!(e.sign == 1 || e.sign == -1);
        }
        assert!(r.min_separation > 1e-9, "{name}");
    }
}
