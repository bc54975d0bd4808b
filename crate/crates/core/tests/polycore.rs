mod common;

use common::{c64, poly, small_real};
use num_complex::Complex;
use proptest::prelude::*;
use rconf_core::format::fmt_poly;
use rconf_core::poly::{elem_symmetric, int, real, to_approx};
use rconf_core::restricted::rational_to_f64;
use rconf_core::roots::{discriminant_oracle, min_separation, min_separation_checked, roots_exact};
use rconf_core::{Error, ExactComplex, Poly};
use twofloat::TwoFloat;

#[test]
fn derive_examples() {
    assert_eq!(fmt_poly(&poly("[-1/3, 0, 6, -16/3, 1]").derive()), "[0, 12, -16, 4]");
    assert_eq!(fmt_poly(&poly("[0, -3, 0, 1]").derive()), "[-3, 0, 3]");
    assert!(poly("[7]").derive().is_zero());
}

#[test]
fn primitive_examples() {
    assert_eq!(fmt_poly(&poly("[-3, 0, 3]").primitive()), "[0, -3, 0, 1]");
    assert!(poly("[]").primitive().is_zero());
    assert_eq!(fmt_poly(&poly("[0, 12, -16, 4]").primitive()), "[0, 0, 6, -16/3, 1]");
}

#[test]
fn eval_examples() {
    let p = poly("[0, -3, 0, 1]");
    assert_eq!(p.eval(&real(int(1))), real(int(-2)));
    let q = poly("[5/7, 2, 3]");
    assert_eq!(q.eval(&real(int(0))), real(rconf_core::poly::rat(5, 7)));
    let r = poly("[0, 0, 6, -16/3, 1]");
    assert_eq!(r.eval(&real(int(3))), real(int(-9)));
    let approx = to_approx::<f64>(&p).eval(&c64(1.0, 0.0));
    assert_eq!(approx, c64(-2.0, 0.0));
}

#[test]
fn discriminant_examples() {
    assert_eq!(poly("[0, -3, 0, 1]").discriminant().unwrap(), real(int(108)));
    assert_eq!(poly("[-1, 0, 1]").discriminant().unwrap(), real(int(4)));
    assert_eq!(poly("[1, -2, 1]").discriminant().unwrap(), real(int(0)));
    assert_eq!(poly("[5]").discriminant(), Err(Error::ConstantPolynomial));
    assert_eq!(Error::ConstantPolynomial.to_string(), "constant polynomial");
}

#[test]
fn discriminant_non_monic_scaling() {
    let p = poly("[-2, 0, 2]");
    assert_eq!(p.discriminant().unwrap(), real(int(16)));
}

#[test]
fn oracle_examples() {
    assert_eq!(discriminant_oracle(&[c64(-1.0, 0.0), c64(1.0, 0.0)]), c64(4.0, 0.0));
    let s = 3f64.sqrt();
    let d = discriminant_oracle(&[c64(-s, 0.0), c64(0.0, 0.0), c64(s, 0.0)]);
    assert!((d - c64(108.0, 0.0)).norm() < 1e-12);
    assert_eq!(discriminant_oracle(&[c64(2.0, 3.0)]), c64(1.0, 0.0));
}

fn assert_roots(p: &Poly<ExactComplex>, expect: &[f64]) {
    let r = roots_exact::<f64>(p).unwrap();
    assert_eq!(r.len(), expect.len());
    for (z, e) in r.iter().zip(expect) {
        assert!((z - c64(*e, 0.0)).norm() < 1e-13, "{z} vs {e}");
    }
}

#[test]
fn roots_examples() {
    let s3 = 3f64.sqrt();
    let s7 = 7f64.sqrt();
    assert_roots(&poly("[0, -3, 0, 1]"), &[-s3, 0.0, s3]);
    assert_roots(&poly("[-1/3, 0, 6, -16/3, 1]"), &[(2.0 - s7) / 3.0, 2.0 - s3, (2.0 + s7) / 3.0, 2.0 + s3]);
    assert_roots(&poly("[-1, 0, 1]"), &[-1.0, 1.0]);
    assert_eq!(roots_exact::<f64>(&poly("[3]")), Err(Error::ConstantPolynomial));
}

#[test]
fn separation_examples() {
    assert_eq!(min_separation_checked(&[c64(-1.0, 0.0), c64(1.0, 0.0)]).unwrap(), 2.0);
    let s = 3f64.sqrt();
    let d = min_separation_checked(&[c64(-s, 0.0), c64(0.0, 0.0), c64(s, 0.0)]).unwrap();
    assert!((d - s).abs() < 1e-15);
    assert_eq!(min_separation(&[c64(0.0, 0.0), c64(1.0, 0.0), c64(3.0, 0.0)]), 1.0);
    assert_eq!(
        min_separation_checked(&[c64(0.0, 0.0)]),
        Err(Error::TooFewPoints { needed: 2, got: 1 })
    );
}

#[test]
fn elem_symmetric_examples() {
    let v = [int(0), int(1), int(3)];
    assert_eq!(elem_symmetric(&v, 1).unwrap(), int(4));
    assert_eq!(elem_symmetric(&v, 0).unwrap(), int(1));
    assert_eq!(elem_symmetric(&[int(5), int(-2)], 0).unwrap(), int(1));
    assert_eq!(elem_symmetric(&v, 3).unwrap(), int(0));
    assert!(matches!(elem_symmetric(&v, 4), Err(Error::IndexOutOfRange(_))));
}

fn int_monic(deg: usize) -> impl Strategy<Value = Poly<ExactComplex>> {
    proptest::collection::vec(-10i64..=10, deg).prop_map(|c| {
        let mut v: Vec<ExactComplex> = c.into_iter().map(|k| real(int(k))).collect();
        v.push(real(int(1)));
        Poly::new(v)
    })
}

fn rel_dev(a: Complex<f64>, b: Complex<f64>) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derive_inverts_primitive(c in proptest::collection::vec(small_real(), 0..=11)) {
        let q = Poly::new(c);
        prop_assert_eq!(q.primitive().derive(), q);
    }

    #[test]
    fn discriminant_matches_root_oracle(p in (1usize..=8).prop_flat_map(int_monic)) {
        let d = p.discriminant().unwrap();
        let exact = c64(rational_to_f64(&d.re), rational_to_f64(&d.im));
        let r = roots_exact::<TwoFloat>(&p).unwrap();
        let o = discriminant_oracle(&r);
        let o = c64(o.re.hi(), o.im.hi());
        prop_assert!(rel_dev(exact, o) < 1e-9, "{} vs {}", exact, o);
    }

    #[test]
    fn depressed_cubic_formula(p in common::small_rational(), q in common::small_rational()) {
        let f = Poly::new(vec![real(q.clone()), real(p.clone()), real(int(0)), real(int(1))]);
        let expect = -int(4) * &p * &p * &p - int(27) * &q * &q;
        prop_assert_eq!(f.discriminant().unwrap(), real(expect));
    }

    #[test]
    fn roots_stable_under_precision_doubling(p in (1usize..=8).prop_flat_map(int_monic)) {
        let lo = roots_exact::<f64>(&p).unwrap();
        prop_assume!(lo.len() < 2 || min_separation(&lo) > 1e-6);
        let hi = roots_exact::<TwoFloat>(&p).unwrap();
        for z in &lo {
            let best = hi.iter().map(|w| (z - c64(w.re.hi(), w.im.hi())).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-10, "{} off by {}", z, best);
        }
    }
}
