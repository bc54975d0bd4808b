#![allow(dead_code)]

use num_complex::Complex;
use proptest::prelude::*;
use rconf_core::format::parse_poly;
use rconf_core::poly::{rat, real, Rational};
use rconf_core::{ExactComplex, Poly};

pub fn poly(s: &str) -> Poly<ExactComplex> {
    parse_poly(s).unwrap()
}

pub fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

pub fn small_real() -> impl Strategy<Value = ExactComplex> {
    small_rational().prop_map(real)
}

pub fn distinct_rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), len).prop_filter("distinct", |v| {
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
    })
}

pub fn real_poly(p: &Poly<ExactComplex>) -> Poly<f64> {
    Poly::new(p.coeffs().iter().map(|c| rconf_core::restricted::rational_to_f64(&c.re)).collect())
}
