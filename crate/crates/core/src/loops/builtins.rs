//! Named loops.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{parse, LoopSpec};
use crate::error::{Error, Result};
use crate::format::fmt_rational;
use crate::poly::{int, rat, Rational};

/// Radius of the small circles in the fiber loops.
pub const EPS: &str = "1/1024";

const NAMES: &[&str] = &[
    "gamma3",
    "alpha3",
    "beta3",
    "qc3_alpha_1",
    "qc3_alpha_0",
    "qc3_alpha_mhalf",
    "qc3_alpha_m1",
    "qc3_alpha_m2",
    "qc3_beta",
    "qc3_gamma1",
    "qc3_gamma2",
    "rc4_delta1",
    "rc4_delta2",
    "rc4_delta3",
    "rc4_Gamma1",
    "rc4_Gamma2",
    "Gamma4_1",
    "Gamma4_2",
    "fiber_d1",
    "fiber_d2",
    "fiber_d3",
    "lift_g2a1g2inv",
    "lift_commutator",
];

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

type Piece<'a> = (&'a str, &'a str, &'a str);

fn pieces_text(n: usize, space: &str, pieces: &[Piece]) -> String {
    let body: Vec<String> = pieces.iter().map(|(a, b, e)| format!("  [{a}, {b}]: {e}")).collect();
    format!("loop n={n} space={space} {{\n{}\n}}\n", body.join(";\n"))
}

fn roots_text(pieces: &[(&str, &str, [String; 3])]) -> String {
    let polys: Vec<String> = pieces
        .iter()
        .map(|(_, _, z)| format!("4(X - ({}))(X - ({}))(X - ({}))", z[0], z[1], z[2]))
        .collect();
    let p: Vec<Piece> = pieces.iter().zip(&polys).map(|((a, b, _), e)| (*a, *b, e.as_str())).collect();
    pieces_text(3, "qc", &p)
}

fn three(a: &str, b: &str, c: &str) -> [String; 3] {
    [a.to_string(), b.to_string(), c.to_string()]
}

fn a_path(sign: &str) -> String {
    let p = [
        ("0", "1/3", format!("X^3 - 3X {sign} 27/5 t")),
        ("1/3", "2/3", format!("X^3 - 3X {sign} (2 + 1/5 E(-6t+3))")),
        ("2/3", "1", format!("X^3 - 3X {sign} 27/5 (1 - t)")),
    ];
    let v: Vec<Piece> = p.iter().map(|(a, b, e)| (*a, *b, e.as_str())).collect();
    pieces_text(3, "rc", &v)
}

fn alpha_h(h: Rational) -> String {
    let c = fmt_rational(&((&h + int(1)) / int(2)));
    let r = fmt_rational(&((int(5) - int(3) * &h) / int(6)));
    let mid = format!("{c} + {r} E(6t)");
    let pieces = [("0", "1/3", "4 - 8t".to_string()), ("1/3", "2/3", mid), ("2/3", "1", "8t - 4".to_string())];
    let rows: Vec<(&str, &str, [String; 3])> = pieces
        .iter()
        .map(|(a, b, s)| (*a, *b, [format!("(4 - ({s}))/3"), "1".to_string(), format!("(({s}) + 5)/3")]))
        .collect();
    roots_text(&rows)
}

fn fiber(k: usize) -> Vec<(&'static str, &'static str, String)> {
    let e = format!("({EPS})");
    match k {
        1 => [
            ("0", "1/3", format!("(1 - 3{e})t - 1/3")),
            ("1/3", "2/3", format!("-{e} E(6t)")),
            ("2/3", "1", format!("(3{e} - 1)t + (2/3 - 3{e})")),
        ]
        .into(),
        2 => [
            ("0", "1/3", format!("(3{e} - 4)t - 1/3")),
            ("1/3", "2/3", format!("-5/3 + {e} E(6t)")),
            ("2/3", "1", format!("(4 - 3{e})t + (3{e} - 13/3)")),
        ]
        .into(),
        _ => [
            ("0", "1/12", format!("(4 - 12{e})t - 1/3")),
            ("1/12", "1/4", format!("{e} i E(6t)")),
            ("1/4", "1/3", format!("(108 - 24{e})t + (7{e} - 27)")),
            ("1/3", "2/3", format!("9 - {e} E(6t)")),
            ("2/3", "3/4", format!("(24{e} - 108)t + (81 - 17{e})")),
            ("3/4", "11/12", format!("{e} i E(-6t)")),
            ("11/12", "1", format!("(12{e} - 4)t + (11/3 - 12{e})")),
        ]
        .into(),
    }
}

fn fiber_text(k: usize, lift: bool) -> String {
    let rows: Vec<(&str, &str, String)> = fiber(k)
        .into_iter()
        .map(|(a, b, d)| (a, b, if lift { format!("X^4 - 16/3 X^3 + 6X^2 + ({d})") } else { d }))
        .collect();
    let v: Vec<Piece> = rows.iter().map(|(a, b, e)| (*a, *b, e.as_str())).collect();
    if lift {
        pieces_text(4, "rc", &v)
    } else {
        pieces_text(0, "c", &v)
    }
}

/// Loop text of a builtin.
pub fn builtin_text(name: &str) -> Result<String> {
    Ok(match name {
        "gamma3" => pieces_text(3, "rc", &[("0", "1", "X^3 - 3E(2t)X")]),
        "alpha3" => a_path("+"),
        "beta3" => a_path("-"),
        "qc3_alpha_1" => alpha_h(int(1)),
        "qc3_alpha_0" => alpha_h(int(0)),
        "qc3_alpha_mhalf" => alpha_h(rat(-1, 2)),
        "qc3_alpha_m1" => alpha_h(int(-1)),
        "qc3_alpha_m2" => alpha_h(int(-2)),
        "qc3_beta" => roots_text(&[("0", "1", three("(4 - 4E(2t))/3", "(4 - E(2t))/3", "(5E(2t) + 4)/3"))]),
        "qc3_gamma1" => pieces_text(3, "qc", &[("0", "1", "4(X - 3)(X^2 - X + 1/4 - 1/4 E(2t))")]),
        "qc3_gamma2" => pieces_text(3, "qc", &[("0", "1", "4X(X^2 - 4X + 4 - E(2t))")]),
        "rc4_delta1" => fiber_text(1, true),
        "rc4_delta2" => fiber_text(2, true),
        "rc4_delta3" => fiber_text(3, true),
        "rc4_Gamma1" | "Gamma4_1" => pieces_text(
            4,
            "rc",
            &[("0", "1", "X^4 - 16/3 X^3 + (13/2 - 1/2 E(2t))X^2 + (3E(2t) - 3)X - 1/3")],
        ),
        "rc4_Gamma2" | "Gamma4_2" => {
            pieces_text(4, "rc", &[("0", "1", "X^4 - 16/3 X^3 + (8 - 2E(2t))X^2 - 1/3")])
        }
        "fiber_d1" => fiber_text(1, false),
        "fiber_d2" => fiber_text(2, false),
        "fiber_d3" => fiber_text(3, false),
        "lift_g2a1g2inv" => roots_text(&[
            ("0", "1/3", three("0", "2 - E(3t)", "2 + E(3t)")),
            ("1/3", "4/9", three("8t - 8/3", "17/3 - 8t", "1")),
            ("4/9", "5/9", three("1 - 1/9 E(18t)", "2 + 1/9 E(18t)", "1")),
            ("5/9", "2/3", three("16/3 - 8t", "8t - 7/3", "1")),
            ("2/3", "1", three("0", "2 + E(-3t)", "2 - E(-3t)")),
        ]),
        "lift_commutator" => roots_text(&[
            ("0", "1/6", three("1/2 - 1/2 E(6t)", "1/2 + 1/2 E(6t)", "3")),
            ("1/6", "1/3", three("2 + E(6t)", "0", "2 - E(6t)")),
            ("1/3", "1/2", three("3", "1/2 - 1/2 E(6t)", "1/2 + 1/2 E(6t)")),
            ("1/2", "2/3", three("2 - E(-6t)", "2 + E(-6t)", "0")),
            ("2/3", "5/6", three("1/2 + 1/2 E(-6t)", "3", "1/2 - 1/2 E(-6t)")),
            ("5/6", "1", three("0", "2 - E(-6t)", "2 + E(-6t)")),
        ]),
        _ => return Err(Error::UnknownLoop { name: name.to_string(), available: builtin_names() }),
    })
}

/// A named loop.
pub fn builtin(name: &str) -> Result<LoopSpec> {
    parse(&builtin_text(name)?)
}


#[cfg(test)]
mod validation {
    use super::*;
    use crate::loops::min_distance;
    use num_complex::Complex;

    #[test]
    fn builtins_stay_in_their_spaces() {
        for name in NAMES {
            let l = builtin(name).unwrap();
            let r = l.validate(512);
            assert!(r.valid(), "{name}: {:?}", r.failures);
        }
        let forbidden = [Complex::new(-5.0 / 3.0, 0.0), Complex::new(0.0, 0.0), Complex::new(9.0, 0.0)];
        for k in 1..=3 {
            let d = builtin(&format!("fiber_d{k}")).unwrap();
            assert!(min_distance(&d, &forbidden, 512) > 1e-6);
        }
    }
}
