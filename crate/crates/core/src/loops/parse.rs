//! Text grammar for loops.
//!
//! ```text
//! loop   := "loop" "n" "=" INT ["space" "=" ("c" | "qc" | "rc")] "{" seg (";" seg)* [";"] "}"
//! seg    := "[" RAT "," RAT "]" ":" poly
//! poly   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary | unary)*
//! unary  := ("-" | "+") unary | atom ["^" ["("] ["-"] INT [")"]]
//! atom   := NUM | "i" | "t" | "X" | "(" poly ")" | ("E" | "conj" | "sqrt" | "cbrt") "(" poly ")"
//! ```
//! `E(q t + r)` is `e^{i pi (q t + r)}`; `#` starts a comment.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::expr::{self, Expr};
use super::{LoopSpec, Segment, Space};
use crate::error::{Error, Result};
use crate::format::{fmt_rational, parse_rational};
use crate::poly::{ExactComplex, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut k, mut line, mut col) = (0, 1, 1);
    while k < chars.len() {
        let c = chars[k];
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
            continue;
        }
        let start = (line, col);
        let tok = if c.is_ascii_digit() || (c == '.' && chars.get(k + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut s = String::new();
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                s.push(chars[k]);
                k += 1;
                col += 1;
            }
            Tok::Num(s)
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                s.push(chars[k]);
                k += 1;
                col += 1;
            }
            Tok::Ident(s)
        } else if "()[]{},;:+-*/^=".contains(c) {
            k += 1;
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Parse { line, col, msg: format!("unexpected character `{c}`") });
        };
        out.push(Token { tok, line: start.0, col: start.1 });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

/// Polynomial in `X` with expression coefficients, ascending.
type PolyE = Vec<Expr>;

fn pe_const(e: Expr) -> PolyE {
    vec![e]
}

fn pe_add(a: PolyE, b: PolyE) -> PolyE {
    let n = a.len().max(b.len());
    let mut a = a.into_iter();
    let mut b = b.into_iter();
    (0..n)
        .map(|_| match (a.next(), b.next()) {
            (Some(x), Some(y)) => expr::add(x, y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!(),
        })
        .collect()
}

fn pe_neg(a: PolyE) -> PolyE {
    a.into_iter().map(expr::neg).collect()
}

fn pe_mul(a: &PolyE, b: &PolyE) -> PolyE {
    let mut out: Vec<Vec<Expr>> = vec![Vec::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            out[i + j].push(expr::mul(x.clone(), y.clone()));
        }
    }
    out.into_iter().map(expr::sum).collect()
}

fn pe_trim(mut a: PolyE) -> PolyE {
    while a.len() > 1 && a.last().is_some_and(Expr::is_zero) {
        a.pop();
    }
    a
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Parse { line: t.line, col: t.col, msg: msg.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            _ => self.err(format!("expected `{name}`")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek().clone() {
            Tok::Num(s) if !s.contains('.') => {
                let v = s.parse::<i64>();
                match v {
                    Ok(v) => {
                        self.bump();
                        Ok(v)
                    }
                    Err(_) => self.err("integer out of range"),
                }
            }
            _ => self.err("expected an integer"),
        }
    }

    fn rat(&mut self) -> Result<Rational> {
        let neg = self.eat('-');
        let s = match self.peek().clone() {
            Tok::Num(s) => s,
            _ => return self.err("expected a rational number"),
        };
        self.bump();
        let mut text = s;
        if self.eat('/') {
            match self.peek().clone() {
                Tok::Num(d) => {
                    self.bump();
                    text = format!("{text}/{d}");
                }
                _ => return self.err("expected a denominator"),
            }
        }
        let q = match parse_rational(&text) {
            Ok(q) => q,
            Err(Error::Parse { msg, .. }) => return self.err(msg),
            Err(e) => return Err(e),
        };
        Ok(if neg { -q } else { q })
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn poly(&mut self) -> Result<PolyE> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = pe_add(acc, self.term()?);
            } else if self.eat('-') {
                acc = pe_add(acc, pe_neg(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyE> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                acc = pe_mul(&acc, &r);
            } else if *self.peek() == Tok::Sym('/') {
                self.bump();
                let r = self.unary()?;
                if pe_trim(r.clone()).len() > 1 {
                    return self.err("division by a polynomial in X");
                }
                let d = r.into_iter().next().unwrap_or(Expr::Const(ExactComplex::zero()));
                acc = acc.into_iter().map(|c| expr::div(c, d.clone())).collect();
            } else if self.starts_atom() {
                let r = self.power()?;
                acc = pe_mul(&acc, &r);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<PolyE> {
        if self.eat('-') {
            return Ok(pe_neg(self.unary()?));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyE> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = self.int()?;
        if paren {
            self.expect(')')?;
        }
        let k = if neg { -k } else { k };
        let Ok(k) = i32::try_from(k) else {
            return self.err("exponent out of range");
        };
        let base = pe_trim(base);
        if base.len() == 1 {
            return Ok(pe_const(expr::pow(base.into_iter().next().expect("constant"), k)));
        }
        if k < 0 {
            return self.err("negative power of a polynomial in X");
        }
        let mut acc = pe_const(Expr::Const(ExactComplex::one()));
        for _ in 0..k {
            acc = pe_mul(&acc, &base);
        }
        Ok(acc)
    }

    fn scalar_arg(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let inner = pe_trim(self.poly()?);
        if inner.len() > 1 {
            return self.err("argument must not involve X");
        }
        self.expect(')')?;
        Ok(inner.into_iter().next().expect("constant"))
    }

    fn atom(&mut self) -> Result<PolyE> {
        match self.peek().clone() {
            Tok::Num(_) => {
                let s = match self.bump() {
                    Tok::Num(s) => s,
                    _ => unreachable!(),
                };
                match parse_rational(&s) {
                    Ok(q) => Ok(pe_const(expr::rational(q))),
                    Err(_) => self.err(format!("invalid number `{s}`")),
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            Tok::Ident(name) => {
                let here = self.pos;
                self.bump();
                match name.as_str() {
                    "X" => Ok(vec![Expr::Const(ExactComplex::zero()), Expr::Const(ExactComplex::one())]),
                    "t" => Ok(pe_const(Expr::T)),
                    "i" => Ok(pe_const(Expr::Const(Complex::new(Rational::zero(), Rational::one())))),
                    "E" => {
                        let arg = self.scalar_arg()?;
                        match arg.affine() {
                            Some((q, r)) => Ok(pe_const(expr::exp_pi(q, r))),
                            None => {
                                self.pos = here;
                                self.err("E(...) needs a real affine argument q*t + r")
                            }
                        }
                    }
                    "conj" => Ok(pe_const(expr::conj(self.scalar_arg()?))),
                    "sqrt" => Ok(pe_const(expr::sqrt(self.scalar_arg()?))),
                    "cbrt" => Ok(pe_const(expr::cbrt(self.scalar_arg()?))),
                    _ => {
                        self.pos = here;
                        self.err(format!("unknown identifier `{name}`"))
                    }
                }
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn file(&mut self) -> Result<LoopSpec> {
        self.expect_ident("loop")?;
        self.expect_ident("n")?;
        self.expect('=')?;
        let n = self.int()?;
        let Ok(n) = usize::try_from(n) else {
            return self.err("degree must be non-negative");
        };
        let mut space = Space::C;
        if matches!(self.peek(), Tok::Ident(s) if s == "space") {
            self.bump();
            self.expect('=')?;
            space = match self.peek() {
                Tok::Ident(s) if s == "c" => Space::C,
                Tok::Ident(s) if s == "qc" => Space::QC,
                Tok::Ident(s) if s == "rc" => Space::RC,
                _ => return self.err("space must be one of c, qc, rc"),
            };
            self.bump();
        }
        self.expect('{')?;
        let mut segments = Vec::new();
        loop {
            if self.eat('}') {
                break;
            }
            self.expect('[')?;
            let a = self.rat()?;
            self.expect(',')?;
            let b = self.rat()?;
            self.expect(']')?;
            self.expect(':')?;
            let at = self.pos;
            let mut coeffs = pe_trim(self.poly()?);
            if coeffs.len() > n + 1 {
                self.pos = at;
                return self.err(format!("polynomial degree exceeds n = {n}"));
            }
            coeffs.resize(n + 1, Expr::Const(ExactComplex::zero()));
            segments.push(Segment { start: a, end: b, coeffs });
            if !self.eat(';') {
                self.expect('}')?;
                break;
            }
        }
        if *self.peek() != Tok::End {
            return self.err("trailing input");
        }
        LoopSpec::new(n, space, segments)
    }
}

/// Parse loop text.
pub fn parse(text: &str) -> Result<LoopSpec> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    p.file()
}

/// Parse a single coefficient expression (no `X`).
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = pe_trim(p.poly()?);
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    if e.len() > 1 {
        return p.err("expression must not involve X");
    }
    Ok(e.into_iter().next().expect("constant"))
}

fn poly_text(coeffs: &[Expr]) -> String {
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => String::from("X"),
            _ => format!("X^{k}"),
        };
        let one = matches!(c, Expr::Const(v) if v.is_one());
        parts.push(match (k, one) {
            (0, _) => format!("({})", c.to_text()),
            (_, true) => mono,
            (_, false) => format!("({})*{mono}", c.to_text()),
        });
    }
    if parts.is_empty() {
        String::from("0")
    } else {
        parts.join(" + ")
    }
}

/// Canonical text of a loop.
pub fn print(l: &LoopSpec) -> String {
    let mut out = format!("loop n={}", l.n);
    if l.space != Space::C {
        out.push_str(" space=");
        out.push_str(l.space.name());
    }
    out.push_str(" {\n");
    let last = l.segments.len() - 1;
    for (k, s) in l.segments.iter().enumerate() {
        out.push_str(&format!(
            "  [{}, {}]: {}{}\n",
            fmt_rational(&s.start),
            fmt_rational(&s.end),
            poly_text(&s.coeffs),
            if k == last { "" } else { ";" }
        ));
    }
    out.push('}');
    out.push('\n');
    out.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn expressions() {
        let e = parse_expr("2 + 1/5*E(-6t+3)").unwrap();
        assert_eq!(e.to_text(), "2 + 1/5*E(-6t+3)");
        assert_eq!(parse_expr(&e.to_text()).unwrap(), e);
        let f = parse_expr("27/5(1-t)").unwrap();
        assert_eq!(f.eval_exact(&rat(2, 3)), Some(Complex::new(rat(9, 5), int(0))));
        assert_eq!(parse_expr("E(t/2+1/3)").unwrap().to_text(), "E(1/2*t+1/3)");
        assert_eq!(parse_expr("conj(E(2t)) * E(2t)").unwrap(), expr::rational(int(1)));
    }

    #[test]
    fn errors_have_positions() {
        match parse("loop n=3 {\n  [0,1]: X^3 - 3*Q }") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 18)),
            other => panic!("{other:?}"),
        }
        match parse("loop n=3 { [0,1/2]: X^3 - 3*X }") {
            Err(Error::InvalidLoop(m)) => assert_eq!(m, "intervals do not cover [0,1]"),
            other => panic!("{other:?}"),
        }
        assert!(parse("loop n=2 { [0,1]: X^3 }").is_err());
        assert!(parse("loop n=2 { [0,1]: 1/X }").is_err());
    }

    #[test]
    fn round_trip() {
        let src = "loop n=3 { [0,1/3]: X^3 - 3X + 27/5 t; [1/3,2/3]: X^3 - 3X + 2 + 1/5 E(3 - 6t); [2/3,1]: X^3-3X+27/5(1-t) }";
        let l = parse(src).unwrap();
        let text = print(&l);
        let again = parse(&text).unwrap();
        assert_eq!(again, l);
        assert_eq!(print(&again), text);
    }
}
