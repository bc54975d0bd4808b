//! Braid words, free groups and the Artin action.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Free-group word: letter `k > 0` is `y_k`, `-k` is its inverse.
pub type FreeWord = Vec<i32>;

/// Cancel adjacent inverse pairs.
pub fn free_reduce(w: &[i32]) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Inverse of a free word.
pub fn free_inverse(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|x| -x).collect()
}

/// Braid word on `n` strands; letter `k > 0` is `x_k`, `-k` is `x_k^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// Word from signed generator indices.
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange(String::from("a braid needs at least one strand")));
        }
        for &x in &letters {
            if x == 0 || x.unsigned_abs() as usize >= n {
                return Err(Error::IndexOutOfRange(format!("generator x{} on {n} strands", x.unsigned_abs())));
            }
        }
        Ok(BraidWord { n, letters })
    }

    /// The empty word.
    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// `x_i^{sign}`.
    pub fn generator(n: usize, i: usize, inverse: bool) -> Result<Self> {
        let k = i as i32;
        Self::new(n, vec![if inverse { -k } else { k }])
    }

    /// Strand count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Signed letters.
    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Letters as `(index, exponent)`.
    pub fn pairs(&self) -> Vec<(usize, i32)> {
        self.letters.iter().map(|&x| (x.unsigned_abs() as usize, x.signum())).collect()
    }

    /// Word length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Whether the word is empty.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Append one letter.
    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0 && (letter.unsigned_abs() as usize) < self.n);
        self.letters.push(letter);
    }

    /// Cancel adjacent inverse pairs.
    pub fn free_reduce(&self) -> Self {
        BraidWord { n: self.n, letters: free_reduce(&self.letters) }
    }

    /// Inverse word.
    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, letters: free_inverse(&self.letters) }
    }

    /// `self * other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n, right: other.n });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// `self^k`.
    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    /// Final position of the strand starting at each position (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.n).collect();
        for &x in &self.letters {
            let a = x.unsigned_abs() as usize - 1;
            for p in pos.iter_mut() {
                if *p == a {
                    *p = a + 1;
                } else if *p == a + 1 {
                    *p = a;
                }
            }
        }
        pos
    }

    /// Exponent sum of each generator `x_1 .. x_{n-1}`.
    pub fn exponent_sum(&self) -> Vec<i64> {
        let mut s = vec![0i64; self.n.saturating_sub(1)];
        for &x in &self.letters {
            s[x.unsigned_abs() as usize - 1] += i64::from(x.signum());
        }
        s
    }

    /// Parse `x1 x2^-1 ...`; `e` or an empty string is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|s| !s.is_empty()) {
            if tok == "e" || tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.trim_matches(|c| c == '(' || c == ')').parse::<i32>().ok()),
                None => (tok, Some(1)),
            };
            let idx = base.strip_prefix('x').and_then(|s| s.parse::<i32>().ok());
            let (Some(idx), Some(exp)) = (idx, exp) else {
                return Err(Error::UnknownGenerator(tok.to_string()));
            };
            for _ in 0..exp.unsigned_abs() {
                letters.push(if exp < 0 { -idx } else { idx });
            }
        }
        Self::new(n, letters)
    }

    /// Tokens like `x1`, `x2^-1`.
    pub fn tokens(&self) -> Vec<String> {
        self.letters
            .iter()
            .map(|&x| if x > 0 { format!("x{x}") } else { format!("x{}^-1", -x) })
            .collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        f.write_str(&self.tokens().join(" "))
    }
}

/// Cycle notation, 1-based, e.g. `(13)`; the identity is `()`.
pub fn fmt_permutation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let sep = if perm.len() >= 10 { " " } else { "" };
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            cyc.push((k + 1).to_string());
            k = perm[k];
        }
        out.push('(');
        out.push_str(&cyc.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Automorphism of the free group of the given rank, stored by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAutomorphism {
    /// Rank.
    pub rank: usize,
    /// Reduced image of each `y_k`.
    pub images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    /// The identity.
    pub fn identity(rank: usize) -> Self {
        FreeAutomorphism { rank, images: (1..=rank as i32).map(|k| vec![k]).collect() }
    }

    /// Image of a word.
    pub fn apply(&self, w: &[i32]) -> FreeWord {
        let mut out = Vec::new();
        for &x in w {
            let img = &self.images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(free_inverse(img));
            }
        }
        free_reduce(&out)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        FreeAutomorphism { rank: self.rank, images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    /// Whether every generator is fixed.
    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }
}

fn artin_letter(rank: usize, x: i32) -> FreeAutomorphism {
    let mut f = FreeAutomorphism::identity(rank);
    let i = x.unsigned_abs() as i32;
    let (a, b) = (i as usize - 1, i as usize);
    if x > 0 {
        f.images[a] = vec![i, i + 1, -i];
        f.images[b] = vec![i];
    } else {
        f.images[a] = vec![i + 1];
        f.images[b] = vec![-(i + 1), i, i + 1];
    }
    f
}

/// Artin action `x_i: y_i -> y_i y_{i+1} y_i^{-1}, y_{i+1} -> y_i`, composed left to right.
pub fn artin_act(w: &BraidWord) -> FreeAutomorphism {
    let mut acc = FreeAutomorphism::identity(w.n);
    for &x in &w.letters {
        acc = acc.compose(&artin_letter(w.n, x));
    }
    acc
}

/// Equality in the braid group.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::StrandMismatch { left: a.n, right: b.n });
    }
    let d = a.concat(&b.inverse())?.free_reduce();
    Ok(artin_act(&d).is_identity())
}

/// `A_ij = (x_{j-1} .. x_{i+1}) x_i^2 (x_{i+1}^{-1} .. x_{j-1}^{-1})`.
pub fn aij_word(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexOutOfRange(format!("A_{i}{j} on {n} strands")));
    }
    let mut letters: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
    letters.extend([i as i32, i as i32]);
    letters.extend((i + 1..j).map(|k| -(k as i32)));
    BraidWord::new(n, letters)
}

/// `Delta_n = x_1 (x_2 x_1) .. (x_{n-1} .. x_1)`.
pub fn garside(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("Delta_{n} needs n >= 2")));
    }
    let mut letters = Vec::new();
    for k in 1..n {
        letters.extend((1..=k).rev().map(|x| x as i32));
    }
    BraidWord::new(n, letters)
}

/// Word over named generators: `(generator index, exponent)` with exponent `±1`.
pub type GroupWord = Vec<(usize, i32)>;

/// Group presets with decidable equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Free group on the named generators.
    Free,
    /// Braid group; generators `x1 .. x_{n-1}`.
    Braid(usize),
    /// `F(free) x| F(acting)`, the single acting generator permuting free generators up to inversion.
    Semidirect {
        /// Index of the acting generator among all generators.
        acting: usize,
        /// Image of each free generator under conjugation by the acting one (signed, 1-based over free generators).
        image: Vec<i32>,
    },
}

/// A group with named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    /// Display name.
    pub name: String,
    /// Generator names.
    pub generators: Vec<String>,
    /// Structure.
    pub kind: GroupKind,
}

impl GroupSpec {
    /// Free group.
    pub fn free(names: &[&str]) -> Self {
        GroupSpec {
            name: format!("F{}", names.len()),
            generators: names.iter().map(|s| s.to_string()).collect(),
            kind: GroupKind::Free,
        }
    }

    /// Braid group on `n` strands.
    pub fn braid(n: usize) -> Self {
        GroupSpec {
            name: format!("B{n}"),
            generators: (1..n).map(|k| format!("x{k}")).collect(),
            kind: GroupKind::Braid(n),
        }
    }

    /// Semidirect product of a free group by an infinite cyclic group acting through
    /// the rewriting rules `t a -> image(a) t`, given as `(a, image)` name pairs
    /// (an image may carry a trailing `^-1`).
    pub fn semidirect(name: &str, free: &[&str], acting: &str, rules: &[(&str, &str)]) -> Result<Self> {
        let mut generators: Vec<String> = free.iter().map(|s| s.to_string()).collect();
        generators.push(acting.to_string());
        let find = |s: &str| free.iter().position(|g| *g == s);
        let mut image = vec![0i32; free.len()];
        for (a, b) in rules {
            let i = find(a).ok_or_else(|| Error::InvalidGroup(format!("`{a}` is not a free generator")))?;
            let (b, inv) = match b.strip_suffix("^-1") {
                Some(s) => (s, true),
                None => (*b, false),
            };
            let j = find(b).ok_or_else(|| Error::InvalidGroup(format!("`{b}` is not a free generator")))?;
            if image[i] != 0 {
                return Err(Error::InvalidGroup(format!("two rules for `{a}`")));
            }
            image[i] = if inv { -(j as i32 + 1) } else { j as i32 + 1 };
        }
        for (i, v) in image.iter_mut().enumerate() {
            if *v == 0 {
                *v = i as i32 + 1;
            }
        }
        let mut hit = vec![false; free.len()];
        for v in &image {
            let k = v.unsigned_abs() as usize - 1;
            if hit[k] {
                return Err(Error::InvalidGroup(String::from("rules are not invertible: two generators share an image")));
            }
            hit[k] = true;
        }
        Ok(GroupSpec {
            name: name.to_string(),
            generators,
            kind: GroupKind::Semidirect { acting: free.len(), image },
        })
    }

    /// Named presets: `B<n>`, `F<n>`, `RB3`.
    pub fn preset(name: &str) -> Result<Self> {
        if name == "RB3" {
            return Self::semidirect("RB3", &["alpha", "beta"], "gamma", &[("alpha", "beta"), ("beta", "alpha")]);
        }
        if let Some(n) = name.strip_prefix('B').and_then(|s| s.parse::<usize>().ok()) {
            if n >= 1 {
                return Ok(Self::braid(n));
            }
        }
        if let Some(n) = name.strip_prefix('F').and_then(|s| s.parse::<usize>().ok()) {
            let names: Vec<String> = match n {
                1..=3 => ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect(),
                _ => (1..=n).map(|k| format!("y{k}")).collect(),
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            return Ok(Self::free(&refs));
        }
        Err(Error::InvalidGroup(format!("unknown group preset `{name}`; available: B<n>, F<n>, RB3")))
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        let alias = match name {
            "α" => "alpha",
            "β" => "beta",
            "γ" => "gamma",
            other => other,
        };
        self.generators.iter().position(|g| g == alias)
    }

    /// Parse space-separated tokens `g`, `g^-1`, `g^k`.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let mut out = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()) {
            if tok == "e" || tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.trim_matches(|c| c == '(' || c == ')').parse::<i32>().ok()),
                None => (tok, Some(1)),
            };
            let (Some(g), Some(exp)) = (self.lookup(base), exp) else {
                return Err(Error::UnknownGenerator(tok.to_string()));
            };
            for _ in 0..exp.unsigned_abs() {
                out.push((g, exp.signum()));
            }
        }
        Ok(out)
    }

    /// Text form of a word.
    pub fn word_text(&self, w: &[(usize, i32)]) -> String {
        if w.is_empty() {
            return String::from("e");
        }
        let toks: Vec<String> = w
            .iter()
            .map(|&(g, e)| if e > 0 { self.generators[g].clone() } else { format!("{}^-1", self.generators[g]) })
            .collect();
        toks.join(" ")
    }

    fn check(&self, w: &[(usize, i32)]) -> Result<()> {
        for &(g, e) in w {
            if g >= self.generators.len() || e.abs() != 1 {
                return Err(Error::UnknownGenerator(format!("#{g}")));
            }
        }
        Ok(())
    }

    /// Normal form: freely reduced free part followed by a power of the acting generator.
    pub fn normal_form(&self, w: &[(usize, i32)]) -> Result<(FreeWord, i32)> {
        self.check(w)?;
        match &self.kind {
            GroupKind::Free => {
                let f: FreeWord = w.iter().map(|&(g, e)| (g as i32 + 1) * e).collect();
                Ok((free_reduce(&f), 0))
            }
            GroupKind::Braid(_) => Err(Error::InvalidGroup(String::from("braid groups have no word normal form here"))),
            GroupKind::Semidirect { acting, image } => {
                let m = image.len();
                let mut inv = vec![0i32; m];
                for (i, &v) in image.iter().enumerate() {
                    let k = v.unsigned_abs() as usize - 1;
                    inv[k] = (i as i32 + 1) * v.signum();
                }
                let mut free = Vec::new();
                let mut k: i32 = 0;
                for &(g, e) in w {
                    if g == *acting {
                        k += e;
                        continue;
                    }
                    let mut x = (g as i32 + 1) * e;
                    let table = if k >= 0 { image } else { &inv };
                    for _ in 0..k.unsigned_abs() {
                        let y = table[x.unsigned_abs() as usize - 1];
                        x = if x > 0 { y } else { -y };
                    }
                    free.push(x);
                }
                Ok((free_reduce(&free), k))
            }
        }
    }

    /// Equality of two words in this group.
    pub fn decide_equal(&self, a: &[(usize, i32)], b: &[(usize, i32)]) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        match &self.kind {
            GroupKind::Braid(n) => {
                let to = |w: &[(usize, i32)]| BraidWord::new(*n, w.iter().map(|&(g, e)| (g as i32 + 1) * e).collect());
                braid_equal(&to(a)?, &to(b)?)
            }
            _ => Ok(self.normal_form(a)? == self.normal_form(b)?),
        }
    }

    /// Exponent sum of each generator.
    pub fn exponent_sum(&self, w: &[(usize, i32)]) -> Vec<i64> {
        let mut s = vec![0i64; self.generators.len()];
        for &(g, e) in w {
            s[g] += i64::from(e);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    #[test]
    fn artin_generator() {
        let f = artin_act(&w(2, "x1"));
        assert_eq!(f.images, vec![vec![1, 2, -1], vec![1]]);
        assert!(artin_act(&w(3, "x1 x2 x2^-1 x1^-1")).is_identity());
    }

    #[test]
    fn equality() {
        assert!(braid_equal(&w(3, "x1 x2 x1"), &w(3, "x2 x1 x2")).unwrap());
        assert!(!braid_equal(&w(3, "x1 x2"), &w(3, "x2 x1")).unwrap());
        assert!(braid_equal(&w(3, ""), &w(3, "x1 x1^-1")).unwrap());
        let d = garside(3).unwrap();
        assert!(braid_equal(&d.pow(2), &w(3, "x1 x2").pow(3)).unwrap());
        assert!(braid_equal(&w(4, "x1 x3"), &w(4, "x3 x1")).unwrap());
        assert!(matches!(braid_equal(&w(3, "x1"), &w(4, "x1")), Err(Error::StrandMismatch { .. })));
    }

    #[test]
    fn permutations() {
        assert_eq!(fmt_permutation(&garside(3).unwrap().permutation()), "(13)");
        assert_eq!(fmt_permutation(&w(4, "x2").permutation()), "(23)");
        assert_eq!(fmt_permutation(&aij_word(1, 2, 3).unwrap().permutation()), "()");
        assert_eq!(w(3, "x1 x2 x1").exponent_sum(), vec![2, 1]);
        assert_eq!(w(3, "x1 x2").pow(3).exponent_sum(), vec![3, 3]);
        assert_eq!(garside(3).unwrap().pow(2).exponent_sum(), vec![4, 2]);
    }

    #[test]
    fn aij() {
        assert_eq!(aij_word(1, 3, 3).unwrap().to_string(), "x2 x1 x1 x2^-1");
        assert_eq!(aij_word(2, 3, 3).unwrap().to_string(), "x2 x2");
        assert!(aij_word(2, 2, 3).is_err());
        assert_eq!(garside(2).unwrap().to_string(), "x1");
        assert_eq!(garside(4).unwrap().to_string(), "x1 x2 x1 x3 x2 x1");
    }

    #[test]
    fn groups() {
        let rb = GroupSpec::preset("RB3").unwrap();
        let p = |s: &str| rb.parse_word(s).unwrap();
        assert!(rb.decide_equal(&p("gamma alpha"), &p("beta gamma")).unwrap());
        assert!(rb.decide_equal(&p("γ β γ^-1"), &p("α")).unwrap());
        assert!(!rb.decide_equal(&p("alpha beta"), &p("beta alpha")).unwrap());
        let f2 = GroupSpec::preset("F2").unwrap();
        assert!(f2.decide_equal(&f2.parse_word("a a^-1").unwrap(), &[]).unwrap());
        assert!(f2.parse_word("z").is_err());
        let b3 = GroupSpec::preset("B3").unwrap();
        assert!(b3.decide_equal(&b3.parse_word("x1 x2 x1").unwrap(), &b3.parse_word("x2 x1 x2").unwrap()).unwrap());
    }
}
