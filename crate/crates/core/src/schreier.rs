//! Reidemeister-Schreier rewriting for kernels of maps onto permutation groups,
//! and Tietze simplification.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::braid::{free_inverse, free_reduce, FreeWord};
use crate::error::{Error, Result};

/// Permutation of `0..n`; `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

/// `(p o q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

/// Inverse permutation.
pub fn invert(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Identity on `0..n`.
pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Parse cycle notation such as `(23)`, `(1 3 2)`, `(12)(34)` or `()` on `n` points.
pub fn parse_cycles(text: &str, n: usize) -> Result<Perm> {
    let mut p = identity(n);
    let bad = || Error::Parse { line: 1, col: 1, msg: format!("invalid permutation `{text}`") };
    let mut rest = text.trim();
    if rest == "id" || rest == "1" {
        return Ok(p);
    }
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(bad)?;
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let body = &body[..body_end - 1];
        let pts: Vec<usize> = if body.contains([' ', ',']) {
            body.split([' ', ',']).filter(|s| !s.is_empty()).map(|s| s.parse::<usize>()).collect::<core::result::Result<_, _>>().map_err(|_| bad())?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if pts.iter().any(|&x| x == 0 || x > n) {
            return Err(bad());
        }
        let mut cyc = identity(n);
        for k in 0..pts.len() {
            cyc[pts[k] - 1] = pts[(k + 1) % pts.len()] - 1;
        }
        p = compose(&p, &cyc);
        rest = rest[body_end + 1..].trim_start();
    }
    let mut seen = vec![false; n];
    for &x in &p {
        if seen[x] {
            return Err(bad());
        }
        seen[x] = true;
    }
    Ok(p)
}

/// Group presentation; relators use signed 1-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// Generator names.
    pub generators: Vec<String>,
    /// Relators.
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    /// Checked constructor.
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let m = generators.len() as i32;
        for r in &relators {
            if let Some(x) = r.iter().find(|x| **x == 0 || x.abs() > m) {
                return Err(Error::UnknownGenerator(format!("#{x}")));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parse a word of tokens `g`, `g^-1`, `g^k`.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        let mut out = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()) {
            if tok == "e" || tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.trim_matches(|c| c == '(' || c == ')').parse::<i32>().ok()),
                None => (tok, Some(1)),
            };
            let g = self.generators.iter().position(|g| g == base);
            let (Some(g), Some(exp)) = (g, exp) else {
                return Err(Error::UnknownGenerator(tok.to_string()));
            };
            for _ in 0..exp.unsigned_abs() {
                out.push((g as i32 + 1) * exp.signum());
            }
        }
        Ok(out)
    }

    /// Text of a word.
    pub fn word_text(&self, w: &[i32]) -> String {
        word_text(&self.generators, w)
    }

    /// `<alpha, beta, gamma | alpha gamma beta^-1 gamma^-1, beta gamma alpha^-1 gamma^-1>`.
    pub fn rb3() -> Self {
        let g: Vec<String> = ["alpha", "beta", "gamma"].iter().map(|s| s.to_string()).collect();
        Presentation { generators: g, relators: vec![vec![1, 3, -2, -3], vec![2, 3, -1, -3]] }
    }

    /// Artin presentation of `B_n`.
    pub fn braid(n: usize) -> Self {
        let g: Vec<String> = (1..n).map(|k| format!("x{k}")).collect();
        let mut rel = Vec::new();
        for i in 1..n as i32 {
            for j in i + 1..n as i32 {
                if j == i + 1 {
                    rel.push(vec![i, j, i, -j, -i, -j]);
                } else {
                    rel.push(vec![i, j, -i, -j]);
                }
            }
        }
        Presentation { generators: g, relators: rel }
    }
}

/// Text of a word over named generators.
pub fn word_text(names: &[String], w: &[i32]) -> String {
    if w.is_empty() {
        return String::from("e");
    }
    let toks: Vec<String> = w
        .iter()
        .map(|&x| {
            let n = &names[x.unsigned_abs() as usize - 1];
            if x > 0 {
                n.clone()
            } else {
                format!("{n}^-1")
            }
        })
        .collect();
    toks.join(" ")
}

/// Homomorphism onto the permutation group generated by the images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotient {
    /// Number of points.
    pub degree: usize,
    /// Image of each generator.
    pub images: Vec<Perm>,
    /// Elements of the generated group in breadth-first order.
    pub elements: Vec<Perm>,
}

impl FiniteQuotient {
    /// Check that the images are permutations satisfying every relator.
    pub fn new(p: &Presentation, degree: usize, images: Vec<Perm>) -> Result<Self> {
        if images.len() != p.generators.len() {
            return Err(Error::InvalidGroup(format!(
                "{} images for {} generators",
                images.len(),
                p.generators.len()
            )));
        }
        for im in &images {
            let mut seen = vec![false; degree];
            if im.len() != degree || im.iter().any(|&x| x >= degree || core::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(String::from("image is not a permutation")));
            }
        }
        let mut q = FiniteQuotient { degree, images, elements: Vec::new() };
        for r in &p.relators {
            if q.image(r) != identity(degree) {
                return Err(Error::InvalidGroup(format!("relator {} is not respected", p.word_text(r))));
            }
        }
        let mut seen = BTreeMap::new();
        let mut queue = VecDeque::from([identity(degree)]);
        seen.insert(identity(degree), ());
        while let Some(g) = queue.pop_front() {
            q.elements.push(g.clone());
            for im in &q.images {
                for h in [compose(&g, im), compose(&g, &invert(im))] {
                    if seen.insert(h.clone(), ()).is_none() {
                        queue.push_back(h);
                    }
                }
            }
        }
        Ok(q)
    }

    /// Require the generated group to have the given order.
    pub fn require_order(self, order: usize) -> Result<Self> {
        if self.elements.len() != order {
            return Err(Error::NotTransitive);
        }
        Ok(self)
    }

    /// Image of a word: `phi(x_1 .. x_k) = phi(x_1) o .. o phi(x_k)`.
    pub fn image(&self, w: &[i32]) -> Perm {
        let mut acc = identity(self.degree);
        for &x in w {
            let g = &self.images[x.unsigned_abs() as usize - 1];
            acc = if x > 0 { compose(&acc, g) } else { compose(&acc, &invert(g)) };
        }
        acc
    }

    /// Order of the image group.
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Coset representatives of the kernel, one per element of the image group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Representative words; the first is empty.
    pub reps: Vec<FreeWord>,
    index: BTreeMap<Perm, usize>,
}

impl Transversal {
    /// Index of the representative of a group element.
    pub fn lookup(&self, g: &[usize]) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    /// Whether there are no cosets (never the case for a valid transversal).
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Breadth-first shortlex transversal (generators in order, each before its inverse).
pub fn schreier_transversal(p: &Presentation, q: &FiniteQuotient) -> Result<Transversal> {
    let mut index = BTreeMap::new();
    let mut reps: Vec<FreeWord> = vec![Vec::new()];
    index.insert(identity(q.degree), 0);
    let mut k = 0;
    while k < reps.len() {
        let r = reps[k].clone();
        for g in 1..=p.generators.len() as i32 {
            for x in [g, -g] {
                let mut w = r.clone();
                w.push(x);
                let img = q.image(&w);
                if let alloc::collections::btree_map::Entry::Vacant(e) = index.entry(img) {
                    e.insert(reps.len());
                    reps.push(w);
                }
            }
        }
        k += 1;
    }
    if reps.len() != q.order() {
        return Err(Error::NotTransitive);
    }
    Ok(Transversal { reps, index })
}

/// Validate a user-supplied transversal.
pub fn validate_transversal(q: &FiniteQuotient, reps: Vec<FreeWord>) -> Result<Transversal> {
    if reps.first().is_none_or(|r| !r.is_empty()) {
        return Err(Error::InvalidTransversal(String::from("the first representative must be empty")));
    }
    if reps.len() != q.order() {
        return Err(Error::InvalidTransversal(format!("{} representatives for {} cosets", reps.len(), q.order())));
    }
    let mut index = BTreeMap::new();
    for (k, r) in reps.iter().enumerate() {
        if free_reduce(r) != *r {
            return Err(Error::InvalidTransversal(String::from("representatives must be freely reduced")));
        }
        if index.insert(q.image(r), k).is_some() {
            return Err(Error::InvalidTransversal(String::from("two representatives of one coset")));
        }
    }
    for r in &reps {
        for l in 0..r.len() {
            if !reps.iter().any(|s| s[..] == r[..l]) {
                return Err(Error::InvalidTransversal(String::from("not prefix-closed")));
            }
        }
    }
    Ok(Transversal { reps, index })
}

/// Schreier generator `s[r, x] = r x (rep of r x)^{-1}` by representative and positive letter.
pub type SchreierGen = (usize, usize);

fn coset_step(q: &FiniteQuotient, t: &Transversal, r: usize, x: i32) -> usize {
    let mut w = t.reps[r].clone();
    w.push(x);
    t.lookup(&q.image(&w)).expect("transversal covers the image")
}

/// Ambient word of a Schreier generator.
pub fn schreier_word(q: &FiniteQuotient, t: &Transversal, s: SchreierGen) -> FreeWord {
    let (r, g) = s;
    let mut w = t.reps[r].clone();
    w.push(g as i32 + 1);
    let rx = coset_step(q, t, r, g as i32 + 1);
    w.extend(free_inverse(&t.reps[rx]));
    free_reduce(&w)
}

/// Rewrite a word of the kernel as a product of Schreier generators (`(gen, ±1)`),
/// trivial generators dropped.
pub fn rewrite(q: &FiniteQuotient, t: &Transversal, w: &[i32]) -> Result<Vec<(SchreierGen, i32)>> {
    let mut out = Vec::new();
    let mut cur = 0usize;
    for &x in w {
        let g = x.unsigned_abs() as usize - 1;
        if x > 0 {
            let s = (cur, g);
            if !schreier_word(q, t, s).is_empty() {
                out.push((s, 1));
            }
            cur = coset_step(q, t, cur, x);
        } else {
            let prev = coset_step(q, t, cur, x);
            let s = (prev, g);
            if !schreier_word(q, t, s).is_empty() {
                out.push((s, -1));
            }
            cur = prev;
        }
    }
    if cur != 0 {
        return Err(Error::Precondition(String::from("word does not lie in the subgroup")));
    }
    Ok(out)
}

/// Presentation of a subgroup with the ambient word of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    /// The presentation.
    pub presentation: Presentation,
    /// Ambient word of each generator.
    pub definitions: Vec<FreeWord>,
    /// Number of trivial Schreier generators dropped.
    pub trivial: usize,
    /// Whether simplification ran out of budget.
    pub partial: bool,
}

impl SubgroupPresentation {
    /// Expand a subgroup word into the ambient generators.
    pub fn expand(&self, w: &[i32]) -> FreeWord {
        let mut out = Vec::new();
        for &x in w {
            let d = &self.definitions[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend_from_slice(d);
            } else {
                out.extend(free_inverse(d));
            }
        }
        free_reduce(&out)
    }

    /// Index of a generator by name.
    pub fn generator(&self, name: &str) -> Option<usize> {
        self.presentation.generators.iter().position(|g| g == name)
    }
}

fn rep_text(names: &[String], r: &[i32]) -> String {
    if r.is_empty() {
        String::from("1")
    } else {
        word_text(names, r)
    }
}

/// Name of a Schreier generator, e.g. `s[alpha|gamma]`, `s[1|beta]`.
pub fn schreier_name(p: &Presentation, t: &Transversal, s: SchreierGen) -> String {
    format!("s[{}|{}]", rep_text(&p.generators, &t.reps[s.0]), p.generators[s.1])
}

/// Reidemeister-Schreier presentation of the kernel: nontrivial Schreier generators and the
/// rewritten conjugates `r rho r^{-1}` of every relator by every representative.
pub fn subgroup_presentation(p: &Presentation, q: &FiniteQuotient, t: &Transversal) -> Result<SubgroupPresentation> {
    let mut gens: Vec<SchreierGen> = Vec::new();
    let mut defs = Vec::new();
    let mut trivial = 0;
    for r in 0..t.len() {
        for g in 0..p.generators.len() {
            let w = schreier_word(q, t, (r, g));
            if w.is_empty() {
                trivial += 1;
            } else {
                gens.push((r, g));
                defs.push(w);
            }
        }
    }
    let pos: BTreeMap<SchreierGen, usize> = gens.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let mut relators = Vec::new();
    for rho in &p.relators {
        for rep in &t.reps {
            let mut w = rep.clone();
            w.extend_from_slice(rho);
            w.extend(free_inverse(rep));
            let tau = rewrite(q, t, &w)?;
            relators.push(tau.iter().map(|(s, e)| (pos[s] as i32 + 1) * e).collect());
        }
    }
    let names = gens.iter().map(|s| schreier_name(p, t, *s)).collect();
    Ok(SubgroupPresentation { presentation: Presentation { generators: names, relators }, definitions: defs, trivial, partial: false })
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> FreeWord {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

fn substitute(w: &[i32], g: i32, by: &[i32]) -> FreeWord {
    let inv = free_inverse(by);
    let mut out = Vec::new();
    for &x in w {
        if x == g {
            out.extend_from_slice(by);
        } else if x == -g {
            out.extend_from_slice(&inv);
        } else {
            out.push(x);
        }
    }
    cyclic_reduce(&out)
}

/// Eliminate generators occurring exactly once in some relator.
///
/// Relators are scanned shortest first (ties lexicographically by letters); within a
/// relator the eligible generator with the largest index is removed. Generators listed in `keep` are never
/// removed. Stops after `budget` eliminations, flagging the result partial.
pub fn tietze_simplify(sp: &SubgroupPresentation, budget: usize, keep: &[usize]) -> SubgroupPresentation {
    let mut gens: Vec<usize> = (0..sp.presentation.generators.len()).collect();
    let mut rels: Vec<FreeWord> = sp.presentation.relators.iter().map(|r| cyclic_reduce(r)).collect();
    rels.retain(|r| !r.is_empty());
    let mut used = 0;
    let mut partial = false;
    loop {
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by(|&a, &b| rels[a].len().cmp(&rels[b].len()).then_with(|| rels[a].cmp(&rels[b])));
        let mut pick = None;
        'scan: for &k in &order {
            let r = &rels[k];
            let best = r
                .iter()
                .copied()
                .filter(|x| !keep.contains(&(x.unsigned_abs() as usize - 1)))
                .filter(|x| r.iter().filter(|y| y.unsigned_abs() == x.unsigned_abs()).count() == 1)
                .max_by_key(|x| x.unsigned_abs());
            if let Some(x) = best {
                pick = Some((k, x));
                break 'scan;
            }
        }
        let Some((k, x)) = pick else { break };
        if used == budget {
            partial = true;
            break;
        }
        used += 1;
        let r = rels.remove(k);
        let at = r.iter().position(|&y| y == x).expect("letter present");
        let (u, v) = (&r[..at], &r[at + 1..]);
        let mut val: FreeWord = free_inverse(u);
        val.extend(free_inverse(v));
        let (g, val) = if x > 0 {
            (x, free_reduce(&val))
        } else {
            let mut w = v.to_vec();
            w.extend_from_slice(u);
            (-x, free_reduce(&w))
        };
        rels = rels.iter().map(|w| substitute(w, g, &val)).filter(|w| !w.is_empty()).collect();
        gens.retain(|&h| h != g as usize - 1);
    }
    let renum: BTreeMap<usize, i32> = gens.iter().enumerate().map(|(k, &g)| (g, k as i32 + 1)).collect();
    let relators = rels
        .iter()
        .map(|r| r.iter().map(|&x| renum[&(x.unsigned_abs() as usize - 1)] * x.signum()).collect())
        .collect();
    SubgroupPresentation {
        presentation: Presentation {
            generators: gens.iter().map(|&g| sp.presentation.generators[g].clone()).collect(),
            relators,
        },
        definitions: gens.iter().map(|&g| sp.definitions[g].clone()).collect(),
        trivial: sp.trivial,
        partial: partial || sp.partial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rb3_quotient() -> (Presentation, FiniteQuotient) {
        let p = Presentation::rb3();
        let im = |s| parse_cycles(s, 3).unwrap();
        let q = FiniteQuotient::new(&p, 3, vec![im("(23)"), im("(12)"), im("(13)")]).unwrap();
        (p, q)
    }

    #[test]
    fn cycles() {
        assert_eq!(parse_cycles("(23)", 3).unwrap(), vec![0, 2, 1]);
        assert_eq!(parse_cycles("()", 3).unwrap(), vec![0, 1, 2]);
        let a = parse_cycles("(23)", 3).unwrap();
        let b = parse_cycles("(12)", 3).unwrap();
        assert_eq!(compose(&a, &b), parse_cycles("(132)", 3).unwrap());
        assert!(parse_cycles("(14)", 3).is_err());
    }

    #[test]
    fn transversals() {
        let (p, q) = rb3_quotient();
        assert_eq!(q.order(), 6);
        let t = schreier_transversal(&p, &q).unwrap();
        assert_eq!(t.len(), 6);
        let given = ["", "alpha", "beta", "gamma", "alpha beta", "beta alpha"];
        let reps = given.iter().map(|s| p.parse_word(s).unwrap()).collect();
        let t = validate_transversal(&q, reps).unwrap();
        assert_eq!(t.lookup(&parse_cycles("(132)", 3).unwrap()), Some(4));
        let bad = ["", "alpha", "beta", "gamma", "alpha beta", "gamma alpha"].iter().map(|s| p.parse_word(s).unwrap()).collect();
        assert!(validate_transversal(&q, bad).is_err());
        let trivial = Presentation::new(vec!["a".into()], vec![]).unwrap();
        let q1 = FiniteQuotient::new(&trivial, 1, vec![vec![0]]).unwrap();
        assert_eq!(schreier_transversal(&trivial, &q1).unwrap().reps, vec![Vec::<i32>::new()]);
    }

    #[test]
    fn rewriting() {
        let (p, q) = rb3_quotient();
        let t = schreier_transversal(&p, &q).unwrap();
        let aa = rewrite(&q, &t, &[1, 1]).unwrap();
        assert_eq!(aa.len(), 1);
        assert_eq!(schreier_name(&p, &t, aa[0].0), "s[alpha|alpha]");
        assert!(rewrite(&q, &t, &[]).unwrap().is_empty());
        assert!(rewrite(&q, &t, &[1]).is_err());
    }

    #[test]
    fn tietze_basic() {
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![vec![1, -2]]).unwrap();
        let sp = SubgroupPresentation { presentation: p, definitions: vec![vec![1], vec![2]], trivial: 0, partial: false };
        let s = tietze_simplify(&sp, 10, &[]);
        assert_eq!(s.presentation.generators.len(), 1);
        assert!(s.presentation.relators.is_empty());
        let again = tietze_simplify(&s, 10, &[]);
        assert_eq!(again, s);
    }
}
