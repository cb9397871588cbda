//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! quiver A2
//!   vertices: 1 2
//!   arrow a: 1 -> 2
//!   relation: b a          # composite, rightmost arrow applied first
//! tree T
//!   vertices: 1 2 3
//!   arrow x: 1 -> 2
//! morphism F: T -> A2
//!   v 1 -> 1
//!   a x -> a
//! field: Q                  # or F3, F5, ...
//! hom H: F -> G
//!   v 2 -> w5 - 1/2 w7
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{fmt_rat, FieldSpec, Homomorphism, Rat, Representation};
use crate::quiver::{BoundQuiver, QuiverError, Tree, TreeMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found `{found}`")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of line, expected {0}")]
    EndOfLine(&'static str),
    #[error("line outside of any block")]
    OutsideBlock,
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error("duplicate {what} `{name}`")]
    Duplicate { what: &'static str, name: String },
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("invalid field `{0}` (use Q or Fp with p an odd prime)")]
    BadField(String),
    #[error("{0}")]
    Structure(QuiverError),
    #[error("w{m} does not lie over the same quiver vertex as v{n}")]
    WrongFiber { n: u32, m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Tok<'a> {
    col: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] == b':' {
            out.push(Tok {
                col: i + 1,
                text: ":",
            });
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b':' {
            i += 1;
        }
        out.push(Tok {
            col: start + 1,
            text: &line[start..i],
        });
    }
    out
}

/// A homomorphism given by the images of basis vectors `v_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    /// `n -> [(coefficient, m)]`, with the line it came from.
    pub images: BTreeMap<u32, (usize, Vec<(Rat, u32)>)>,
}

#[derive(Debug, Clone, Default)]
pub struct Problem {
    pub quivers: Vec<Arc<BoundQuiver>>,
    pub trees: Vec<Tree>,
    pub morphisms: Vec<TreeMorphism>,
    pub field: Option<FieldSpec>,
    pub homs: Vec<HomSpec>,
}

impl Problem {
    pub fn field(&self) -> FieldSpec {
        self.field.unwrap_or(FieldSpec::Rational)
    }

    pub fn morphism(&self, name: &str) -> Option<&TreeMorphism> {
        self.morphisms.iter().find(|m| m.name() == name)
    }

    pub fn hom(&self, name: &str) -> Option<&HomSpec> {
        self.homs.iter().find(|h| h.name == name)
    }
}

impl HomSpec {
    /// Assembles the block matrices between two push-downs.
    pub fn to_homomorphism(
        &self,
        f1: &TreeMorphism,
        f2: &TreeMorphism,
        m1: &Representation,
        m2: &Representation,
    ) -> Result<Homomorphism, ParseError> {
        let mut h = Homomorphism::zero(m1, m2);
        for (&n, (line, terms)) in &self.images {
            if !f1.tree().contains(n) {
                return Err(err(
                    *line,
                    1,
                    unknown("source basis vector", format!("v{n}")),
                ));
            }
            let j = f1.vertex_image(n);
            let col = m1.basis(j).iter().position(|&x| x == n).unwrap();
            for (c, m) in terms {
                if !f2.tree().contains(*m) {
                    return Err(err(
                        *line,
                        1,
                        unknown("target basis vector", format!("w{m}")),
                    ));
                }
                if f2.vertex_image(*m) != j {
                    return Err(err(*line, 1, ParseErrorKind::WrongFiber { n, m: *m }));
                }
                let row = m2.basis(j).iter().position(|x| x == m).unwrap();
                let b = h.block_mut(j);
                let v = b.get(row, col) + c;
                b.set(row, col, v);
            }
        }
        let field = m1.field();
        Ok(Homomorphism::new(
            h.blocks().iter().map(|b| b.reduce(field)).collect(),
        ))
    }
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn unknown(what: &'static str, name: impl Into<String>) -> ParseErrorKind {
    ParseErrorKind::Unknown {
        what,
        name: name.into(),
    }
}

enum Block {
    None,
    Quiver(BoundQuiver),
    Tree {
        name: String,
        vertices: Vec<u32>,
        arrows: Vec<(String, u32, u32)>,
        line: usize,
    },
    Morphism {
        name: String,
        tree: usize,
        quiver: usize,
        vmap: BTreeMap<u32, String>,
        amap: BTreeMap<String, String>,
        line: usize,
    },
    Hom(HomSpec),
}

struct Cursor<'a> {
    line: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    len: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, expected: &'static str) -> Result<Tok<'a>, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or_else(|| err(self.line, self.len + 1, ParseErrorKind::EndOfLine(expected)))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, text: &'static str) -> Result<(), ParseError> {
        let t = self.next(text)?;
        if t.text != text {
            return Err(err(
                self.line,
                t.col,
                ParseErrorKind::Unexpected {
                    expected: text,
                    found: t.text.to_string(),
                },
            ));
        }
        Ok(())
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(err(
                self.line,
                t.col,
                ParseErrorKind::Unexpected {
                    expected: "end of line",
                    found: t.text.to_string(),
                },
            )),
        }
    }

    fn rest(&mut self) -> Vec<Tok<'a>> {
        let r = self.toks[self.pos..].to_vec();
        self.pos = self.toks.len();
        r
    }

    fn number(&mut self, expected: &'static str) -> Result<u32, ParseError> {
        let t = self.next(expected)?;
        t.text.parse().map_err(|_| {
            err(
                self.line,
                t.col,
                ParseErrorKind::BadNumber(t.text.to_string()),
            )
        })
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| Rat::new(n, d))
}

fn parse_field(s: &str) -> Option<FieldSpec> {
    if s == "Q" {
        return Some(FieldSpec::Rational);
    }
    s.strip_prefix('F')?.parse().ok().and_then(FieldSpec::prime)
}

pub fn parse_problem(src: &str) -> Result<Problem, ParseError> {
    let mut p = Problem::default();
    let mut block = Block::None;
    let mut field_line: Option<usize> = None;

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("");
        let toks = tokenize(text);
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            line,
            toks,
            pos: 0,
            len: text.trim_end().len(),
        };
        let head = c.next("a keyword")?;
        match head.text {
            "quiver" | "tree" | "morphism" | "hom" | "field" => {
                finish(&mut p, std::mem::replace(&mut block, Block::None))?;
            }
            _ => {}
        }
        match head.text {
            "quiver" => {
                let name = c.next("quiver name")?;
                c.done()?;
                if p.quivers.iter().any(|q| q.name() == name.text) {
                    return Err(err(line, name.col, dup("quiver", name.text)));
                }
                block = Block::Quiver(BoundQuiver::empty(name.text));
            }
            "tree" => {
                let name = c.next("tree name")?;
                c.done()?;
                if p.trees.iter().any(|t| t.name() == name.text) {
                    return Err(err(line, name.col, dup("tree", name.text)));
                }
                block = Block::Tree {
                    name: name.text.to_string(),
                    vertices: Vec::new(),
                    arrows: Vec::new(),
                    line,
                };
            }
            "morphism" => {
                let name = c.next("morphism name")?;
                c.expect(":")?;
                let t = c.next("tree name")?;
                c.expect("->")?;
                let q = c.next("quiver name")?;
                c.done()?;
                if p.morphism(name.text).is_some() {
                    return Err(err(line, name.col, dup("morphism", name.text)));
                }
                let tree = p
                    .trees
                    .iter()
                    .position(|x| x.name() == t.text)
                    .ok_or_else(|| err(line, t.col, unknown("tree", t.text)))?;
                let quiver = p
                    .quivers
                    .iter()
                    .position(|x| x.name() == q.text)
                    .ok_or_else(|| err(line, q.col, unknown("quiver", q.text)))?;
                block = Block::Morphism {
                    name: name.text.to_string(),
                    tree,
                    quiver,
                    vmap: BTreeMap::new(),
                    amap: BTreeMap::new(),
                    line,
                };
            }
            "hom" => {
                let name = c.next("hom name")?;
                c.expect(":")?;
                let s = c.next("morphism name")?;
                c.expect("->")?;
                let t = c.next("morphism name")?;
                c.done()?;
                for x in [s, t] {
                    if p.morphism(x.text).is_none() {
                        return Err(err(line, x.col, unknown("morphism", x.text)));
                    }
                }
                if p.hom(name.text).is_some() {
                    return Err(err(line, name.col, dup("hom", name.text)));
                }
                block = Block::Hom(HomSpec {
                    name: name.text.to_string(),
                    source: s.text.to_string(),
                    target: t.text.to_string(),
                    images: BTreeMap::new(),
                });
            }
            "field" => {
                c.expect(":")?;
                let f = c.next("field")?;
                c.done()?;
                if field_line.is_some() {
                    return Err(err(line, head.col, dup("field", f.text)));
                }
                p.field =
                    Some(parse_field(f.text).ok_or_else(|| {
                        err(line, f.col, ParseErrorKind::BadField(f.text.into()))
                    })?);
                field_line = Some(line);
            }
            _ => body_line(&mut block, &mut c, head, &p)?,
        }
    }
    finish(&mut p, block)?;
    Ok(p)
}

fn dup(what: &'static str, name: &str) -> ParseErrorKind {
    ParseErrorKind::Duplicate {
        what,
        name: name.to_string(),
    }
}

fn body_line(
    block: &mut Block,
    c: &mut Cursor<'_>,
    head: Tok<'_>,
    p: &Problem,
) -> Result<(), ParseError> {
    let line = c.line;
    let unexpected = |expected| {
        err(
            line,
            head.col,
            ParseErrorKind::Unexpected {
                expected,
                found: head.text.to_string(),
            },
        )
    };
    match block {
        Block::None => return Err(err(line, head.col, ParseErrorKind::OutsideBlock)),
        Block::Quiver(q) => match head.text {
            "vertices" => {
                c.expect(":")?;
                for t in c.rest() {
                    q.add_vertex(t.text)
                        .map_err(|e| err(line, t.col, ParseErrorKind::Structure(e)))?;
                }
            }
            "arrow" => {
                let l = c.next("arrow label")?;
                c.expect(":")?;
                let s = c.next("source vertex")?;
                c.expect("->")?;
                let t = c.next("target vertex")?;
                c.done()?;
                q.add_arrow(l.text, s.text, t.text)
                    .map_err(|e| err(line, l.col, ParseErrorKind::Structure(e)))?;
            }
            "relation" => {
                c.expect(":")?;
                let toks = c.rest();
                let col = toks.first().map_or(head.col, |t| t.col);
                let labels: Vec<&str> = toks.iter().rev().map(|t| t.text).collect();
                q.add_relation(&labels)
                    .map_err(|e| err(line, col, ParseErrorKind::Structure(e)))?;
            }
            _ => return Err(unexpected("`vertices`, `arrow` or `relation`")),
        },
        Block::Tree {
            vertices, arrows, ..
        } => match head.text {
            "vertices" => {
                c.expect(":")?;
                while c.pos < c.toks.len() {
                    let col = c.toks[c.pos].col;
                    let v = c.number("tree vertex")?;
                    if vertices.contains(&v) {
                        return Err(err(line, col, dup("tree vertex", &v.to_string())));
                    }
                    vertices.push(v);
                }
            }
            "arrow" => {
                let l = c.next("arrow label")?;
                c.expect(":")?;
                let s = c.number("source vertex")?;
                c.expect("->")?;
                let t = c.number("target vertex")?;
                c.done()?;
                if arrows.iter().any(|(x, _, _)| x == l.text) {
                    return Err(err(line, l.col, dup("tree arrow", l.text)));
                }
                for v in [s, t] {
                    if !vertices.contains(&v) {
                        return Err(err(line, l.col, unknown("tree vertex", v.to_string())));
                    }
                }
                arrows.push((l.text.to_string(), s, t));
            }
            _ => return Err(unexpected("`vertices` or `arrow`")),
        },
        Block::Morphism {
            tree,
            quiver,
            vmap,
            amap,
            ..
        } => {
            let (t, q) = (&p.trees[*tree], &p.quivers[*quiver]);
            match head.text {
                "v" => {
                    let col = c.toks.get(c.pos).map_or(head.col, |t| t.col);
                    let v = c.number("tree vertex")?;
                    c.expect("->")?;
                    let img = c.next("quiver vertex")?;
                    c.done()?;
                    if !t.contains(v) {
                        return Err(err(line, col, unknown("tree vertex", v.to_string())));
                    }
                    if q.vertex_index(img.text).is_err() {
                        return Err(err(line, img.col, unknown("quiver vertex", img.text)));
                    }
                    if vmap.insert(v, img.text.to_string()).is_some() {
                        return Err(err(line, col, dup("vertex assignment", &v.to_string())));
                    }
                }
                "a" => {
                    let a = c.next("tree arrow")?;
                    c.expect("->")?;
                    let img = c.next("quiver arrow")?;
                    c.done()?;
                    if t.arrow_index(a.text).is_none() {
                        return Err(err(line, a.col, unknown("tree arrow", a.text)));
                    }
                    if q.arrow_index(img.text).is_err() {
                        return Err(err(line, img.col, unknown("quiver arrow", img.text)));
                    }
                    if amap
                        .insert(a.text.to_string(), img.text.to_string())
                        .is_some()
                    {
                        return Err(err(line, a.col, dup("arrow assignment", a.text)));
                    }
                }
                _ => return Err(unexpected("`v` or `a`")),
            }
        }
        Block::Hom(h) => {
            if head.text != "v" {
                return Err(unexpected("`v`"));
            }
            let col = c.toks.get(c.pos).map_or(head.col, |t| t.col);
            let n = c.number("source basis index")?;
            c.expect("->")?;
            let terms = parse_terms(c)?;
            if h.images.insert(n, (line, terms)).is_some() {
                return Err(err(line, col, dup("image of", &format!("v{n}"))));
            }
        }
    }
    Ok(())
}

/// `0`, or a signed sum of terms `[coefficient] w<m>`.
fn parse_terms(c: &mut Cursor<'_>) -> Result<Vec<(Rat, u32)>, ParseError> {
    let line = c.line;
    let mut toks = Vec::new();
    for t in c.rest() {
        // split a sign glued to a basis vector: `-w4` -> `-`, `w4`
        match t.text.as_bytes() {
            [s @ (b'-' | b'+'), b'w', ..] => {
                toks.push(Tok {
                    col: t.col,
                    text: if *s == b'-' { "-" } else { "+" },
                });
                toks.push(Tok {
                    col: t.col + 1,
                    text: &t.text[1..],
                });
            }
            _ => toks.push(t),
        }
    }
    if toks.is_empty() {
        return Err(err(
            line,
            c.len + 1,
            ParseErrorKind::EndOfLine("a linear combination"),
        ));
    }
    if toks.len() == 1 && toks[0].text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = Rat::one();
        match toks[i].text {
            "+" => i += 1,
            "-" => {
                sign = -sign;
                i += 1;
            }
            _ if !first => {
                return Err(err(
                    line,
                    toks[i].col,
                    ParseErrorKind::Unexpected {
                        expected: "`+` or `-`",
                        found: toks[i].text.to_string(),
                    },
                ))
            }
            _ => {}
        }
        first = false;
        let tok = *toks
            .get(i)
            .ok_or_else(|| err(line, c.len + 1, ParseErrorKind::EndOfLine("a term")))?;
        let mut coef = Rat::one();
        let basis_tok = if tok.text.starts_with('w') {
            tok
        } else {
            coef = parse_rat(tok.text).ok_or_else(|| {
                err(
                    line,
                    tok.col,
                    ParseErrorKind::BadNumber(tok.text.to_string()),
                )
            })?;
            i += 1;
            *toks.get(i).ok_or_else(|| {
                err(
                    line,
                    c.len + 1,
                    ParseErrorKind::EndOfLine("a basis vector `w<m>`"),
                )
            })?
        };
        let m: u32 = basis_tok
            .text
            .strip_prefix('w')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                err(
                    line,
                    basis_tok.col,
                    ParseErrorKind::Unexpected {
                        expected: "a basis vector `w<m>`",
                        found: basis_tok.text.to_string(),
                    },
                )
            })?;
        out.push((sign * coef, m));
        i += 1;
    }
    Ok(out)
}

fn finish(p: &mut Problem, block: Block) -> Result<(), ParseError> {
    match block {
        Block::None => {}
        Block::Quiver(q) => p.quivers.push(Arc::new(q)),
        Block::Tree {
            name,
            vertices,
            arrows,
            line,
        } => {
            let arrows: Vec<(&str, u32, u32)> = arrows
                .iter()
                .map(|(l, s, t)| (l.as_str(), *s, *t))
                .collect();
            let t = Tree::new(name, &vertices, &arrows)
                .map_err(|e| err(line, 1, ParseErrorKind::Structure(e)))?;
            p.trees.push(t);
        }
        Block::Morphism {
            name,
            tree,
            quiver,
            vmap,
            amap,
            line,
        } => {
            let f = TreeMorphism::new(
                name,
                p.trees[tree].clone(),
                Arc::clone(&p.quivers[quiver]),
                &vmap,
                &amap,
            )
            .map_err(|e| err(line, 1, ParseErrorKind::Structure(e)))?;
            p.morphisms.push(f);
        }
        Block::Hom(h) => p.homs.push(h),
    }
    Ok(())
}

/// Canonical text form; parsing it gives back an equal problem.
pub fn emit_problem(p: &Problem) -> String {
    let mut s = String::new();
    for q in &p.quivers {
        let _ = writeln!(s, "quiver {}", q.name());
        let _ = writeln!(s, "  vertices: {}", q.vertices().join(" "));
        for a in q.arrows() {
            let _ = writeln!(
                s,
                "  arrow {}: {} -> {}",
                a.label,
                q.vertices()[a.source],
                q.vertices()[a.target]
            );
        }
        for r in q.relations() {
            let _ = writeln!(s, "  relation: {}", q.path_label(r));
        }
    }
    for t in &p.trees {
        let _ = writeln!(s, "tree {}", t.name());
        let vs: Vec<String> = t.vertices().iter().map(u32::to_string).collect();
        let _ = writeln!(s, "  vertices: {}", vs.join(" "));
        for a in t.arrows() {
            let _ = writeln!(s, "  arrow {}: {} -> {}", a.label, a.source, a.target);
        }
    }
    for f in &p.morphisms {
        let q = f.codomain();
        let _ = writeln!(
            s,
            "morphism {}: {} -> {}",
            f.name(),
            f.tree().name(),
            q.name()
        );
        for &v in f.tree().vertices() {
            let _ = writeln!(s, "  v {} -> {}", v, q.vertices()[f.vertex_image(v)]);
        }
        for (i, a) in f.tree().arrows().iter().enumerate() {
            let _ = writeln!(
                s,
                "  a {} -> {}",
                a.label,
                q.arrows()[f.arrow_image(i)].label
            );
        }
    }
    if let Some(field) = p.field {
        let _ = writeln!(s, "field: {field}");
    }
    for h in &p.homs {
        let _ = writeln!(s, "hom {}: {} -> {}", h.name, h.source, h.target);
        for (n, (_, terms)) in &h.images {
            let _ = writeln!(s, "  v {} -> {}", n, LinearCombination(terms));
        }
    }
    s
}

/// Displays `[(c, m)]` as `c w<m> + ...`, or `0`.
pub struct LinearCombination<'a>(pub &'a [(Rat, u32)]);

impl fmt::Display for LinearCombination<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<&(Rat, u32)> = self.0.iter().filter(|(c, _)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "w{m}")?;
            } else {
                write!(f, "{} w{m}", fmt_rat(&a))?;
            }
        }
        Ok(())
    }
}

/// Reads a homomorphism back into `v_n -> Σ c w_m` form.
pub fn hom_images(
    h: &Homomorphism,
    m1: &Representation,
    m2: &Representation,
) -> BTreeMap<u32, Vec<(Rat, u32)>> {
    let mut out = BTreeMap::new();
    for (j, block) in h.blocks().iter().enumerate() {
        for (col, &n) in m1.basis(j).iter().enumerate() {
            let terms = m2
                .basis(j)
                .iter()
                .enumerate()
                .filter(|(row, _)| !block.get(*row, col).is_zero())
                .map(|(row, &m)| (block.get(row, col).clone(), m))
                .collect();
            out.insert(n, terms);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# decomposable example
quiver A2
  vertices: 1 2
  arrow a: 1 -> 2
tree T
  vertices: 1 2 3
  arrow a: 1 -> 2
  arrow b: 3 -> 2
morphism F: T -> A2
  v 1 -> 1
  v 2 -> 2
  v 3 -> 1
  a a -> a
  a b -> a
field: F5
hom H: F -> F
  v 1 -> w1 - 1/2 w3
  v 2 -> 0
";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_problem(SMALL).unwrap();
        assert_eq!(p.field(), FieldSpec::Prime(5));
        assert_eq!(p.trees[0].vertices(), &[1, 2, 3]);
        let h = p.hom("H").unwrap();
        assert_eq!(h.images[&1].1.len(), 2);
        let text = emit_problem(&p);
        let again = parse_problem(&text).unwrap();
        assert_eq!(emit_problem(&again), text);
        assert!(text.contains("  v 1 -> w1 - 1/2 w3\n"));
    }

    #[test]
    fn relation_is_read_right_to_left() {
        let p = parse_problem(
            "quiver A3\n vertices: 1 2 3\n arrow a: 1 -> 2\n arrow b: 2 -> 3\n relation: b a\n",
        )
        .unwrap();
        let q = &p.quivers[0];
        assert_eq!(q.relations()[0].arrows, vec![0, 1]);
        assert_eq!(q.path_label(&q.relations()[0]), "b a");
    }

    #[test]
    fn error_positions() {
        let e = parse_problem("quiver Q\n  vertices: 1 2\n  arrow a 1 -> 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 11));
        assert!(matches!(
            e.kind,
            ParseErrorKind::Unexpected { expected: ":", .. }
        ));

        let e = parse_problem("  vertices: 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::OutsideBlock);

        let e = parse_problem("field: F4\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        assert_eq!(e.kind, ParseErrorKind::BadField("F4".into()));

        let e = parse_problem("quiver Q\n  vertices: 1\ntree T\n  vertices: 1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 15));
        assert_eq!(e.kind, ParseErrorKind::BadNumber("x".into()));

        let e = parse_problem("quiver Q\n  vertices: 1\nmorphism F: T -> Q\n").unwrap_err();
        assert_eq!(e.kind, unknown("tree", "T"));

        let e = parse_problem("quiver Q\n  vertices: 1\n  arrow a: 1 -> 2\n").unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::Structure(QuiverError::UnknownVertex("2".into()))
        );
    }

    #[test]
    fn tree_structure_errors_surface() {
        let e = parse_problem("tree T\n  vertices: 1 2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Structure(QuiverError::NotATree));
        assert_eq!(e.line, 1);
    }

    #[test]
    fn terms_parse() {
        let p = parse_problem(SMALL).unwrap();
        let h = p.hom("H").unwrap();
        assert_eq!(
            h.images[&1].1,
            vec![(Rat::one(), 1), (Rat::new((-1).into(), 2.into()), 3)]
        );
        assert!(h.images[&2].1.is_empty());
    }
}
