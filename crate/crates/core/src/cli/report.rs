//! Plain-text reports. Sections start with `## `; vertices and maps are
//! listed in canonical order and rationals print as `p/q`.

use std::fmt::Write as _;

use crate::dynkin::CatalogReport;
use crate::graphmap::{CarveRoute, Decomposition, GeneralisedGraphMap, Ghost, ModulePair};
use crate::indec::{Classification, Outcome};
use crate::linalg::{fmt_rat, FieldSpec, Homomorphism, OracleOutcome, Representation};
use crate::quiver::TreeMorphism;

use super::parse::{hom_images, LinearCombination};

pub(super) fn header(command: &str, field: FieldSpec) -> String {
    format!("# gentree {command}\nfield: {field}\n")
}

fn pair_header(command: &str, pair: &ModulePair) -> String {
    let mut s = header(command, pair.field());
    let _ = writeln!(
        s,
        "source: {} (dims {})",
        pair.f1.name(),
        dims(&pair.m1.dims())
    );
    let _ = writeln!(
        s,
        "target: {} (dims {})",
        pair.f2.name(),
        dims(&pair.m2.dims())
    );
    s
}

fn dims(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn write_map(
    out: &mut String,
    indent: &str,
    h: &Homomorphism,
    m1: &Representation,
    m2: &Representation,
) {
    for (n, terms) in hom_images(h, m1, m2) {
        let _ = writeln!(out, "{indent}v{n} -> {}", LinearCombination(&terms));
    }
}

pub(super) fn hom(pair: &ModulePair, basis: &[Homomorphism]) -> String {
    let mut s = pair_header("hom", pair);
    let _ = writeln!(s, "## basis");
    let _ = writeln!(s, "dimension: {}", basis.len());
    for (i, h) in basis.iter().enumerate() {
        let _ = writeln!(s, "[{}]", i + 1);
        write_map(&mut s, "  ", h, &pair.m1, &pair.m2);
    }
    s
}

pub(super) fn ggms(pair: &ModulePair, gs: &[GeneralisedGraphMap]) -> String {
    let mut s = pair_header("ggm", pair);
    let _ = writeln!(s, "## graph maps");
    let _ = writeln!(s, "count: {}", gs.len());
    for (i, g) in gs.iter().enumerate() {
        let _ = writeln!(s, "[{}] {}", i + 1, pair.describe(&g.sub));
        write_map(&mut s, "  ", &g.hom, &pair.m1, &pair.m2);
    }
    s
}

pub(super) fn ghosts(pair: &ModulePair, gs: &[Ghost]) -> String {
    let mut s = pair_header("ghosts", pair);
    let _ = writeln!(s, "## ghosts");
    let _ = writeln!(s, "count: {}", gs.len());
    for (i, g) in gs.iter().enumerate() {
        let _ = writeln!(s, "[{}] {}", i + 1, pair.describe(&g.sub));
    }
    let _ = writeln!(s, "ghost-free: {}", gs.is_empty());
    s
}

pub(super) fn decomposition_header(pair: &ModulePair) -> String {
    let mut s = pair_header("decompose-hom", pair);
    let _ = writeln!(s, "Hom is zero");
    s
}

pub(super) fn decomposition(
    pair: &ModulePair,
    name: &str,
    h: &Homomorphism,
    d: &Decomposition,
) -> String {
    let mut s = pair_header("decompose-hom", pair);
    let _ = writeln!(s, "hom: {name}");
    let _ = writeln!(s, "## terms");
    let _ = writeln!(s, "count: {}", d.terms.len());
    for (i, t) in d.terms.iter().enumerate() {
        let route = match t.route {
            CarveRoute::Constructive => "carved",
            CarveRoute::RestrictedSearch => "restricted search",
        };
        let _ = writeln!(
            s,
            "[{}] coefficient {} ({route})",
            i + 1,
            fmt_rat(&t.coefficient)
        );
        let _ = writeln!(s, "  {}", pair.describe(&t.ggm.sub));
        write_map(&mut s, "  ", &t.ggm.hom, &pair.m1, &pair.m2);
    }
    let _ = writeln!(s, "## check");
    let _ = writeln!(
        s,
        "sum equals input: {}",
        d.sum(pair).eq_in(h, pair.field())
    );
    s
}

pub(super) fn classification(out: &mut String, f: &TreeMorphism, c: &Classification) {
    let m = crate::quiver::pushdown(f, FieldSpec::Rational).ok();
    let _ = writeln!(out, "## {}", f.name());
    if let Some(m) = &m {
        let _ = writeln!(out, "dims: {}", dims(&m.dims()));
    }
    let v = &c.verdict;
    let _ = writeln!(out, "verdict: {}", v.outcome);
    for line in &v.transcript {
        let _ = writeln!(out, "  {line}");
    }
    if let (
        Outcome::Decomposable {
            idempotent,
            image_dims,
            kernel_dims,
        },
        Some(m),
    ) = (&v.outcome, &m)
    {
        let _ = writeln!(out, "idempotent:");
        write_map(out, "  ", idempotent, m, m);
        let _ = writeln!(out, "summands: {} {}", dims(image_dims), dims(kernel_dims));
    }
    match &v.oracle {
        Some(o) => {
            let _ = writeln!(out, "oracle over {}: {}", o.field, oracle_text(&o.outcome));
        }
        None => {
            let _ = writeln!(out, "oracle: not run");
        }
    }
    if let Some(agree) = v.oracle_agrees() {
        let _ = writeln!(out, "oracle agrees: {agree}");
    }
    for e in &c.evidence {
        let _ = writeln!(
            out,
            "evidence: root {} children {} {} injective subtrees {} oracle {}{}",
            e.root,
            e.children.0,
            e.children.1,
            e.subtrees_injective,
            e.oracle.as_ref().map_or("not run", oracle_text),
            if e.counterexample_candidate {
                " COUNTEREXAMPLE CANDIDATE"
            } else {
                ""
            }
        );
    }
}

fn oracle_text(o: &OracleOutcome) -> &'static str {
    match o {
        OracleOutcome::ZeroModule => "zero module",
        OracleOutcome::Indecomposable => "indecomposable",
        OracleOutcome::Decomposable { .. } => "decomposable",
        OracleOutcome::Inconclusive { .. } => "inconclusive (budget)",
    }
}

pub(super) fn catalog(out: &mut String, r: &CatalogReport) {
    let _ = writeln!(out, "## {}", r.spec);
    let _ = writeln!(out, "roots: {}", r.entries.len());
    let _ = writeln!(out, "proved indecomposable: {}", r.proved());
    for e in &r.entries {
        let root: String = e.root.iter().map(u8::to_string).collect();
        let branch = e.branch.map_or("-".to_string(), |b| b.to_string());
        let _ = write!(
            out,
            "{root} branch {branch} dims {} verdict {}",
            if e.dims_match { "ok" } else { "WRONG" },
            e.outcome
        );
        match e.oracle_agrees {
            Some(true) => out.push_str(" oracle agrees"),
            Some(false) => out.push_str(" ORACLE DISAGREES"),
            None => {}
        }
        out.push('\n');
        for (b, dims_ok, o) in &e.variants {
            let _ = writeln!(
                out,
                "  variant {b} dims {} verdict {o}",
                if *dims_ok { "ok" } else { "WRONG" }
            );
        }
    }
    let _ = writeln!(out, "all ok: {}", r.all_ok());
}
