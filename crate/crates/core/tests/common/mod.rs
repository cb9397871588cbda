//! Seeded generators and shared checks for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use gentree::cli::parse::{parse_problem, Problem};
use gentree::graphmap::ModulePair;
use gentree::linalg::{hom_space, rank, FieldSpec, Homomorphism, Rat};
use gentree::network::{word_of_traversal, Link, LinkId, Subnetwork, Traversal};
use gentree::quiver::{validate_morphism, BoundQuiver, Tree, TreeMorphism};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const FIXTURES: [&str; 7] = ["ggm", "flip", "ghost", "dec", "dec_rooted", "d5", "d5_bad"];

pub fn fixture(name: &str) -> Problem {
    let path = format!("{}/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    parse_problem(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// The first two morphisms of a fixture, or its only morphism twice.
pub fn fixture_pair(name: &str) -> ModulePair {
    let p = fixture(name);
    let f1 = p.morphisms[0].clone();
    let f2 = p.morphisms.get(1).cloned().unwrap_or_else(|| f1.clone());
    ModulePair::new(f1, f2, FieldSpec::Rational).unwrap()
}

/// A quiver on 2 to 5 vertices without loops, with a random set of
/// length-2 monomial relations.
pub fn random_quiver(rng: &mut ChaCha8Rng) -> Arc<BoundQuiver> {
    let k = rng.gen_range(2..=5usize);
    let mut q = BoundQuiver::empty("Q");
    for v in 1..=k {
        q.add_vertex(&v.to_string()).unwrap();
    }
    let arrows = rng.gen_range(k - 1..=k + 2);
    for i in 0..arrows {
        let s = rng.gen_range(1..=k);
        let mut t = rng.gen_range(1..=k - 1);
        if t >= s {
            t += 1;
        }
        q.add_arrow(&format!("x{i}"), &s.to_string(), &t.to_string())
            .unwrap();
    }
    let labels: Vec<String> = q.arrows().iter().map(|a| a.label.clone()).collect();
    for x in &labels {
        for y in &labels {
            if rng.gen_bool(0.3) {
                let mut trial = q.clone();
                if trial.add_relation(&[x, y]).is_ok() {
                    q = trial;
                }
            }
        }
    }
    Arc::new(q)
}

/// A random bound tree morphism with at most `max_vertices` vertices,
/// labelled from `first_label`. `None` when the attempt gets stuck.
pub fn random_morphism(
    rng: &mut ChaCha8Rng,
    q: &Arc<BoundQuiver>,
    name: &str,
    first_label: u32,
    max_vertices: usize,
) -> Option<TreeMorphism> {
    let n = rng.gen_range(2..=max_vertices);
    let mut images = vec![rng.gen_range(0..q.vertex_count())];
    let mut arrows: Vec<(String, u32, u32)> = Vec::new();
    let mut arrow_map = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        let outward = rng.gen_bool(0.5);
        let choices: Vec<usize> = (0..q.arrow_count())
            .filter(|&a| {
                let x = &q.arrows()[a];
                if outward {
                    x.source == images[parent]
                } else {
                    x.target == images[parent]
                }
            })
            .collect();
        let &a = choices.choose(rng)?;
        let x = &q.arrows()[a];
        let (p, c) = (first_label + parent as u32, first_label + i as u32);
        if outward {
            images.push(x.target);
            arrows.push((format!("t{i}"), p, c));
        } else {
            images.push(x.source);
            arrows.push((format!("t{i}"), c, p));
        }
        arrow_map.push(a);
    }
    let vertices: Vec<u32> = (0..n as u32).map(|i| first_label + i).collect();
    let refs: Vec<(&str, u32, u32)> = arrows
        .iter()
        .map(|(l, s, t)| (l.as_str(), *s, *t))
        .collect();
    let tree = Tree::new(format!("T{name}"), &vertices, &refs).ok()?;
    // the tree sorts its arrows by label; reorder the image list to match
    let by_label: BTreeMap<&str, usize> = arrows
        .iter()
        .map(|(l, _, _)| l.as_str())
        .zip(arrow_map)
        .collect();
    let arrow_map: Vec<usize> = tree
        .arrows()
        .iter()
        .map(|a| by_label[a.label.as_str()])
        .collect();
    let vertex_map: Vec<usize> = tree
        .vertices()
        .iter()
        .map(|&v| images[(v - first_label) as usize])
        .collect();
    let f = TreeMorphism::from_indices(name, tree, Arc::clone(q), vertex_map, arrow_map).ok()?;
    validate_morphism(&f).is_bound.then_some(f)
}

/// Two bound morphisms into one random quiver, trees of at most 8 vertices.
pub fn random_pair(rng: &mut ChaCha8Rng) -> (TreeMorphism, TreeMorphism) {
    loop {
        let q = random_quiver(rng);
        let f1 = random_morphism(rng, &q, "F1", 1, 8);
        let f2 = random_morphism(rng, &q, "F2", 11, 8);
        if let (Some(f1), Some(f2)) = (f1, f2) {
            return (f1, f2);
        }
    }
}

/// A random morphism whose push-down is a tree module.
pub fn random_tree_module(rng: &mut ChaCha8Rng) -> TreeMorphism {
    loop {
        let q = random_quiver(rng);
        if let Some(f) = random_morphism(rng, &q, "F", 1, 8) {
            if validate_morphism(&f).is_tree_module {
                return f;
            }
        }
    }
}

fn coordinates_rank(field: FieldSpec, homs: &[Homomorphism]) -> usize {
    let rows: Vec<Vec<Rat>> = homs.iter().map(|h| h.coordinates()).collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    rank(field, &rows, ncols)
}

/// Every exact Hom basis element is rebuilt from graph maps, and the graph
/// maps span Hom.
pub fn check_hom_generation(pair: &ModulePair) -> Result<(), String> {
    let basis = hom_space(&pair.m1, &pair.m2).map_err(|e| e.to_string())?;
    for (i, h) in basis.iter().enumerate() {
        let d = pair
            .decompose_hom(h)
            .map_err(|e| format!("basis element {i}: {e}"))?;
        if !d.sum(pair).eq_in(h, pair.field()) {
            return Err(format!("basis element {i} not reconstructed"));
        }
        for t in &d.terms {
            if !pair.is_ggm(&t.ggm.sub) {
                return Err(format!("basis element {i}: a term is not a graph map"));
            }
        }
    }
    let homs: Vec<Homomorphism> = pair.ggms().unwrap().iter().map(|g| g.hom.clone()).collect();
    let span = coordinates_rank(pair.field(), &homs);
    if span != basis.len() {
        return Err(format!(
            "graph maps span {span}, Hom has dimension {}",
            basis.len()
        ));
    }
    Ok(())
}

/// Carves the preimage of `within`, which must be complete, and checks the
/// result keeps every vertex and is complete and R2-free.
pub fn check_carving_of(pair: &ModulePair, within: &BTreeSet<usize>) -> Result<(), String> {
    let c = pair.carve(within).map_err(|e| e.to_string())?;
    if c.sub.vertices.len() != 2 * within.len() {
        return Err(format!(
            "carving kept {} of {} vertices",
            c.sub.vertices.len(),
            2 * within.len()
        ));
    }
    if !pair.is_complete(&c.sub).complete {
        return Err("carving is incomplete".into());
    }
    if !pair.is_r2_free(&c.sub) {
        return Err("carving has a blocked pair".into());
    }
    Ok(())
}

/// Carves the support of every Hom basis element (whose preimage must be
/// complete), and the whole network when its preimage is complete.
pub fn check_carving(pair: &ModulePair) -> Result<(), String> {
    let all: BTreeSet<usize> = (0..pair.n1.net.vertex_count()).collect();
    let full = Subnetwork::induced(&pair.n2.net, 0..pair.n2.net.vertex_count());
    if pair.is_complete(&full).complete {
        check_carving_of(pair, &all)?;
    }
    for (i, h) in hom_space(&pair.m1, &pair.m2)
        .map_err(|e| e.to_string())?
        .iter()
        .enumerate()
    {
        let supp = pair.support(h);
        let lifted =
            Subnetwork::induced(&pair.n2.net, supp.iter().flat_map(|&b| [2 * b, 2 * b + 1]));
        if !pair.is_complete(&lifted).complete {
            return Err(format!(
                "preimage of the support of basis element {i} is incomplete"
            ));
        }
        check_carving_of(pair, &supp).map_err(|e| format!("basis element {i}: {e}"))?;
    }
    Ok(())
}

/// Longest traversal enumerated by [`check_structure`].
const WALK: usize = 4;

pub fn check_structure(pair: &ModulePair) -> Result<(), String> {
    let n1 = &pair.n1.net;
    let n2 = &pair.n2.net;
    if n2.vertex_count() != 2 * n1.vertex_count() {
        return Err("cover has the wrong size".into());
    }
    for (b, v) in n1.vertices().iter().enumerate() {
        let (x, y) = (n2.vertices()[2 * b], n2.vertices()[2 * b + 1]);
        if (x.n, x.m) != (v.n, v.m) || (y.n, y.m) != (v.n, v.m) || x.sign == y.sign {
            return Err(format!("fiber over {v} is not a signed pair"));
        }
    }
    if n1.has_directed_cycle() {
        return Err("pullback network has a directed cycle".into());
    }
    if n1.max_links_per_pair() > 1 {
        return Err("two links join one pair of vertices".into());
    }
    let tri = &pair.triangles;
    for t in &tri.triangles {
        let edges = t
            .links
            .iter()
            .filter(|l| matches!(l, LinkId::Edge(_)))
            .count();
        if edges % 2 == 0 {
            return Err(format!("triangle {:?} has {edges} edges", t.vertices));
        }
    }
    for c in &tri.classes {
        let vs: Vec<usize> = c.vertices.iter().copied().collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if n1.links_between(u, v).is_empty() {
                    return Err(format!("class vertices {u} and {v} are not joined"));
                }
            }
        }
    }
    check_words(pair)
}

/// Traversals with the same single start and single end read the same
/// reduced word.
fn check_words(pair: &ModulePair) -> Result<(), String> {
    let net = &pair.n1.net;
    let mut seen: BTreeMap<(usize, usize), Vec<(usize, bool)>> = BTreeMap::new();
    let mut stack: Vec<Vec<Link>> = Vec::new();
    for v in 0..net.vertex_count() {
        for &(l, _) in net.incident(v) {
            stack.extend(
                links_of(net.endpoints(l), l, v)
                    .into_iter()
                    .map(|x| vec![x]),
            );
        }
    }
    stack.sort();
    stack.dedup();
    while let Some(walk) = stack.pop() {
        let t = Traversal::Links(walk.clone());
        if !net.is_traversal(&t).unwrap_or(false) {
            continue;
        }
        let (s, e) = (net.start_set(&t), net.end_set(&t));
        if let ([s], [e]) = (s.as_slice(), e.as_slice()) {
            let word: Vec<(usize, bool)> = word_of_traversal(&pair.n1, &t)
                .into_iter()
                .map(|l| (l.arrow, l.inverse))
                .collect();
            match seen.get(&(*s, *e)) {
                Some(w) if *w != word => return Err(format!("two words from {s} to {e}")),
                Some(_) => {}
                None => {
                    seen.insert((*s, *e), word);
                }
            }
        }
        if walk.len() < WALK {
            let last = net.endpoints(walk[walk.len() - 1].id());
            for v in last {
                for &(l, _) in net.incident(v) {
                    for x in links_of(net.endpoints(l), l, v) {
                        let mut w = walk.clone();
                        w.push(x);
                        stack.push(w);
                    }
                }
            }
        }
    }
    Ok(())
}

fn links_of(ends: [usize; 2], l: LinkId, from: usize) -> Vec<Link> {
    match l {
        LinkId::Edge(e) => vec![Link::Edge(e)],
        LinkId::Arrow(a) if ends[0] == from => vec![Link::Forward(a)],
        LinkId::Arrow(a) => vec![Link::Backward(a)],
    }
}
