use std::collections::{BTreeSet, HashSet};

use super::{LinkId, MixedNetwork, PullbackNetwork, Subnetwork, Traversal, TwoCover};
use crate::network::{BaseArrow, BaseVertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleShape {
    /// One edge, two arrows leaving a common vertex.
    TwoOut,
    /// One edge, two arrows entering a common vertex.
    TwoIn,
    /// Three edges, all vertices share the first coordinate.
    SameFirst,
    /// Three edges, all vertices share the second coordinate.
    SameSecond,
    /// Anything else; never produced by a pullback network.
    Irregular,
}

/// A 3-clique of the pullback network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub links: [LinkId; 3],
    pub shape: TriangleShape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleClass {
    pub triangles: Vec<usize>,
    pub vertices: BTreeSet<usize>,
}

/// An R-system: the vertices of one triangle class inside a vertex set,
/// together with their preimages in the two-cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSystem {
    pub class: usize,
    pub base_vertices: Vec<usize>,
    pub cover_vertices: Vec<usize>,
}

impl RSystem {
    pub fn level1(&self, n1: &PullbackNetwork) -> Subnetwork {
        Subnetwork::induced(&n1.net, self.base_vertices.iter().copied())
    }

    pub fn level2(&self, n2: &TwoCover) -> Subnetwork {
        Subnetwork::induced(&n2.net, self.cover_vertices.iter().copied())
    }
}

#[derive(Debug, Clone)]
pub struct TriangleStructure {
    pub triangles: Vec<Triangle>,
    pub classes: Vec<TriangleClass>,
    pub class_of: Vec<usize>,
    lookup: HashSet<[usize; 3]>,
}

impl TriangleStructure {
    /// Whether three base vertices (any order) span a triangle.
    pub fn is_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.lookup.contains(&t)
    }

    /// R-systems relative to the base vertex set `within`.
    pub fn r_systems(&self, within: &BTreeSet<usize>) -> Vec<RSystem> {
        self.classes
            .iter()
            .enumerate()
            .filter_map(|(ci, c)| {
                let base: Vec<usize> = c.vertices.intersection(within).copied().collect();
                (base.len() >= 3).then(|| RSystem {
                    class: ci,
                    cover_vertices: base.iter().flat_map(|&v| [2 * v, 2 * v + 1]).collect(),
                    base_vertices: base,
                })
            })
            .collect()
    }
}

fn single_link<V: Ord + Clone, A>(net: &MixedNetwork<V, A>, u: usize, v: usize) -> Option<LinkId> {
    net.links_between(u, v).first().copied()
}

fn classify(
    net: &MixedNetwork<BaseVertex, BaseArrow>,
    vs: [usize; 3],
    links: [LinkId; 3],
) -> TriangleShape {
    let edges = links
        .iter()
        .filter(|l| matches!(l, LinkId::Edge(_)))
        .count();
    let verts: Vec<BaseVertex> = vs.iter().map(|&v| net.vertices()[v]).collect();
    match edges {
        3 if verts.iter().all(|x| x.n == verts[0].n) => TriangleShape::SameFirst,
        3 if verts.iter().all(|x| x.m == verts[0].m) => TriangleShape::SameSecond,
        1 => {
            let arrows: Vec<usize> = links
                .iter()
                .filter_map(|l| match l {
                    LinkId::Arrow(a) => Some(*a),
                    _ => None,
                })
                .collect();
            let (x, y) = (&net.arrows()[arrows[0]], &net.arrows()[arrows[1]]);
            if x.source == y.source {
                TriangleShape::TwoOut
            } else if x.target == y.target {
                TriangleShape::TwoIn
            } else {
                TriangleShape::Irregular
            }
        }
        _ => TriangleShape::Irregular,
    }
}

/// All triangles of the pullback network and their classes under the
/// transitive closure of sharing a link.
///
/// Panics if some class fails to span a clique.
pub fn triangles_and_classes(n1: &PullbackNetwork) -> TriangleStructure {
    let net = &n1.net;
    let n = net.vertex_count();
    let mut triangles = Vec::new();
    for a in 0..n {
        let nbrs: BTreeSet<usize> = net
            .incident(a)
            .iter()
            .map(|&(_, w)| w)
            .filter(|&w| w > a)
            .collect();
        for &b in &nbrs {
            for &c in nbrs.range(b + 1..) {
                if let (Some(l_ab), Some(l_ac), Some(l_bc)) = (
                    single_link(net, a, b),
                    single_link(net, a, c),
                    single_link(net, b, c),
                ) {
                    let vs = [a, b, c];
                    let links = [l_ab, l_ac, l_bc];
                    triangles.push(Triangle {
                        vertices: vs,
                        links,
                        shape: classify(net, vs, links),
                    });
                }
            }
        }
    }

    // union-find on triangles sharing a link, i.e. two vertices
    let mut parent: Vec<usize> = (0..triangles.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..triangles.len() {
        for j in i + 1..triangles.len() {
            let shared = triangles[i]
                .vertices
                .iter()
                .filter(|v| triangles[j].vertices.contains(v))
                .count();
            if shared >= 2 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut classes: Vec<TriangleClass> = Vec::new();
    let mut root_class = vec![usize::MAX; triangles.len()];
    let mut class_of = vec![0; triangles.len()];
    for i in 0..triangles.len() {
        let r = find(&mut parent, i);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(TriangleClass {
                triangles: Vec::new(),
                vertices: BTreeSet::new(),
            });
        }
        let c = root_class[r];
        class_of[i] = c;
        classes[c].triangles.push(i);
        classes[c].vertices.extend(triangles[i].vertices);
    }
    for (ci, c) in classes.iter().enumerate() {
        let vs: Vec<usize> = c.vertices.iter().copied().collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                assert!(
                    !net.links_between(u, v).is_empty(),
                    "triangle class {ci} does not span a clique"
                );
            }
        }
    }
    let lookup = triangles.iter().map(|t| t.vertices).collect();
    TriangleStructure {
        triangles,
        classes,
        class_of,
        lookup,
    }
}

/// The network a traversal lives in, for [`blocked`].
#[derive(Debug, Clone, Copy)]
pub enum Level<'a> {
    One(&'a PullbackNetwork),
    Two(&'a TwoCover),
}

/// Whether a traversal is blocked: it has length two and its three vertices
/// (projected to the base at level two) span a triangle.
pub fn blocked(tri: &TriangleStructure, t: &Traversal, level: Level<'_>) -> bool {
    if t.len() != 2 {
        return false;
    }
    let visited: BTreeSet<usize> = match level {
        Level::One(n1) => n1.net.visited(t).into_iter().collect(),
        Level::Two(n2) => n2
            .net
            .visited(t)
            .into_iter()
            .map(TwoCover::project_vertex)
            .collect(),
    };
    let v: Vec<usize> = visited.into_iter().collect();
    v.len() == 3 && tri.is_triangle(v[0], v[1], v[2])
}
