//! Mixed graphs ("networks") with directed arrows and undirected edges,
//! traversals, and the two networks attached to a pair of tree morphisms.

mod pullback;
mod triangles;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Display, Write as _};

use thiserror::Error;

pub use pullback::{
    build_pullback_network, build_two_cover, word_of_traversal, BaseArrow, BaseVertex, CoverArrow,
    CoverVertex, EdgeKind, EdgeWitness, Letter, PullbackNetwork, Sign, TwoCover,
};
pub use triangles::{
    blocked, triangles_and_classes, Level, RSystem, Triangle, TriangleClass, TriangleShape,
    TriangleStructure,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("unknown arrow index {0}")]
    UnknownArrow(usize),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("tree morphisms have different codomains")]
    CodomainMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetArrow<A> {
    pub label: A,
    pub source: usize,
    pub target: usize,
}

/// A link of a network without orientation: an arrow or an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkId {
    Arrow(usize),
    Edge(usize),
}

/// A link as used in a traversal: an arrow, a formal inverse, or an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Link {
    Forward(usize),
    Backward(usize),
    Edge(usize),
}

impl Link {
    pub fn inverse(self) -> Link {
        match self {
            Link::Forward(a) => Link::Backward(a),
            Link::Backward(a) => Link::Forward(a),
            e => e,
        }
    }

    pub fn id(self) -> LinkId {
        match self {
            Link::Forward(a) | Link::Backward(a) => LinkId::Arrow(a),
            Link::Edge(e) => LinkId::Edge(e),
        }
    }
}

/// A traversal: a single vertex, or links listed in the order they are
/// walked (first link first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Traversal {
    Vertex(usize),
    Links(Vec<Link>),
}

impl Traversal {
    pub fn len(&self) -> usize {
        match self {
            Traversal::Vertex(_) => 0,
            Traversal::Links(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inverse(&self) -> Traversal {
        match self {
            Traversal::Vertex(v) => Traversal::Vertex(*v),
            Traversal::Links(l) => Traversal::Links(l.iter().rev().map(|x| x.inverse()).collect()),
        }
    }

    pub fn links(&self) -> &[Link] {
        match self {
            Traversal::Vertex(_) => &[],
            Traversal::Links(l) => l,
        }
    }
}

/// A network: vertices, arrows between them, and undirected edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedNetwork<V, A> {
    vertices: Vec<V>,
    arrows: Vec<NetArrow<A>>,
    edges: Vec<[usize; 2]>,
    incident: Vec<Vec<(LinkId, usize)>>,
    between: HashMap<(usize, usize), Vec<LinkId>>,
}

impl<V: Ord + Clone, A> MixedNetwork<V, A> {
    pub fn new(
        vertices: Vec<V>,
        arrows: Vec<NetArrow<A>>,
        edges: Vec<[usize; 2]>,
    ) -> Result<Self, NetworkError> {
        let mut seen = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(NetworkError::DuplicateVertex(i));
            }
        }
        let nv = vertices.len();
        let mut incident = vec![Vec::new(); nv];
        let mut between: HashMap<(usize, usize), Vec<LinkId>> = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            for v in [a.source, a.target] {
                if v >= nv {
                    return Err(NetworkError::UnknownVertex(v));
                }
            }
            incident[a.source].push((LinkId::Arrow(i), a.target));
            if a.target != a.source {
                incident[a.target].push((LinkId::Arrow(i), a.source));
            }
            between
                .entry(key(a.source, a.target))
                .or_default()
                .push(LinkId::Arrow(i));
        }
        let mut edge_set = BTreeSet::new();
        for (i, &[u, v]) in edges.iter().enumerate() {
            if u >= nv || v >= nv {
                return Err(NetworkError::UnknownVertex(u.max(v)));
            }
            if u == v {
                return Err(NetworkError::LoopEdge(i));
            }
            if !edge_set.insert(key(u, v)) {
                return Err(NetworkError::DuplicateEdge(u, v));
            }
            incident[u].push((LinkId::Edge(i), v));
            incident[v].push((LinkId::Edge(i), u));
            between.entry(key(u, v)).or_default().push(LinkId::Edge(i));
        }
        Ok(MixedNetwork {
            vertices,
            arrows,
            edges,
            incident,
            between,
        })
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[NetArrow<A>] {
        &self.arrows
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of a vertex; vertices are stored in ascending order by the
    /// constructors in this crate, so this is a binary search when possible.
    pub fn index_of(&self, v: &V) -> Option<usize> {
        match self.vertices.binary_search(v) {
            Ok(i) => Some(i),
            Err(_) => self.vertices.iter().position(|x| x == v),
        }
    }

    /// Links at a vertex together with their other endpoint.
    pub fn incident(&self, v: usize) -> &[(LinkId, usize)] {
        &self.incident[v]
    }

    /// The links joining two vertices, in either direction.
    pub fn links_between(&self, u: usize, v: usize) -> &[LinkId] {
        self.between.get(&key(u, v)).map_or(&[], Vec::as_slice)
    }

    pub fn endpoints(&self, l: LinkId) -> [usize; 2] {
        match l {
            LinkId::Arrow(a) => [self.arrows[a].source, self.arrows[a].target],
            LinkId::Edge(e) => self.edges[e],
        }
    }

    /// Largest number of links joining one unordered pair of vertices.
    pub fn max_links_per_pair(&self) -> usize {
        self.between.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_directed_cycle(&self) -> bool {
        // Kahn's algorithm on the arrow graph
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        removed != n
    }

    fn check_link(&self, l: Link) -> Result<(), NetworkError> {
        match l {
            Link::Forward(a) | Link::Backward(a) if a >= self.arrows.len() => {
                Err(NetworkError::UnknownArrow(a))
            }
            Link::Edge(e) if e >= self.edges.len() => Err(NetworkError::UnknownEdge(e)),
            _ => Ok(()),
        }
    }

    fn sigma(&self, l: Link) -> usize {
        match l {
            Link::Forward(a) => self.arrows[a].source,
            Link::Backward(a) => self.arrows[a].target,
            Link::Edge(_) => unreachable!("edges have no source"),
        }
    }

    fn tau(&self, l: Link) -> usize {
        match l {
            Link::Forward(a) => self.arrows[a].target,
            Link::Backward(a) => self.arrows[a].source,
            Link::Edge(_) => unreachable!("edges have no target"),
        }
    }

    /// Checks the adjacency and non-backtracking conditions on consecutive
    /// links.
    pub fn is_traversal(&self, t: &Traversal) -> Result<bool, NetworkError> {
        let links = match t {
            Traversal::Vertex(v) => {
                return if *v < self.vertices.len() {
                    Ok(true)
                } else {
                    Err(NetworkError::UnknownVertex(*v))
                }
            }
            Traversal::Links(l) => l,
        };
        for &l in links {
            self.check_link(l)?;
        }
        if links.is_empty() {
            return Ok(false);
        }
        let edge = |l: Link| match l {
            Link::Edge(e) => Some(self.edges[e]),
            _ => None,
        };
        let meet = |x: [usize; 2], y: [usize; 2]| -> Vec<usize> {
            x.into_iter().filter(|v| y.contains(v)).collect()
        };
        for w in links.windows(2) {
            let (x, y) = (w[0], w[1]);
            let ok = match (edge(x), edge(y)) {
                (None, None) => self.tau(x) == self.sigma(y) && y != x.inverse(),
                (None, Some(ey)) => ey.contains(&self.tau(x)),
                (Some(ex), None) => ex.contains(&self.sigma(y)),
                (Some(ex), Some(ey)) => meet(ex, ey).len() == 1,
            };
            if !ok {
                return Ok(false);
            }
        }
        for w in links.windows(3) {
            let ok = match (edge(w[0]), edge(w[1]), edge(w[2])) {
                (Some(a), Some(b), Some(c)) => meet(a, b).iter().all(|v| !c.contains(v)),
                (None, Some(b), Some(c)) => !meet(b, c).contains(&self.tau(w[0])),
                (Some(a), Some(b), None) => !meet(a, b).contains(&self.sigma(w[2])),
                _ => true,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// End set of a traversal, ascending.
    pub fn end_set(&self, t: &Traversal) -> Vec<usize> {
        let mut out = match t {
            Traversal::Vertex(v) => vec![*v],
            Traversal::Links(l) => {
                let n = l.len();
                match (n.checked_sub(2).map(|i| l[i]), l[n - 1]) {
                    (None, Link::Edge(e)) => self.edges[e].to_vec(),
                    (_, last @ (Link::Forward(_) | Link::Backward(_))) => vec![self.tau(last)],
                    (Some(Link::Edge(p)), Link::Edge(e)) => {
                        let prev = self.edges[p];
                        self.edges[e]
                            .into_iter()
                            .filter(|v| !prev.contains(v))
                            .collect()
                    }
                    (Some(prev), Link::Edge(e)) => {
                        let skip = self.tau(prev);
                        self.edges[e].into_iter().filter(|&v| v != skip).collect()
                    }
                }
            }
        };
        out.sort_unstable();
        out
    }

    pub fn start_set(&self, t: &Traversal) -> Vec<usize> {
        self.end_set(&t.inverse())
    }

    /// Every vertex touched by the traversal, ascending.
    pub fn visited(&self, t: &Traversal) -> Vec<usize> {
        let set: BTreeSet<usize> = match t {
            Traversal::Vertex(v) => [*v].into(),
            Traversal::Links(l) => l.iter().flat_map(|x| self.endpoints(x.id())).collect(),
        };
        set.into_iter().collect()
    }
}

impl<V: Display + Ord + Clone, A: Display> MixedNetwork<V, A> {
    /// Graphviz rendering. Links of `highlight` are drawn in red.
    pub fn to_dot(&self, name: &str, highlight: Option<&Subnetwork>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let on = |c: bool| if c { " color=red fontcolor=red" } else { "" };
        for (i, v) in self.vertices.iter().enumerate() {
            let hl = highlight.is_some_and(|h| h.vertices.contains(&i));
            let _ = writeln!(s, "  v{i} [label=\"{v}\"{}];", on(hl));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let hl = highlight.is_some_and(|h| h.arrows.contains(&i));
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{}\"{}];",
                a.source,
                a.target,
                a.label,
                on(hl)
            );
        }
        for (i, [u, v]) in self.edges.iter().enumerate() {
            let hl = highlight.is_some_and(|h| h.edges.contains(&i));
            let _ = writeln!(s, "  v{u} -> v{v} [dir=none style=dashed{}];", on(hl));
        }
        s.push_str("}\n");
        s
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// A subnetwork of some ambient network, by indices into it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subnetwork {
    pub vertices: BTreeSet<usize>,
    pub arrows: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl Subnetwork {
    /// The full subnetwork on a vertex set.
    pub fn induced<V: Ord + Clone, A>(
        net: &MixedNetwork<V, A>,
        vertices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        let arrows = net
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| vertices.contains(&a.source) && vertices.contains(&a.target))
            .map(|(i, _)| i)
            .collect();
        let edges = net
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, [u, v])| vertices.contains(u) && vertices.contains(v))
            .map(|(i, _)| i)
            .collect();
        Subnetwork {
            vertices,
            arrows,
            edges,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_link(&self, l: LinkId) -> bool {
        match l {
            LinkId::Arrow(a) => self.arrows.contains(&a),
            LinkId::Edge(e) => self.edges.contains(&e),
        }
    }

    pub fn insert_link(&mut self, l: LinkId) {
        match l {
            LinkId::Arrow(a) => self.arrows.insert(a),
            LinkId::Edge(e) => self.edges.insert(e),
        };
    }

    pub fn remove_link(&mut self, l: LinkId) {
        match l {
            LinkId::Arrow(a) => self.arrows.remove(&a),
            LinkId::Edge(e) => self.edges.remove(&e),
        };
    }

    pub fn links(&self) -> impl Iterator<Item = LinkId> + '_ {
        self.arrows
            .iter()
            .map(|&a| LinkId::Arrow(a))
            .chain(self.edges.iter().map(|&e| LinkId::Edge(e)))
    }

    /// Links of the subnetwork at `v`, with their other endpoint.
    pub fn incident<'a, V: Ord + Clone, A>(
        &'a self,
        net: &'a MixedNetwork<V, A>,
        v: usize,
    ) -> impl Iterator<Item = (LinkId, usize)> + 'a {
        net.incident(v)
            .iter()
            .copied()
            .filter(move |(l, _)| self.contains_link(*l))
    }

    /// Connected components (vertex sets) ordered by smallest vertex.
    pub fn components<V: Ord + Clone, A>(&self, net: &MixedNetwork<V, A>) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (_, w) in self.incident(net, v) {
                    if comp.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected<V: Ord + Clone, A>(&self, net: &MixedNetwork<V, A>) -> bool {
        self.components(net).len() == 1
    }

    /// The part of `self` spanned by a vertex subset (links with both ends in it).
    pub fn restrict<V: Ord + Clone, A>(
        &self,
        net: &MixedNetwork<V, A>,
        vertices: &BTreeSet<usize>,
    ) -> Subnetwork {
        let inside = |l: LinkId| net.endpoints(l).iter().all(|v| vertices.contains(v));
        Subnetwork {
            vertices: vertices.intersection(&self.vertices).copied().collect(),
            arrows: self
                .arrows
                .iter()
                .copied()
                .filter(|&a| inside(LinkId::Arrow(a)))
                .collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&e| inside(LinkId::Edge(e)))
                .collect(),
        }
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkId::Arrow(a) => write!(f, "arrow {a}"),
            LinkId::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two arrows 1 -> 3 and 2 -> 4 with edges {1,2} and {3,4}.
    fn square() -> MixedNetwork<u32, &'static str> {
        MixedNetwork::new(
            vec![1, 2, 3, 4],
            vec![
                NetArrow {
                    label: "a",
                    source: 0,
                    target: 2,
                },
                NetArrow {
                    label: "b",
                    source: 1,
                    target: 3,
                },
            ],
            vec![[0, 1], [2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn loop_around_the_square() {
        let n = square();
        let t = Traversal::Links(vec![
            Link::Forward(0),
            Link::Edge(1),
            Link::Backward(1),
            Link::Edge(0),
        ]);
        assert!(n.is_traversal(&t).unwrap());
        assert!(n.is_traversal(&t.inverse()).unwrap());
        assert_eq!(n.end_set(&t), vec![0]);
        assert_eq!(n.start_set(&t), vec![0]);
    }

    #[test]
    fn backtracking_is_not_a_traversal() {
        let n = square();
        let t = Traversal::Links(vec![Link::Forward(0), Link::Backward(0)]);
        assert!(!n.is_traversal(&t).unwrap());
        let t = Traversal::Links(vec![Link::Edge(0), Link::Edge(0)]);
        assert!(!n.is_traversal(&t).unwrap());
    }

    #[test]
    fn single_links_and_vertices() {
        let n = square();
        assert!(n.is_traversal(&Traversal::Vertex(3)).unwrap());
        assert_eq!(n.end_set(&Traversal::Vertex(3)), vec![3]);
        let e = Traversal::Links(vec![Link::Edge(1)]);
        assert!(n.is_traversal(&e).unwrap());
        assert_eq!(n.end_set(&e), vec![2, 3]);
        assert_eq!(n.start_set(&e), vec![2, 3]);
        let t = Traversal::Links(vec![Link::Edge(0), Link::Forward(1)]);
        assert!(n.is_traversal(&t).unwrap());
        assert_eq!(n.start_set(&t), vec![0]);
        assert_eq!(n.end_set(&t), vec![3]);
    }

    #[test]
    fn unknown_links_are_errors() {
        let n = square();
        assert_eq!(
            n.is_traversal(&Traversal::Links(vec![Link::Forward(7)])),
            Err(NetworkError::UnknownArrow(7))
        );
        assert_eq!(
            n.is_traversal(&Traversal::Vertex(9)),
            Err(NetworkError::UnknownVertex(9))
        );
    }

    #[test]
    fn three_edges_through_one_vertex_fail() {
        let n: MixedNetwork<u32, &str> =
            MixedNetwork::new(vec![0, 1, 2, 3], vec![], vec![[0, 1], [0, 2], [0, 3]]).unwrap();
        let t = Traversal::Links(vec![Link::Edge(0), Link::Edge(1), Link::Edge(2)]);
        assert!(!n.is_traversal(&t).unwrap());
        let t = Traversal::Links(vec![Link::Edge(0), Link::Edge(1)]);
        assert!(n.is_traversal(&t).unwrap());
        assert_eq!(n.end_set(&t), vec![2]);
        assert_eq!(n.start_set(&t), vec![1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            MixedNetwork::<u32, &str>::new(vec![0, 0], vec![], vec![]).unwrap_err(),
            NetworkError::DuplicateVertex(1)
        );
        assert_eq!(
            MixedNetwork::<u32, &str>::new(vec![0, 1], vec![], vec![[1, 1]]).unwrap_err(),
            NetworkError::LoopEdge(0)
        );
        assert_eq!(
            MixedNetwork::<u32, &str>::new(vec![0, 1], vec![], vec![[0, 1], [1, 0]]).unwrap_err(),
            NetworkError::DuplicateEdge(1, 0)
        );
    }

    #[test]
    fn components_and_dot() {
        let n = square();
        let sub = Subnetwork::induced(&n, [0, 2, 3]);
        assert_eq!(sub.arrows, BTreeSet::from([0]));
        assert_eq!(sub.edges, BTreeSet::from([1]));
        assert!(sub.is_connected(&n));
        let dot = n.to_dot("sq", Some(&sub));
        assert!(dot.contains("v0 -> v2 [label=\"a\" color=red"));
        assert!(dot.contains("v2 -> v3 [dir=none style=dashed color=red"));
        assert!(!n.has_directed_cycle());
    }
}
