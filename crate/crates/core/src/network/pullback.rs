use std::fmt;
use std::sync::Arc;

use super::{Link, MixedNetwork, NetArrow, NetworkError, Traversal};
use crate::quiver::TreeMorphism;

/// A vertex `(n, m)` of the pullback network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseVertex {
    pub n: u32,
    pub m: u32,
}

impl fmt::Display for BaseVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// An arrow `(a, b)` of the pullback network, by tree arrow indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseArrow {
    pub a: usize,
    pub b: usize,
    pub name: Arc<str>,
}

impl fmt::Display for BaseArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn bit(self) -> usize {
        usize::from(self == Sign::Plus)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// A vertex `(n, m, j)` of the two-cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverVertex {
    pub n: u32,
    pub m: u32,
    pub sign: Sign,
}

impl fmt::Display for CoverVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.m, self.sign)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverArrow {
    pub base: BaseArrow,
    pub sign: Sign,
}

impl fmt::Display for CoverArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.sign)
    }
}

/// Which tree produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// `{(n,m),(n',m)}` from two arrows of the first tree with a common source.
    FirstTreeFork,
    /// `{(n,m),(n,m')}` from two arrows of the second tree with a common target.
    SecondTreeCofork,
}

/// The tree arrows behind an edge; `arrows[i]` is attached to endpoint `i`
/// of the stored edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeWitness {
    pub kind: EdgeKind,
    pub arrows: [usize; 2],
}

/// The pullback network of a pair of tree morphisms with common codomain.
#[derive(Debug, Clone)]
pub struct PullbackNetwork {
    pub net: MixedNetwork<BaseVertex, BaseArrow>,
    arrow_image: Vec<usize>,
    witnesses: Vec<EdgeWitness>,
}

impl PullbackNetwork {
    /// Quiver arrow under a network arrow.
    pub fn arrow_image(&self, arrow: usize) -> usize {
        self.arrow_image[arrow]
    }

    pub fn witness(&self, edge: usize) -> EdgeWitness {
        self.witnesses[edge]
    }
}

/// Builds the pullback network. Vertices are pairs over a common quiver
/// vertex in lexicographic order; edges come from equally labelled forks in
/// the first tree and coforks in the second. The construction is not
/// symmetric in its arguments.
pub fn build_pullback_network(
    f1: &TreeMorphism,
    f2: &TreeMorphism,
) -> Result<PullbackNetwork, NetworkError> {
    if f1.codomain() != f2.codomain() {
        return Err(NetworkError::CodomainMismatch);
    }
    let (t1, t2) = (f1.tree(), f2.tree());
    let mut vertices = Vec::new();
    for &n in t1.vertices() {
        for &m in t2.vertices() {
            if f1.vertex_image(n) == f2.vertex_image(m) {
                vertices.push(BaseVertex { n, m });
            }
        }
    }
    let index = |n: u32, m: u32| {
        vertices
            .binary_search(&BaseVertex { n, m })
            .expect("pullback vertex")
    };

    let mut arrows = Vec::new();
    let mut arrow_image = Vec::new();
    for (ai, a) in t1.arrows().iter().enumerate() {
        for (bi, b) in t2.arrows().iter().enumerate() {
            if f1.arrow_image(ai) == f2.arrow_image(bi) {
                arrows.push(NetArrow {
                    label: BaseArrow {
                        a: ai,
                        b: bi,
                        name: format!("({},{})", a.label, b.label).into(),
                    },
                    source: index(a.source, b.source),
                    target: index(a.target, b.target),
                });
                arrow_image.push(f1.arrow_image(ai));
            }
        }
    }

    let mut edges: Vec<([usize; 2], EdgeWitness)> = Vec::new();
    let mut push = |u: usize, v: usize, au: usize, av: usize, kind| {
        let (e, arrows) = if u < v {
            ([u, v], [au, av])
        } else {
            ([v, u], [av, au])
        };
        if !edges.iter().any(|(x, _)| *x == e) {
            edges.push((e, EdgeWitness { kind, arrows }));
        }
    };
    let t1a = t1.arrows();
    for i in 0..t1a.len() {
        for j in i + 1..t1a.len() {
            if t1a[i].source != t1a[j].source || f1.arrow_image(i) != f1.arrow_image(j) {
                continue;
            }
            let (n, n2) = (t1a[i].target, t1a[j].target);
            for &m in t2.vertices() {
                if f2.vertex_image(m) == f1.vertex_image(n) {
                    push(index(n, m), index(n2, m), i, j, EdgeKind::FirstTreeFork);
                }
            }
        }
    }
    let t2a = t2.arrows();
    for i in 0..t2a.len() {
        for j in i + 1..t2a.len() {
            if t2a[i].target != t2a[j].target || f2.arrow_image(i) != f2.arrow_image(j) {
                continue;
            }
            let (m, m2) = (t2a[i].source, t2a[j].source);
            for &n in t1.vertices() {
                if f1.vertex_image(n) == f2.vertex_image(m) {
                    push(index(n, m), index(n, m2), i, j, EdgeKind::SecondTreeCofork);
                }
            }
        }
    }
    edges.sort_by_key(|(e, _)| *e);
    let (edges, witnesses): (Vec<_>, Vec<_>) = edges.into_iter().unzip();
    let net = MixedNetwork::new(vertices, arrows, edges)?;
    Ok(PullbackNetwork {
        net,
        arrow_image,
        witnesses,
    })
}

/// The two-sheeted cover of a pullback network.
///
/// Indexing: the lift of base vertex `v` with sign `j` is `2v + [j = +]`, and
/// the same for arrows. Base edge `e = {u, v}` with `u < v` lifts to edge
/// `2e = {(u,-),(v,+)}` and `2e + 1 = {(u,+),(v,-)}`.
#[derive(Debug, Clone)]
pub struct TwoCover {
    pub net: MixedNetwork<CoverVertex, CoverArrow>,
}

impl TwoCover {
    pub fn project_vertex(v: usize) -> usize {
        v / 2
    }

    pub fn project_arrow(a: usize) -> usize {
        a / 2
    }

    pub fn project_edge(e: usize) -> usize {
        e / 2
    }

    /// The other lift of the same base vertex.
    pub fn partner(v: usize) -> usize {
        v ^ 1
    }

    pub fn lift_vertex(base: usize, sign: Sign) -> usize {
        2 * base + sign.bit()
    }

    pub fn sign(v: usize) -> Sign {
        if v & 1 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

pub fn build_two_cover(n1: &PullbackNetwork) -> TwoCover {
    let base = &n1.net;
    let mut vertices = Vec::with_capacity(2 * base.vertex_count());
    for v in base.vertices() {
        for sign in [Sign::Minus, Sign::Plus] {
            vertices.push(CoverVertex {
                n: v.n,
                m: v.m,
                sign,
            });
        }
    }
    let mut arrows = Vec::with_capacity(2 * base.arrow_count());
    for a in base.arrows() {
        for sign in [Sign::Minus, Sign::Plus] {
            arrows.push(NetArrow {
                label: CoverArrow {
                    base: a.label.clone(),
                    sign,
                },
                source: TwoCover::lift_vertex(a.source, sign),
                target: TwoCover::lift_vertex(a.target, sign),
            });
        }
    }
    let mut edges = Vec::with_capacity(2 * base.edge_count());
    for &[u, v] in base.edges() {
        edges.push([2 * u, 2 * v + 1]);
        edges.push([2 * u + 1, 2 * v]);
    }
    let net = MixedNetwork::new(vertices, arrows, edges).expect("lifting preserves validity");
    TwoCover { net }
}

/// A letter of a word over quiver arrows and their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

/// Freely reduced word of a traversal of the pullback network, letters in
/// the order they are walked. Edges contribute nothing.
pub fn word_of_traversal(n1: &PullbackNetwork, t: &Traversal) -> Vec<Letter> {
    let mut word: Vec<Letter> = Vec::new();
    for &l in t.links() {
        let letter = match l {
            Link::Forward(a) => Letter {
                arrow: n1.arrow_image(a),
                inverse: false,
            },
            Link::Backward(a) => Letter {
                arrow: n1.arrow_image(a),
                inverse: true,
            },
            Link::Edge(_) => continue,
        };
        match word.last() {
            Some(last) if last.arrow == letter.arrow && last.inverse != letter.inverse => {
                word.pop();
            }
            _ => word.push(letter),
        }
    }
    word
}
