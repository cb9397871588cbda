//! Completeness obligations at vertices of the two-cover, and the link that
//! can serve each of them.

use std::collections::BTreeSet;
use std::fmt;

use crate::network::{EdgeKind, LinkId, PullbackNetwork, Subnetwork, TriangleStructure, TwoCover};
use crate::quiver::TreeMorphism;

/// What a vertex `(n, m, j)` of a complete subnetwork must witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obligation {
    /// An arrow of the first tree ending at `n` (by index).
    Incoming(usize),
    /// An arrow of the second tree starting at `m` (by index).
    Outgoing(usize),
}

impl Obligation {
    pub fn describe(&self, f1: &TreeMorphism, f2: &TreeMorphism) -> String {
        match *self {
            Obligation::Incoming(a) => {
                let x = &f1.tree().arrows()[a];
                format!("incoming {}: {} -> {}", x.label, x.source, x.target)
            }
            Obligation::Outgoing(b) => {
                let x = &f2.tree().arrows()[b];
                format!("outgoing {}: {} -> {}", x.label, x.source, x.target)
            }
        }
    }
}

/// An obligation left unserved at a vertex of the two-cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unserved {
    pub vertex: usize,
    pub obligation: Obligation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub complete: bool,
    pub violations: Vec<Unserved>,
}

impl fmt::Display for Unserved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex #{} lacks {:?}", self.vertex, self.obligation)
    }
}

/// Obligations of every base vertex (shared by both lifts) and, for every
/// link end, the obligation that link serves there.
#[derive(Debug, Clone)]
pub(crate) struct ObligationTable {
    /// `per_base[v]`: obligations of base vertex `v`, in a fixed order.
    pub per_base: Vec<Vec<Obligation>>,
    /// For each cover vertex and local obligation index: serving links and
    /// the other endpoint with its local obligation index there.
    pub servers: Vec<Vec<Vec<(LinkId, usize, usize)>>>,
}

impl ObligationTable {
    pub fn build(
        f1: &TreeMorphism,
        f2: &TreeMorphism,
        n1: &PullbackNetwork,
        n2: &TwoCover,
    ) -> Self {
        let base = &n1.net;
        let per_base: Vec<Vec<Obligation>> = base
            .vertices()
            .iter()
            .map(|v| {
                let mut o: Vec<Obligation> =
                    f1.tree().incoming(v.n).map(Obligation::Incoming).collect();
                o.extend(f2.tree().outgoing(v.m).map(Obligation::Outgoing));
                o
            })
            .collect();
        let local = |v: usize, o: Obligation| -> usize {
            per_base[TwoCover::project_vertex(v)]
                .iter()
                .position(|&x| x == o)
                .expect("link serves an obligation of its endpoint")
        };
        let mut servers: Vec<Vec<Vec<(LinkId, usize, usize)>>> = (0..n2.net.vertex_count())
            .map(|v| vec![Vec::new(); per_base[TwoCover::project_vertex(v)].len()])
            .collect();
        for (i, a) in n2.net.arrows().iter().enumerate() {
            let l = LinkId::Arrow(i);
            let at_target = local(a.target, Obligation::Incoming(a.label.base.a));
            let at_source = local(a.source, Obligation::Outgoing(a.label.base.b));
            servers[a.target][at_target].push((l, a.source, at_source));
            servers[a.source][at_source].push((l, a.target, at_target));
        }
        for (i, &[x, y]) in n2.net.edges().iter().enumerate() {
            let l = LinkId::Edge(i);
            let w = n1.witness(TwoCover::project_edge(i));
            let ob = |k: usize| match w.kind {
                EdgeKind::FirstTreeFork => Obligation::Incoming(w.arrows[k]),
                EdgeKind::SecondTreeCofork => Obligation::Outgoing(w.arrows[k]),
            };
            // lifted edge endpoints keep the base order since u < v implies 2u+s < 2v+t
            let (ox, oy) = (local(x, ob(0)), local(y, ob(1)));
            servers[x][ox].push((l, y, oy));
            servers[y][oy].push((l, x, ox));
        }
        ObligationTable { per_base, servers }
    }

    pub fn obligations(&self, v: usize) -> &[Obligation] {
        &self.per_base[TwoCover::project_vertex(v)]
    }

    /// Number of links of `sub` serving each obligation at `v`.
    pub fn served_counts(&self, sub: &Subnetwork, v: usize) -> Vec<usize> {
        self.servers[v]
            .iter()
            .map(|links| {
                links
                    .iter()
                    .filter(|(l, _, _)| sub.contains_link(*l))
                    .count()
            })
            .collect()
    }
}

pub(crate) fn completeness(table: &ObligationTable, sub: &Subnetwork) -> CompletenessReport {
    let mut violations = Vec::new();
    for &v in &sub.vertices {
        for (o, count) in table.served_counts(sub, v).into_iter().enumerate() {
            if count == 0 {
                violations.push(Unserved {
                    vertex: v,
                    obligation: table.obligations(v)[o],
                });
            }
        }
    }
    CompletenessReport {
        complete: violations.is_empty(),
        violations,
    }
}

/// Whether two links meeting at `v` with far ends `p` and `q` form a blocked
/// traversal: the three projected vertices span a triangle.
pub(crate) fn blocked_pair(tri: &TriangleStructure, p: usize, v: usize, q: usize) -> bool {
    let (a, b, c) = (
        TwoCover::project_vertex(p),
        TwoCover::project_vertex(v),
        TwoCover::project_vertex(q),
    );
    a != b && b != c && a != c && tri.is_triangle(a, b, c)
}

pub(crate) fn r2_free(n2: &TwoCover, tri: &TriangleStructure, sub: &Subnetwork) -> bool {
    for &v in &sub.vertices {
        let ends: Vec<usize> = sub.incident(&n2.net, v).map(|(_, w)| w).collect();
        for (i, &p) in ends.iter().enumerate() {
            for &q in &ends[i + 1..] {
                if blocked_pair(tri, p, v, q) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every obligation at every vertex is served by exactly one link of `sub`.
pub(crate) fn served_exactly_once(table: &ObligationTable, sub: &Subnetwork) -> bool {
    sub.vertices
        .iter()
        .all(|&v| table.served_counts(sub, v).into_iter().all(|c| c == 1))
}

pub(crate) fn is_involution_free(sub: &Subnetwork) -> bool {
    sub.vertices
        .iter()
        .all(|&v| !sub.vertices.contains(&TwoCover::partner(v)))
}

pub(crate) fn is_involution_invariant(vertices: &BTreeSet<usize>) -> bool {
    vertices
        .iter()
        .all(|&v| vertices.contains(&TwoCover::partner(v)))
}
