//! Carving a complete subnetwork into an R2-free one, recovering a graph map
//! inside the support of a homomorphism, and peeling a homomorphism into a
//! combination of graph maps.

use std::collections::BTreeSet;

use super::{GeneralisedGraphMap, GraphMapError, ModulePair};
use crate::linalg::{int, Homomorphism, Rat};
use crate::network::{LinkId, Subnetwork, TwoCover};

/// The perfect matching chosen on the hexagon over an odd leftover triple
/// `x, y, z` of an R-system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexagonChoice {
    pub triple: [usize; 3],
    /// Lift of `{x, y}` at `(x, +)`, lift of `{x, z}` at `(x, -)`, and the
    /// lift of `{y, z}` covering the remaining two vertices.
    pub matching: [LinkId; 3],
    /// Both lifts of `{x, y}`.
    pub first_pair_lifts: [LinkId; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carving {
    pub sub: Subnetwork,
    pub hexagons: Vec<HexagonChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarveRoute {
    /// Component of the carved preimage of the support, after the hexagon
    /// repairs.
    Constructive,
    /// The constructive route failed its checks; found by searching inside
    /// the support instead.
    RestrictedSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarvedGgm {
    pub ggm: GeneralisedGraphMap,
    pub route: CarveRoute,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rat,
    pub ggm: GeneralisedGraphMap,
    pub route: CarveRoute,
}

/// `h = Σ coefficient · hom` over the terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<Term>,
}

impl Decomposition {
    pub fn sum(&self, pair: &ModulePair) -> Homomorphism {
        self.terms
            .iter()
            .fold(Homomorphism::zero(&pair.m1, &pair.m2), |acc, t| {
                acc.add(&t.ggm.hom.scale(&t.coefficient))
            })
            .reduce(pair.field())
    }
}

fn lifts(l: LinkId) -> [LinkId; 2] {
    match l {
        LinkId::Arrow(a) => [LinkId::Arrow(2 * a), LinkId::Arrow(2 * a + 1)],
        LinkId::Edge(e) => [LinkId::Edge(2 * e), LinkId::Edge(2 * e + 1)],
    }
}

impl ModulePair {
    fn base_link(&self, u: usize, v: usize) -> LinkId {
        *self
            .n1
            .net
            .links_between(u, v)
            .first()
            .expect("vertices of an R-system are pairwise linked")
    }

    fn lift_at(&self, u: usize, v: usize, at: usize) -> LinkId {
        lifts(self.base_link(u, v))
            .into_iter()
            .find(|&l| self.n2.net.endpoints(l).contains(&at))
            .expect("each lift of a link meets one lift of each endpoint")
    }

    /// Carves the full preimage of a base vertex set. The preimage must be
    /// complete. Inside each R-system all links are dropped and replaced by
    /// both lifts of the links joining consecutive pairs; an odd leftover
    /// triple gets a perfect matching of its hexagon.
    pub fn carve(&self, within: &BTreeSet<usize>) -> Result<Carving, GraphMapError> {
        let net = &self.n2.net;
        let mut sub = Subnetwork::induced(net, within.iter().flat_map(|&b| [2 * b, 2 * b + 1]));
        let report = self.is_complete(&sub);
        if !report.complete {
            return Err(GraphMapError::NotComplete(report.violations));
        }
        let mut hexagons = Vec::new();
        for system in self.triangles.r_systems(within) {
            let cover: BTreeSet<usize> = system.cover_vertices.iter().copied().collect();
            let inside: Vec<LinkId> = sub
                .links()
                .filter(|&l| net.endpoints(l).iter().all(|v| cover.contains(v)))
                .collect();
            for l in inside {
                sub.remove_link(l);
            }
            let xs = &system.base_vertices;
            let k = xs.len();
            let paired = if k % 2 == 0 { k } else { k - 3 };
            for p in xs[..paired].chunks(2) {
                for l in lifts(self.base_link(p[0], p[1])) {
                    sub.insert_link(l);
                }
            }
            if k % 2 == 1 {
                let (x, y, z) = (xs[k - 3], xs[k - 2], xs[k - 1]);
                let a = self.lift_at(x, y, 2 * x + 1);
                let b = self.lift_at(x, z, 2 * x);
                let used: Vec<usize> = [a, b].iter().flat_map(|&l| net.endpoints(l)).collect();
                let c = lifts(self.base_link(y, z))
                    .into_iter()
                    .find(|&l| net.endpoints(l).iter().all(|v| !used.contains(v)))
                    .expect("the lifted triangle is a hexagon");
                for l in [a, b, c] {
                    sub.insert_link(l);
                }
                hexagons.push(HexagonChoice {
                    triple: [x, y, z],
                    matching: [a, b, c],
                    first_pair_lifts: lifts(self.base_link(x, y)),
                });
            }
        }
        Ok(Carving { sub, hexagons })
    }

    /// A generalised graph map whose vertices lie over the support of `h`.
    ///
    /// Carves the preimage of the support, takes a component that is not
    /// closed under the involution, repairs the hexagons it meets, and keeps
    /// the component of a vertex whose partner lies outside. If that result
    /// fails any defining condition, falls back to a search restricted to
    /// the support.
    pub fn carve_ggm_from_hom(&self, h: &Homomorphism) -> Result<CarvedGgm, GraphMapError> {
        self.check_hom(h)?;
        if let Some(g) = self.find_ghost()? {
            return Err(GraphMapError::GhostObstruction(Box::new(g.sub)));
        }
        let supp = self.support(h);
        if supp.is_empty() {
            return Err(GraphMapError::ZeroMap);
        }
        if let Some(sub) = self.carve_constructively(&supp)? {
            return Ok(CarvedGgm {
                ggm: GeneralisedGraphMap {
                    hom: self.hom_of_subnetwork(&sub),
                    sub,
                },
                route: CarveRoute::Constructive,
            });
        }
        self.ggms_within(&supp)?
            .into_iter()
            .next()
            .map(|ggm| CarvedGgm {
                ggm,
                route: CarveRoute::RestrictedSearch,
            })
            .ok_or(GraphMapError::NoGraphMapInSupport)
    }

    fn carve_constructively(
        &self,
        supp: &BTreeSet<usize>,
    ) -> Result<Option<Subnetwork>, GraphMapError> {
        let net = &self.n2.net;
        let carving = self.carve(supp)?;
        let Some(comp) = carving
            .sub
            .components(net)
            .into_iter()
            .find(|c| c.iter().any(|&v| !c.contains(&TwoCover::partner(v))))
        else {
            return Ok(None);
        };
        let anchor = *comp
            .iter()
            .find(|&&v| !comp.contains(&TwoCover::partner(v)))
            .expect("component is not closed under the involution");
        let mut m = carving.sub.restrict(net, &comp);
        for hex in &carving.hexagons {
            let present: Vec<LinkId> = hex
                .matching
                .iter()
                .copied()
                .filter(|&l| m.contains_link(l))
                .collect();
            match present.len() {
                2 => {
                    let [p1, p2] = net.endpoints(present[0]);
                    let [q1, q2] = net.endpoints(present[1]);
                    let ends = [(p1, p2), (p2, p1)]
                        .into_iter()
                        .flat_map(|(p, r)| {
                            [(q1, q2), (q2, q1)]
                                .into_iter()
                                .map(move |(q, s)| (p, r, q, s))
                        })
                        .find(|&(p, _, q, _)| q == TwoCover::partner(p));
                    let Some((_, r, _, s)) = ends else { continue };
                    let Some(&joining) = net.links_between(r, s).first() else {
                        continue;
                    };
                    m.remove_link(present[0]);
                    m.remove_link(present[1]);
                    m.insert_link(joining);
                }
                3 => {
                    for l in present {
                        m.remove_link(l);
                    }
                    for l in hex.first_pair_lifts {
                        if net.endpoints(l).iter().all(|v| m.vertices.contains(v)) {
                            m.insert_link(l);
                        }
                    }
                }
                _ => {}
            }
        }
        let g_vertices = m
            .components(net)
            .into_iter()
            .find(|c| c.contains(&anchor))
            .expect("anchor lies in the repaired network");
        let g = m.restrict(net, &g_vertices);
        let within = g
            .vertices
            .iter()
            .all(|&v| supp.contains(&TwoCover::project_vertex(v)));
        Ok((within && self.is_ggm(&g)).then_some(g))
    }

    /// Writes `h` as a combination of generalised graph maps. Each step
    /// cancels the coefficient at the smallest vertex of a graph map carved
    /// from the current support, so the support strictly shrinks.
    pub fn decompose_hom(&self, h: &Homomorphism) -> Result<Decomposition, GraphMapError> {
        self.check_hom(h)?;
        if let Some(g) = self.find_ghost()? {
            return Err(GraphMapError::GhostObstruction(Box::new(g.sub)));
        }
        let field = self.field();
        let mut rest = h.reduce(field);
        let mut terms = Vec::new();
        let mut supp = self.support(&rest);
        while !supp.is_empty() {
            let CarvedGgm { ggm, route } = self.carve_ggm_from_hom(&rest)?;
            let first = *ggm.sub.vertices.first().expect("graph maps are nonempty");
            let v = self.cover_vertex(first);
            let mu = self.coefficient(&rest, v.n, v.m);
            let coefficient = field.reduce(&(int(v.sign.value()) * mu));
            rest = rest.sub(&ggm.hom.scale(&coefficient)).reduce(field);
            let next = self.support(&rest);
            assert!(
                next.len() < supp.len() && next.is_subset(&supp),
                "peeling a graph map must shrink the support"
            );
            supp = next;
            terms.push(Term {
                coefficient,
                ggm,
                route,
            });
        }
        let d = Decomposition { terms };
        assert!(
            d.sum(self).eq_in(h, field),
            "decomposition does not sum to the input"
        );
        Ok(d)
    }
}
