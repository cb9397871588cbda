//! Generalised graph maps between push-downs of tree morphisms: completeness,
//! enumeration, ghosts, carving from a homomorphism and decomposition of a
//! homomorphism into graph maps.

mod carve;
mod obligations;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::linalg::{
    hom_defects, FieldSpec, HomDefect, Homomorphism, LinalgError, Rat, Representation,
};
use crate::network::{
    build_pullback_network, build_two_cover, triangles_and_classes, CoverVertex, NetworkError,
    PullbackNetwork, Subnetwork, TriangleStructure, TwoCover,
};
use crate::quiver::{pushdown, QuiverError, TreeMorphism};

pub use carve::{CarveRoute, CarvedGgm, Carving, Decomposition, HexagonChoice, Term};
pub use obligations::{CompletenessReport, Obligation, Unserved};

use obligations::ObligationTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphMapError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("the map is zero")]
    ZeroMap,
    #[error("not a homomorphism: {} defect(s)", .0.len())]
    NotAHomomorphism(Vec<HomDefect>),
    #[error("the pair is not ghost-free; a ghost on {} vertices exists", .0.vertices.len())]
    GhostObstruction(Box<Subnetwork>),
    #[error("subnetwork is not complete ({} unserved obligation(s))", .0.len())]
    NotComplete(Vec<Unserved>),
    #[error("no graph map found inside the support")]
    NoGraphMapInSupport,
    #[error("search limit of {0} steps per seed reached; result unknown")]
    SearchLimit(u64),
}

/// Default step allowance for one seed of a graph map or ghost search.
pub const DEFAULT_SEARCH_LIMIT: u64 = 20_000_000;

/// A generalised graph map: a subnetwork of the two-cover and the
/// homomorphism it realises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralisedGraphMap {
    pub sub: Subnetwork,
    pub hom: Homomorphism,
}

impl GeneralisedGraphMap {
    /// The image under the involution; realises the negated map.
    pub fn negate(&self, pair: &ModulePair) -> GeneralisedGraphMap {
        let sub = flip(&self.sub);
        let hom = pair.hom_of_subnetwork(&sub);
        GeneralisedGraphMap { sub, hom }
    }
}

/// A ghost: complete, connected, R2-free and closed under the involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ghost {
    pub sub: Subnetwork,
}

/// Applies the involution of the two-cover to every vertex and link.
pub fn flip(sub: &Subnetwork) -> Subnetwork {
    Subnetwork {
        vertices: sub.vertices.iter().map(|&v| v ^ 1).collect(),
        arrows: sub.arrows.iter().map(|&a| a ^ 1).collect(),
        edges: sub.edges.iter().map(|&e| e ^ 1).collect(),
    }
}

/// Two tree morphisms into one bound quiver with everything derived from
/// them: push-downs, both networks, triangles and completeness obligations.
#[derive(Debug)]
pub struct ModulePair {
    pub f1: TreeMorphism,
    pub f2: TreeMorphism,
    pub m1: Representation,
    pub m2: Representation,
    pub n1: PullbackNetwork,
    pub n2: TwoCover,
    pub triangles: TriangleStructure,
    table: ObligationTable,
    search_limit: u64,
    ggms: OnceLock<Result<Vec<GeneralisedGraphMap>, GraphMapError>>,
    ghosts: OnceLock<Result<Vec<Ghost>, GraphMapError>>,
    first_ghost: OnceLock<Result<Option<Ghost>, GraphMapError>>,
}

impl ModulePair {
    pub fn new(
        f1: TreeMorphism,
        f2: TreeMorphism,
        field: FieldSpec,
    ) -> Result<Self, GraphMapError> {
        let m1 = pushdown(&f1, field)?;
        let m2 = pushdown(&f2, field)?;
        let n1 = build_pullback_network(&f1, &f2)?;
        let n2 = build_two_cover(&n1);
        let triangles = triangles_and_classes(&n1);
        let table = ObligationTable::build(&f1, &f2, &n1, &n2);
        Ok(ModulePair {
            f1,
            f2,
            m1,
            m2,
            n1,
            n2,
            triangles,
            table,
            search_limit: DEFAULT_SEARCH_LIMIT,
            ggms: OnceLock::new(),
            ghosts: OnceLock::new(),
            first_ghost: OnceLock::new(),
        })
    }

    /// Sets the step allowance per search seed. Searches that run out report
    /// [`GraphMapError::SearchLimit`] instead of a partial answer.
    pub fn with_search_limit(mut self, steps: u64) -> Self {
        self.search_limit = steps.max(1);
        self
    }

    pub fn search_limit(&self) -> u64 {
        self.search_limit
    }

    pub fn field(&self) -> FieldSpec {
        self.m1.field()
    }

    pub fn cover_vertex(&self, v: usize) -> CoverVertex {
        self.n2.net.vertices()[v]
    }

    /// Index of `(n, m, j)` in the two-cover, if that vertex exists.
    pub fn cover_index(&self, n: u32, m: u32, plus: bool) -> Option<usize> {
        let base = self.n1.net.index_of(&crate::network::BaseVertex { n, m })?;
        Some(2 * base + usize::from(plus))
    }

    pub fn obligations(&self, v: usize) -> &[Obligation] {
        self.table.obligations(v)
    }

    pub fn is_complete(&self, sub: &Subnetwork) -> CompletenessReport {
        obligations::completeness(&self.table, sub)
    }

    pub fn is_r2_free(&self, sub: &Subnetwork) -> bool {
        obligations::r2_free(&self.n2, &self.triangles, sub)
    }

    /// Every obligation at every vertex is served by exactly one link.
    pub fn served_exactly_once(&self, sub: &Subnetwork) -> bool {
        obligations::served_exactly_once(&self.table, sub)
    }

    pub fn is_involution_free(&self, sub: &Subnetwork) -> bool {
        obligations::is_involution_free(sub)
    }

    /// Checks every defining condition of a generalised graph map and lists
    /// the ones that fail.
    pub fn ggm_failures(&self, sub: &Subnetwork) -> Vec<&'static str> {
        let mut out = Vec::new();
        if sub.is_empty() {
            out.push("empty");
            return out;
        }
        if !sub.is_connected(&self.n2.net) {
            out.push("disconnected");
        }
        if !obligations::is_involution_free(sub) {
            out.push("meets its image under the involution");
        }
        if !self.is_complete(sub).complete {
            out.push("incomplete");
        }
        if !self.is_r2_free(sub) {
            out.push("contains a blocked pair of links");
        }
        out
    }

    pub fn is_ggm(&self, sub: &Subnetwork) -> bool {
        self.ggm_failures(sub).is_empty()
    }

    pub fn is_ghost(&self, sub: &Subnetwork) -> bool {
        !sub.is_empty()
            && sub.is_connected(&self.n2.net)
            && obligations::is_involution_invariant(&sub.vertices)
            && self.is_complete(sub).complete
            && self.is_r2_free(sub)
    }

    /// The realised map: `v_n` goes to the signed sum of `w_m` over the
    /// vertices `(n, m, j)` of the subnetwork.
    pub fn hom_of_subnetwork(&self, sub: &Subnetwork) -> Homomorphism {
        let field = self.field();
        let mut h = Homomorphism::zero(&self.m1, &self.m2);
        for &v in &sub.vertices {
            let c = self.cover_vertex(v);
            let q = self.f1.vertex_image(c.n);
            let col = fiber_position(&self.m1, q, c.n);
            let row = fiber_position(&self.m2, q, c.m);
            let block = h.block_mut(q);
            let x = block.get(row, col) + crate::linalg::int(c.sign.value());
            block.set(row, col, x);
        }
        h.reduce(field)
    }

    /// Coefficient of `w_m` in the image of `v_n`.
    pub fn coefficient(&self, h: &Homomorphism, n: u32, m: u32) -> Rat {
        let q = self.f1.vertex_image(n);
        h.block(q)
            .get(
                fiber_position(&self.m2, q, m),
                fiber_position(&self.m1, q, n),
            )
            .clone()
    }

    /// Base vertices `(n, m)` of the pullback network whose coefficient in
    /// `h` is nonzero.
    pub fn support(&self, h: &Homomorphism) -> BTreeSet<usize> {
        let field = self.field();
        self.n1
            .net
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, v)| !field.is_zero(&self.coefficient(h, v.n, v.m)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn check_hom(&self, h: &Homomorphism) -> Result<(), GraphMapError> {
        let defects = hom_defects(h, &self.m1, &self.m2)?;
        if defects.is_empty() {
            Ok(())
        } else {
            Err(GraphMapError::NotAHomomorphism(defects))
        }
    }

    fn run(&self, q: search::Query<'_>) -> Result<Vec<Subnetwork>, GraphMapError> {
        search::enumerate(self, q).map_err(|_| GraphMapError::SearchLimit(self.search_limit))
    }

    fn realise(&self, subs: Vec<Subnetwork>) -> Vec<GeneralisedGraphMap> {
        subs.into_iter()
            .map(|sub| GeneralisedGraphMap {
                hom: self.hom_of_subnetwork(&sub),
                sub,
            })
            .collect()
    }

    /// All generalised graph maps, in canonical order (by vertex set, then
    /// links).
    pub fn ggms(&self) -> Result<&[GeneralisedGraphMap], GraphMapError> {
        self.ggms
            .get_or_init(|| {
                Ok(self.realise(self.run(search::Query::all(search::Mode::InvolutionFree))?))
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Generalised graph maps whose vertices project into `allowed`.
    pub fn ggms_within(
        &self,
        allowed: &BTreeSet<usize>,
    ) -> Result<Vec<GeneralisedGraphMap>, GraphMapError> {
        let q = search::Query {
            allowed: Some(allowed),
            ..search::Query::all(search::Mode::InvolutionFree)
        };
        Ok(self.realise(self.run(q)?))
    }

    /// The first generalised graph map (in search order) containing the
    /// two-cover vertex `v`.
    pub fn ggm_through(&self, v: usize) -> Result<Option<GeneralisedGraphMap>, GraphMapError> {
        let q = search::Query {
            seeds: search::Seeds::Through(v),
            first_only: true,
            ..search::Query::all(search::Mode::InvolutionFree)
        };
        Ok(self.realise(self.run(q)?).into_iter().next())
    }

    pub fn ghosts(&self) -> Result<&[Ghost], GraphMapError> {
        self.ghosts
            .get_or_init(|| {
                let subs = self.run(search::Query::all(search::Mode::Invariant))?;
                Ok(subs.into_iter().map(|sub| Ghost { sub }).collect())
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Some ghost, if one exists. Stops at the first one found; the answer
    /// does not depend on thread scheduling.
    pub fn find_ghost(&self) -> Result<Option<Ghost>, GraphMapError> {
        self.first_ghost
            .get_or_init(|| {
                if let Some(Ok(all)) = self.ghosts.get() {
                    return Ok(all.first().cloned());
                }
                let q = search::Query {
                    first_only: true,
                    ..search::Query::all(search::Mode::Invariant)
                };
                Ok(self.run(q)?.into_iter().next().map(|sub| Ghost { sub }))
            })
            .clone()
    }

    pub fn is_ghost_free(&self) -> Result<bool, GraphMapError> {
        Ok(self.find_ghost()?.is_none())
    }

    pub fn describe_vertex(&self, v: usize) -> String {
        self.cover_vertex(v).to_string()
    }

    pub fn describe(&self, sub: &Subnetwork) -> SubnetworkDisplay<'_> {
        SubnetworkDisplay {
            pair: self,
            sub: sub.clone(),
        }
    }
}

fn fiber_position(m: &Representation, q: usize, label: u32) -> usize {
    m.basis(q)
        .iter()
        .position(|&x| x == label)
        .expect("tree vertex lies in the fiber over its image")
}

/// Lists vertices and links of a subnetwork by their labels.
pub struct SubnetworkDisplay<'a> {
    pair: &'a ModulePair,
    sub: Subnetwork,
}

impl fmt::Display for SubnetworkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let net = &self.pair.n2.net;
        let vs: Vec<String> = self
            .sub
            .vertices
            .iter()
            .map(|&v| net.vertices()[v].to_string())
            .collect();
        write!(f, "vertices {{{}}}", vs.join(", "))?;
        let mut links = Vec::new();
        for &a in &self.sub.arrows {
            let x = &net.arrows()[a];
            links.push(format!(
                "{} -> {}",
                net.vertices()[x.source],
                net.vertices()[x.target]
            ));
        }
        for &e in &self.sub.edges {
            let [x, y] = net.edges()[e];
            links.push(format!("{} -- {}", net.vertices()[x], net.vertices()[y]));
        }
        write!(f, "; links {{{}}}", links.join(", "))
    }
}
