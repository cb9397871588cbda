//! Indecomposability verdicts for generalised tree modules.
//!
//! Indecomposability is proved either through the tree-module fast path or
//! through the two graph-map conditions on the pair `(M, M)`; decomposability
//! is proved by building an explicit idempotent from a root with several
//! equally labelled arrows. Nothing here is concluded from the brute-force
//! oracle alone.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graphmap::{GraphMapError, ModulePair, DEFAULT_SEARCH_LIMIT};
use crate::linalg::{
    decompose_by_idempotent, hom_space, is_indecomposable_oracle, verify_hom, FieldSpec,
    Homomorphism, OracleConfig, OracleOutcome, OracleVerdict, Rat,
};
use crate::network::{LinkId, Subnetwork};
use crate::quiver::{validate_morphism, TreeMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndecError {
    #[error(transparent)]
    GraphMap(#[from] GraphMapError),
    #[error("`{0}` is not a tree module")]
    NotATreeModule(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofRoute {
    TreeModule,
    GraphMapConditions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Indecomposable {
        route: ProofRoute,
    },
    Decomposable {
        idempotent: Homomorphism,
        image_dims: Vec<usize>,
        kernel_dims: Vec<usize>,
    },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub transcript: Vec<String>,
    pub oracle: Option<OracleVerdict>,
}

impl Verdict {
    fn new(outcome: Outcome, transcript: Vec<String>) -> Self {
        Verdict {
            outcome,
            transcript,
            oracle: None,
        }
    }

    pub fn is_indecomposable(&self) -> bool {
        matches!(self.outcome, Outcome::Indecomposable { .. })
    }

    pub fn is_decomposable(&self) -> bool {
        matches!(self.outcome, Outcome::Decomposable { .. })
    }

    /// `Some(false)` when the oracle reached a conclusion contradicting a
    /// proved verdict; `None` when there is nothing to compare.
    pub fn oracle_agrees(&self) -> Option<bool> {
        let o = &self.oracle.as_ref()?.outcome;
        match (&self.outcome, o) {
            (Outcome::Indecomposable { .. }, OracleOutcome::Indecomposable) => Some(true),
            (Outcome::Indecomposable { .. }, OracleOutcome::Decomposable { .. }) => Some(false),
            (Outcome::Decomposable { .. }, OracleOutcome::Decomposable { .. }) => Some(true),
            (Outcome::Decomposable { .. }, OracleOutcome::Indecomposable) => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Indecomposable { route } => match route {
                ProofRoute::TreeModule => f.write_str("indecomposable (tree module)"),
                ProofRoute::GraphMapConditions => {
                    f.write_str("indecomposable (graph map conditions)")
                }
            },
            Outcome::Decomposable { .. } => f.write_str("decomposable (idempotent witness)"),
            Outcome::Unknown => f.write_str("unknown"),
        }
    }
}

/// Sum of traces equals sum of ranks, as for any idempotent.
pub fn trace_rank_identity(e: &Homomorphism, field: FieldSpec) -> bool {
    let trace: Rat = e.blocks().iter().map(|b| b.trace()).sum();
    let rank: usize = e.blocks().iter().map(|b| b.rank(field)).sum();
    field.eq(&trace, &crate::linalg::int(rank as i64))
}

/// A tree module is indecomposable without further checks.
pub fn tree_module_fastpath(f: &TreeMorphism) -> Result<Verdict, IndecError> {
    let report = validate_morphism(f);
    if !report.is_bound || !report.is_tree_module {
        return Err(IndecError::NotATreeModule(f.name().to_string()));
    }
    Ok(Verdict::new(
        Outcome::Indecomposable {
            route: ProofRoute::TreeModule,
        },
        vec!["no two arrows at a common vertex share an image".into()],
    ))
}

/// Ordered pairs `(n1, n2)` of distinct ends of a fork or cofork in the tree
/// whose two arrows have equal images.
pub fn equal_image_spans(f: &TreeMorphism) -> BTreeSet<(u32, u32)> {
    let arrows = f.tree().arrows();
    let mut out = BTreeSet::new();
    for (i, x) in arrows.iter().enumerate() {
        for (j, y) in arrows.iter().enumerate() {
            if i == j || f.arrow_image(i) != f.arrow_image(j) {
                continue;
            }
            if x.source == y.source {
                out.insert((x.target, y.target));
            }
            if x.target == y.target {
                out.insert((x.source, y.source));
            }
        }
    }
    out
}

/// Result of checking both graph-map conditions, with the concrete
/// witnesses of any failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub ghost_free: bool,
    /// `(n1, n2, graph map through (n1, n2, +))` over equal image spans.
    pub first_failures: Vec<(u32, u32, Subnetwork)>,
    /// Pairs `n1 < n2` with graph maps through both `(n1, n2, +)` and
    /// `(n2, n1, +)`.
    pub second_failures: Vec<(u32, u32, Subnetwork, Subnetwork)>,
    /// The same two conditions read off coefficients of an End basis.
    pub coefficient_first_holds: bool,
    pub coefficient_second_holds: bool,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.ghost_free && self.first_failures.is_empty() && self.second_failures.is_empty()
    }

    /// The graph-map and coefficient readings agree (meaningful only for
    /// ghost-free pairs).
    pub fn routes_agree(&self) -> bool {
        self.first_failures.is_empty() == self.coefficient_first_holds
            && self.second_failures.is_empty() == self.coefficient_second_holds
    }
}

/// A graph map through `(n1, n2, +)`, if any. Maps through `(n1, n2, -)`
/// are the negatives of these.
fn through(pair: &ModulePair, n1: u32, n2: u32) -> Result<Option<Subnetwork>, GraphMapError> {
    match pair.cover_index(n1, n2, true) {
        Some(v) => Ok(pair.ggm_through(v)?.map(|g| g.sub)),
        None => Ok(None),
    }
}

pub fn check_conditions(pair: &ModulePair) -> Result<ConditionReport, IndecError> {
    let ghost_free = pair.is_ghost_free()?;
    let spans = equal_image_spans(&pair.f1);
    let mut first_failures = Vec::new();
    for &(a, b) in &spans {
        if let Some(g) = through(pair, a, b)? {
            first_failures.push((a, b, g));
        }
    }
    let mut second_failures = Vec::new();
    for v in pair.n1.net.vertices().iter().filter(|v| v.n < v.m) {
        if let Some(g) = through(pair, v.n, v.m)? {
            if let Some(h) = through(pair, v.m, v.n)? {
                second_failures.push((v.n, v.m, g, h));
            }
        }
    }

    let field = pair.field();
    let basis = hom_space(&pair.m1, &pair.m2).map_err(GraphMapError::from)?;
    let nonzero: BTreeSet<(u32, u32)> = pair
        .n1
        .net
        .vertices()
        .iter()
        .filter(|v| v.n != v.m)
        .filter(|v| {
            basis
                .iter()
                .any(|h| !field.is_zero(&pair.coefficient(h, v.n, v.m)))
        })
        .map(|v| (v.n, v.m))
        .collect();
    let coefficient_first_holds = spans.iter().all(|p| !nonzero.contains(p));
    let coefficient_second_holds = nonzero.iter().all(|&(a, b)| !nonzero.contains(&(b, a)));
    Ok(ConditionReport {
        ghost_free,
        first_failures,
        second_failures,
        coefficient_first_holds,
        coefficient_second_holds,
    })
}

/// Proves indecomposability when `(M, M)` is ghost-free and both graph-map
/// conditions hold; otherwise the verdict is unknown with the failures named.
pub fn theorem_b_check(f: &TreeMorphism, field: FieldSpec) -> Result<Verdict, IndecError> {
    let pair = ModulePair::new(f.clone(), f.clone(), field)?;
    limited(conditions_on_pair(&pair))
}

/// Turns a search that ran out of steps into an unknown verdict.
fn limited(r: Result<Verdict, IndecError>) -> Result<Verdict, IndecError> {
    match r {
        Err(IndecError::GraphMap(GraphMapError::SearchLimit(n))) => Ok(Verdict::new(
            Outcome::Unknown,
            vec![format!(
                "graph map search stopped at its limit of {n} steps per seed"
            )],
        )),
        r => r,
    }
}

fn conditions_on_pair(pair: &ModulePair) -> Result<Verdict, IndecError> {
    let r = check_conditions(pair)?;
    let mut t = Vec::new();
    if !r.ghost_free {
        let ghost = pair.find_ghost()?.map_or(0, |g| g.sub.vertices.len());
        t.push(format!(
            "(M, M) is not ghost-free: a ghost on {ghost} vertices"
        ));
        return Ok(Verdict::new(Outcome::Unknown, t));
    }
    t.push("(M, M) is ghost-free".into());
    for (a, b, g) in &r.first_failures {
        t.push(format!(
            "condition 1 fails: ({a},{b}) spans equal images and lies on {}",
            pair.describe(g)
        ));
    }
    for (a, b, g, h) in &r.second_failures {
        t.push(format!(
            "condition 2 fails: graph maps through ({a},{b},+) and ({b},{a},+): {} and {}",
            pair.describe(g),
            pair.describe(h)
        ));
    }
    if !r.routes_agree() {
        t.push("coefficient check disagrees with graph map check".into());
        return Ok(Verdict::new(Outcome::Unknown, t));
    }
    t.push("coefficient check on an End basis agrees".into());
    if r.holds() {
        t.push("conditions 1 and 2 hold".into());
        Ok(Verdict::new(
            Outcome::Indecomposable {
                route: ProofRoute::GraphMapConditions,
            },
            t,
        ))
    } else {
        Ok(Verdict::new(Outcome::Unknown, t))
    }
}

/// Arrows at the root point away from it (`Out`) or towards it (`In`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrientation {
    Out,
    In,
}

/// A root with `k >= 2` equally labelled arrows of one orientation, and the
/// subtrees hanging off their far ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootShape {
    pub root: u32,
    pub orientation: RootOrientation,
    /// Tree arrow indices, ordered by child label.
    pub arrows: Vec<usize>,
    pub children: Vec<u32>,
    pub subtrees: Vec<BTreeSet<u32>>,
    /// No two arrows of a closed subtree (subtree plus root arrow) at a
    /// common vertex share an image.
    pub subtrees_injective: bool,
}

/// All root shapes, ordered by root label with `Out` before `In`.
pub fn root_shapes(f: &TreeMorphism) -> Vec<RootShape> {
    let tree = f.tree();
    let arrows = tree.arrows();
    let mut out = Vec::new();
    for &root in tree.vertices() {
        for orientation in [RootOrientation::Out, RootOrientation::In] {
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            let at_root: Vec<usize> = match orientation {
                RootOrientation::Out => tree.outgoing(root).collect(),
                RootOrientation::In => tree.incoming(root).collect(),
            };
            for a in at_root {
                groups.entry(f.arrow_image(a)).or_default().push(a);
            }
            for (_, mut group) in groups {
                if group.len() < 2 {
                    continue;
                }
                let child = |a: usize| match orientation {
                    RootOrientation::Out => arrows[a].target,
                    RootOrientation::In => arrows[a].source,
                };
                group.sort_by_key(|&a| child(a));
                let children: Vec<u32> = group.iter().map(|&a| child(a)).collect();
                let subtrees: Vec<BTreeSet<u32>> = group
                    .iter()
                    .map(|&a| tree.component_without(child(a), &[a]).into_iter().collect())
                    .collect();
                let subtrees_injective = group.iter().zip(&subtrees).all(|(&a, s)| {
                    let closed: Vec<usize> = (0..arrows.len())
                        .filter(|&i| {
                            i == a
                                || (s.contains(&arrows[i].source) && s.contains(&arrows[i].target))
                        })
                        .collect();
                    closed.iter().all(|&c| {
                        closed.iter().all(|&d| {
                            c == d
                                || !(arrows[c].source == arrows[d].source
                                    || arrows[c].target == arrows[d].target)
                                || f.arrow_image(c) != f.arrow_image(d)
                        })
                    })
                });
                out.push(RootShape {
                    root,
                    orientation,
                    arrows: group,
                    children,
                    subtrees,
                    subtrees_injective,
                });
            }
        }
    }
    out
}

/// Builds the idempotent of the converse construction from a root shape
/// whose subtrees are injective and a graph map through `(n1, n2, +)` for
/// distinct children `n1`, `n2`.
pub fn conv_decompose(f: &TreeMorphism, field: FieldSpec) -> Result<Verdict, IndecError> {
    let pair = ModulePair::new(f.clone(), f.clone(), field)?;
    limited(conv_on_pair(&pair))
}

fn conv_on_pair(pair: &ModulePair) -> Result<Verdict, IndecError> {
    let mut t = Vec::new();
    let shapes = root_shapes(&pair.f1);
    if shapes.is_empty() {
        t.push("no root with two equally labelled arrows".into());
    }
    for shape in shapes.iter().filter(|s| s.subtrees_injective) {
        for (i1, &n1) in shape.children.iter().enumerate() {
            for (i2, &n2) in shape.children.iter().enumerate() {
                if i1 == i2 {
                    continue;
                }
                let Some(g) = through(pair, n1, n2)? else {
                    continue;
                };
                let Some(sub) = converse_subnetwork(pair, shape, i1, i2, &g) else {
                    continue;
                };
                let failures = pair.ggm_failures(&sub);
                let e = pair.hom_of_subnetwork(&sub);
                let m = &pair.m1;
                let nontrivial = !e.is_zero_in(field_of(pair))
                    && !e.eq_in(&Homomorphism::identity(m), field_of(pair));
                if !failures.is_empty() || !nontrivial {
                    t.push(format!(
                        "root {} children ({n1},{n2}): constructed network rejected ({})",
                        shape.root,
                        if failures.is_empty() {
                            "trivial map".to_string()
                        } else {
                            failures.join(", ")
                        }
                    ));
                    continue;
                }
                let Ok((image_dims, kernel_dims)) = decompose_by_idempotent(m, &e) else {
                    t.push(format!(
                        "root {} children ({n1},{n2}): map is not idempotent",
                        shape.root
                    ));
                    continue;
                };
                assert!(verify_hom(&e, m, m).unwrap_or(false));
                assert!(trace_rank_identity(&e, field_of(pair)));
                t.push(format!(
                    "root {} ({:?}), children {n1} and {n2}: idempotent from a graph map through ({n1},{n2},+)",
                    shape.root, shape.orientation
                ));
                return Ok(Verdict::new(
                    Outcome::Decomposable {
                        idempotent: e,
                        image_dims,
                        kernel_dims,
                    },
                    t,
                ));
            }
        }
        t.push(format!(
            "root {}: no graph map joins two distinct children",
            shape.root
        ));
    }
    Ok(Verdict::new(Outcome::Unknown, t))
}

fn field_of(pair: &ModulePair) -> FieldSpec {
    pair.field()
}

/// The network of the converse construction: the part of `g` over the pair
/// of subtrees, the diagonal on the remaining tree (dropping the subtree of
/// `n2` for `Out`, of `n1` for `In`), and the arrow `(a_{n1}, a_{n2}, +)`.
fn converse_subnetwork(
    pair: &ModulePair,
    shape: &RootShape,
    i1: usize,
    i2: usize,
    g: &Subnetwork,
) -> Option<Subnetwork> {
    let net = &pair.n2.net;
    let arrows = pair.f1.tree().arrows();
    let (s1, s2) = (&shape.subtrees[i1], &shape.subtrees[i2]);
    let inner: BTreeSet<usize> = g
        .vertices
        .iter()
        .copied()
        .filter(|&v| {
            let c = pair.cover_vertex(v);
            s1.contains(&c.n) && s2.contains(&c.m)
        })
        .collect();
    let mut sub = g.restrict(net, &inner);
    sub.edges.clear();
    let (dropped, dropped_arrow) = match shape.orientation {
        RootOrientation::Out => (s2, shape.arrows[i2]),
        RootOrientation::In => (s1, shape.arrows[i1]),
    };
    let lifted: HashMap<(usize, usize), usize> = pair
        .n1
        .net
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.label.a, a.label.b), 2 * i + 1))
        .collect();
    for &n in pair.f1.tree().vertices() {
        if !dropped.contains(&n) {
            sub.vertices.insert(pair.cover_index(n, n, true)?);
        }
    }
    for (a, x) in arrows.iter().enumerate() {
        let in_dropped =
            a == dropped_arrow || (dropped.contains(&x.source) && dropped.contains(&x.target));
        if !in_dropped {
            sub.insert_link(LinkId::Arrow(*lifted.get(&(a, a))?));
        }
    }
    sub.insert_link(LinkId::Arrow(
        *lifted.get(&(shape.arrows[i1], shape.arrows[i2]))?,
    ));
    Some(sub)
}

/// One data point on whether a root with a graph map between two of its
/// children always yields a decomposable module, also when the subtrees are
/// not injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureEvidence {
    pub root: u32,
    pub children: (u32, u32),
    pub subtrees_injective: bool,
    pub oracle: Option<OracleOutcome>,
    /// The oracle found the module indecomposable.
    pub counterexample_candidate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub field: FieldSpec,
    pub oracle: Option<OracleConfig>,
    /// Step allowance per seed for graph map and ghost searches.
    pub search_limit: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            field: FieldSpec::Rational,
            oracle: Some(OracleConfig::default()),
            search_limit: DEFAULT_SEARCH_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Vec<ConjectureEvidence>,
}

/// Tree-module fast path, then the graph-map conditions, then the converse
/// construction. The oracle verdict is attached for comparison only.
pub fn classify(f: &TreeMorphism, options: &ClassifyOptions) -> Result<Classification, IndecError> {
    let oracle = match options.oracle {
        Some(cfg) => {
            let m = crate::quiver::pushdown(f, options.field).map_err(GraphMapError::from)?;
            Some(is_indecomposable_oracle(&m, cfg).map_err(GraphMapError::from)?)
        }
        None => None,
    };
    if let Ok(mut v) = tree_module_fastpath(f) {
        v.oracle = oracle;
        return Ok(Classification {
            verdict: v,
            evidence: Vec::new(),
        });
    }
    let pair = ModulePair::new(f.clone(), f.clone(), options.field)?
        .with_search_limit(options.search_limit);
    let b = limited(conditions_on_pair(&pair))?;
    let evidence = conjecture_evidence(&pair, oracle.as_ref()).unwrap_or_default();
    let mut verdict = if b.is_indecomposable() {
        b
    } else {
        let mut c = limited(conv_on_pair(&pair))?;
        let mut t = b.transcript;
        t.append(&mut c.transcript);
        c.transcript = t;
        c
    };
    verdict.oracle = oracle;
    Ok(Classification { verdict, evidence })
}

fn conjecture_evidence(
    pair: &ModulePair,
    oracle: Option<&OracleVerdict>,
) -> Result<Vec<ConjectureEvidence>, GraphMapError> {
    let mut out = Vec::new();
    for shape in root_shapes(&pair.f1) {
        let mut hit = None;
        'find: for &a in &shape.children {
            for &b in &shape.children {
                if a != b && through(pair, a, b)?.is_some() {
                    hit = Some((a, b));
                    break 'find;
                }
            }
        }
        if let Some(children) = hit {
            let outcome = oracle.map(|o| o.outcome.clone());
            out.push(ConjectureEvidence {
                root: shape.root,
                children,
                subtrees_injective: shape.subtrees_injective,
                counterexample_candidate: matches!(outcome, Some(OracleOutcome::Indecomposable)),
                oracle: outcome,
            });
        }
    }
    Ok(out)
}
