//! Type D Dynkin quivers, their positive roots, and a generalised tree
//! module for every root.
//!
//! Vertices are `1..=n`; the chain arrows `e1..e{n-3}` join `i` and `i+1`,
//! `b` joins `n-2` and `n-1`, and `c` joins `n-2` and `n`. A root with a 2
//! has the shape `0..0 1..1 2..2 1 1`. Over the doubled vertices `v` the
//! tree has two copies, `v` (upper) and `v + n` (lower).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::indec::{classify, ClassifyOptions, Outcome};
use crate::linalg::FieldSpec;
use crate::quiver::{pushdown, validate_morphism, BoundQuiver, QuiverError, Tree, TreeMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynkinError {
    #[error("type D needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("orientation needs {expected} characters from '<' and '>', got `{got}`")]
    BadOrientation { expected: usize, got: String },
    #[error("{0:?} is not a positive root of D{1}")]
    NotARoot(Vec<u8>, usize),
    #[error("quiver `{0}` is not of type D as built here")]
    NotTypeD(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Direction of a diagram edge `{u, v}` listed with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    /// `u -> v`
    Forward,
    /// `v -> u`
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinDSpec {
    pub n: usize,
    /// One entry per diagram edge, in the order `e1..e{n-3}, b, c`.
    pub orientation: Vec<Dir>,
}

impl DynkinDSpec {
    pub fn new(n: usize, orientation: Vec<Dir>) -> Result<Self, DynkinError> {
        if n < 4 {
            return Err(DynkinError::TooSmall(n));
        }
        if orientation.len() != n - 1 {
            return Err(DynkinError::BadOrientation {
                expected: n - 1,
                got: orientation_string(&orientation),
            });
        }
        Ok(DynkinDSpec { n, orientation })
    }

    /// Chain and `b` pointing towards vertex 1, and `c` pointing to `n`.
    pub fn standard(n: usize) -> Result<Self, DynkinError> {
        let mut o = vec![Dir::Backward; n.saturating_sub(2)];
        o.push(Dir::Forward);
        Self::new(n, o)
    }

    /// Every orientation of the `D_n` diagram.
    pub fn all(n: usize) -> Result<Vec<Self>, DynkinError> {
        (0..1u32 << (n - 1))
            .map(|bits| {
                let o = (0..n - 1)
                    .map(|i| {
                        if bits >> i & 1 == 1 {
                            Dir::Forward
                        } else {
                            Dir::Backward
                        }
                    })
                    .collect();
                Self::new(n, o)
            })
            .collect()
    }

    /// Diagram edges `(label, u, v)` with `u < v`.
    fn edges(&self) -> Vec<(String, usize, usize)> {
        let n = self.n;
        let mut e: Vec<(String, usize, usize)> =
            (1..=n - 3).map(|i| (format!("e{i}"), i, i + 1)).collect();
        e.push(("b".into(), n - 2, n - 1));
        e.push(("c".into(), n - 2, n));
        e
    }

    /// Quiver arrows `(label, source, target)`.
    pub fn arrows(&self) -> Vec<(String, usize, usize)> {
        self.edges()
            .into_iter()
            .zip(&self.orientation)
            .map(|((l, u, v), d)| match d {
                Dir::Forward => (l, u, v),
                Dir::Backward => (l, v, u),
            })
            .collect()
    }
}

fn orientation_string(o: &[Dir]) -> String {
    o.iter()
        .map(|d| if *d == Dir::Forward { '>' } else { '<' })
        .collect()
}

impl fmt::Display for DynkinDSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{} {}", self.n, orientation_string(&self.orientation))
    }
}

impl FromStr for DynkinDSpec {
    type Err = DynkinError;

    /// `"<n>"` for the standard orientation, or `"<n> <orientation>"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let bad = || DynkinError::BadOrientation {
            expected: 0,
            got: s.to_string(),
        };
        let n: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        match parts.next() {
            None => Self::standard(n),
            Some(o) => {
                let dirs = o
                    .chars()
                    .map(|c| match c {
                        '>' => Ok(Dir::Forward),
                        '<' => Ok(Dir::Backward),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if n >= 4 && dirs.len() != n - 1 {
                    return Err(DynkinError::BadOrientation {
                        expected: n - 1,
                        got: o.to_string(),
                    });
                }
                Self::new(n, dirs)
            }
        }
    }
}

pub fn dynkin_d_quiver(spec: &DynkinDSpec) -> Result<BoundQuiver, DynkinError> {
    if spec.n < 4 {
        return Err(DynkinError::TooSmall(spec.n));
    }
    let labels: Vec<String> = (1..=spec.n).map(|v| v.to_string()).collect();
    let vs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let arrows = spec.arrows();
    let names: Vec<(String, String, String)> = arrows
        .iter()
        .map(|(l, s, t)| (l.clone(), s.to_string(), t.to_string()))
        .collect();
    let refs: Vec<(&str, &str, &str)> = names
        .iter()
        .map(|(l, s, t)| (l.as_str(), s.as_str(), t.as_str()))
        .collect();
    Ok(BoundQuiver::new(format!("D{}", spec.n), &vs, &refs, &[])?)
}

/// A dimension vector, entry `i` for vertex `i + 1`.
pub type RootVector = Vec<u8>;

/// Positive roots of `D_n` by closing the simple roots under simple
/// reflections, sorted.
pub fn positive_roots_d(n: usize) -> Result<Vec<RootVector>, DynkinError> {
    if n < 4 {
        return Err(DynkinError::TooSmall(n));
    }
    let spec = DynkinDSpec::standard(n)?;
    let mut adj = vec![Vec::new(); n];
    for (_, u, v) in spec.edges() {
        adj[u - 1].push(v - 1);
        adj[v - 1].push(u - 1);
    }
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            // <r, alpha_i> for the symmetric Cartan form
            let pairing = 2 * r[i] - adj[i].iter().map(|&j| r[j]).sum::<i64>();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as u8).collect())
        .collect())
}

/// Which of `a`, `b`, `c` is joined to the two copies of the doubled
/// segment from its single end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    A,
    B,
    C,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::A => "a",
            Branch::B => "b",
            Branch::C => "c",
        })
    }
}

struct Shape {
    n: usize,
    /// Last vertex carrying a 1 before the 2s.
    k: usize,
    /// First vertex carrying a 1.
    l: usize,
}

fn shape_of(d: &[u8]) -> Option<Shape> {
    let n = d.len();
    let twos: Vec<usize> = (1..=n).filter(|&v| d[v - 1] == 2).collect();
    let first = *twos.first()?;
    let l = (1..=n).find(|&v| d[v - 1] > 0)?;
    Some(Shape { n, k: first - 1, l })
}

fn check_root(q: &BoundQuiver, d: &[u8]) -> Result<(DynkinDSpec, usize), DynkinError> {
    let n = d.len();
    let spec = spec_of(q)?;
    if spec.n != n || !positive_roots_d(n)?.iter().any(|r| r == d) {
        return Err(DynkinError::NotARoot(d.to_vec(), spec.n));
    }
    Ok((spec, n))
}

/// Recovers the orientation of a quiver built by [`dynkin_d_quiver`].
pub fn spec_of(q: &BoundQuiver) -> Result<DynkinDSpec, DynkinError> {
    let n = q.vertex_count();
    let not = || DynkinError::NotTypeD(q.name().to_string());
    if n < 4 || q.arrow_count() != n - 1 || !q.relations().is_empty() {
        return Err(not());
    }
    let standard = DynkinDSpec::standard(n)?;
    let mut orientation = Vec::with_capacity(n - 1);
    for (label, u, v) in standard.edges() {
        let a = &q.arrows()[q.arrow_index(&label).map_err(|_| not())?];
        let (s, t) = (&q.vertices()[a.source], &q.vertices()[a.target]);
        if (s, t) == (&u.to_string(), &v.to_string()) {
            orientation.push(Dir::Forward);
        } else if (s, t) == (&v.to_string(), &u.to_string()) {
            orientation.push(Dir::Backward);
        } else {
            return Err(not());
        }
    }
    DynkinDSpec::new(n, orientation)
}

/// Branches allowed by the equal-target-dimension rule: `c'` is an arrow
/// whose two companions have equal target dimensions.
pub fn valid_branches(spec: &DynkinDSpec, d: &[u8]) -> Vec<Branch> {
    let Some(s) = shape_of(d) else {
        return Vec::new();
    };
    let arrows = spec.arrows();
    let target_dim = |i: usize| d[arrows[i].2 - 1];
    let (ta, tb, tc) = (
        target_dim(s.k - 1),
        target_dim(spec.n - 3),
        target_dim(spec.n - 2),
    );
    [
        (Branch::A, tb == tc),
        (Branch::B, ta == tc),
        (Branch::C, ta == tb),
    ]
    .into_iter()
    .filter(|&(_, ok)| ok)
    .map(|(b, _)| b)
    .collect()
}

/// The first valid branch, or `None` for roots without a 2.
pub fn correct_branch(spec: &DynkinDSpec, d: &[u8]) -> Option<Branch> {
    valid_branches(spec, d).first().copied()
}

/// The module for a root, with the correct branch where a choice exists.
pub fn build_gtm_for_root(q: &Arc<BoundQuiver>, d: &[u8]) -> Result<TreeMorphism, DynkinError> {
    let (spec, _) = check_root(q, d)?;
    match correct_branch(&spec, d) {
        None => build_thin(q, &spec, d),
        Some(branch) => build_with_branch(q, &spec, d, branch),
    }
}

/// The modules for the branches the rule excludes.
pub fn wrong_choice_variants(
    q: &Arc<BoundQuiver>,
    d: &[u8],
) -> Result<Vec<(Branch, TreeMorphism)>, DynkinError> {
    let (spec, _) = check_root(q, d)?;
    let valid = valid_branches(&spec, d);
    if valid.is_empty() {
        return Ok(Vec::new());
    }
    [Branch::A, Branch::B, Branch::C]
        .into_iter()
        .filter(|b| !valid.contains(b))
        .map(|b| Ok((b, build_with_branch(q, &spec, d, b)?)))
        .collect()
}

fn build_thin(
    q: &Arc<BoundQuiver>,
    spec: &DynkinDSpec,
    d: &[u8],
) -> Result<TreeMorphism, DynkinError> {
    let support: Vec<u32> = (1..=spec.n as u32)
        .filter(|&v| d[v as usize - 1] == 1)
        .collect();
    let edges: Vec<(String, u32, u32)> = spec
        .arrows()
        .into_iter()
        .filter(|(_, s, t)| d[s - 1] == 1 && d[t - 1] == 1)
        .map(|(l, s, t)| (l, s as u32, t as u32))
        .collect();
    assemble(q, spec, &support, edges, name_of(d, None))
}

fn name_of(d: &[u8], branch: Option<Branch>) -> String {
    let digits: String = d.iter().map(|x| x.to_string()).collect();
    match branch {
        None => format!("M{digits}"),
        Some(b) => format!("M{digits}{b}"),
    }
}

fn build_with_branch(
    q: &Arc<BoundQuiver>,
    spec: &DynkinDSpec,
    d: &[u8],
    branch: Branch,
) -> Result<TreeMorphism, DynkinError> {
    let Shape { n, k, l } = shape_of(d).ok_or_else(|| DynkinError::NotARoot(d.to_vec(), spec.n))?;
    let lower = |v: usize| (v + n) as u32;
    let upper = |v: usize| v as u32;
    let arrows = spec.arrows();
    let over = |v: u32| {
        if v as usize > n {
            v as usize - n
        } else {
            v as usize
        }
    };
    // orients a tree edge between u and v like the quiver arrow i
    let oriented = |i: usize, u: u32, v: u32| -> (String, u32, u32) {
        let (label, s, _) = &arrows[i];
        if over(u) == *s {
            (label.clone(), u, v)
        } else {
            (label.clone(), v, u)
        }
    };
    let mut vertices: Vec<u32> = (l..=k).map(|v| v as u32).collect();
    for v in k + 1..=n - 2 {
        vertices.push(upper(v));
        vertices.push(lower(v));
    }
    vertices.extend([(n - 1) as u32, n as u32]);
    let mut edges = Vec::new();
    for i in l..k {
        edges.push(oriented(i - 1, i as u32, (i + 1) as u32));
    }
    for i in k + 1..n - 2 {
        let (lab, s, t) = oriented(i - 1, upper(i), upper(i + 1));
        edges.push((format!("{lab}'"), s, t));
        let (lab, s, t) = oriented(i - 1, lower(i), lower(i + 1));
        edges.push((format!("{lab}''"), s, t));
    }
    let (ia, ib, ic) = (k - 1, n - 3, n - 2);
    let single = |i: usize, from: u32, to: u32| oriented(i, from, to);
    let doubled = |i: usize, from: u32, to_u: u32, to_l: u32| {
        let (lab, s, t) = oriented(i, from, to_u);
        let (_, s2, t2) = oriented(i, from, to_l);
        [(format!("{lab}'"), s, t), (format!("{lab}''"), s2, t2)]
    };
    // a joins k with the copies of k+1; b and c join copies of n-2 with n-1, n
    match branch {
        Branch::A => {
            edges.extend(doubled(ia, k as u32, upper(k + 1), lower(k + 1)));
            edges.push(single(ib, upper(n - 2), (n - 1) as u32));
            edges.push(single(ic, lower(n - 2), n as u32));
        }
        Branch::B => {
            edges.push(single(ia, k as u32, upper(k + 1)));
            edges.extend(doubled(ib, (n - 1) as u32, upper(n - 2), lower(n - 2)));
            edges.push(single(ic, lower(n - 2), n as u32));
        }
        Branch::C => {
            edges.push(single(ia, k as u32, lower(k + 1)));
            edges.push(single(ib, upper(n - 2), (n - 1) as u32));
            edges.extend(doubled(ic, n as u32, upper(n - 2), lower(n - 2)));
        }
    }
    assemble(q, spec, &vertices, edges, name_of(d, Some(branch)))
}

fn assemble(
    q: &Arc<BoundQuiver>,
    spec: &DynkinDSpec,
    vertices: &[u32],
    edges: Vec<(String, u32, u32)>,
    name: String,
) -> Result<TreeMorphism, DynkinError> {
    let n = spec.n as u32;
    let over = |v: u32| if v > n { v - n } else { v };
    let refs: Vec<(&str, u32, u32)> = edges.iter().map(|(l, s, t)| (l.as_str(), *s, *t)).collect();
    let tree = Tree::new(format!("T{}", &name[1..]), vertices, &refs)?;
    let vmap: BTreeMap<u32, String> = vertices.iter().map(|&v| (v, over(v).to_string())).collect();
    let amap: BTreeMap<String, String> = edges
        .iter()
        .map(|(l, _, _)| (l.clone(), l.trim_end_matches('\'').to_string()))
        .collect();
    Ok(TreeMorphism::new(name, tree, Arc::clone(q), &vmap, &amap)?)
}

/// Per-root outcome of the catalog run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub root: RootVector,
    pub branch: Option<Branch>,
    pub dims_match: bool,
    pub tree_module: bool,
    pub outcome: Outcome,
    pub oracle_agrees: Option<bool>,
    /// Outcomes for the wrong-choice variants.
    pub variants: Vec<(Branch, bool, Outcome)>,
}

impl CatalogEntry {
    pub fn ok(&self) -> bool {
        self.dims_match
            && matches!(self.outcome, Outcome::Indecomposable { .. })
            && self.oracle_agrees != Some(false)
            && self
                .variants
                .iter()
                .all(|(_, dims, o)| *dims && matches!(o, Outcome::Decomposable { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogReport {
    pub spec: DynkinDSpec,
    pub entries: Vec<CatalogEntry>,
}

impl CatalogReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(CatalogEntry::ok)
    }

    pub fn proved(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.dims_match && matches!(e.outcome, Outcome::Indecomposable { .. }))
            .count()
    }
}

/// Builds, checks and classifies the module of every positive root, and
/// optionally the wrong-choice variants.
pub fn verify_catalog(
    spec: &DynkinDSpec,
    variants: bool,
    options: &ClassifyOptions,
) -> Result<CatalogReport, DynkinError> {
    let q = Arc::new(dynkin_d_quiver(spec)?);
    let roots = positive_roots_d(spec.n)?;
    let dims_of = |f: &TreeMorphism| -> Result<Vec<u8>, DynkinError> {
        let m = pushdown(f, FieldSpec::Rational)?;
        Ok(m.dims().into_iter().map(|x| x as u8).collect())
    };
    let entries = roots
        .par_iter()
        .map(|d| -> Result<CatalogEntry, DynkinError> {
            let f = build_gtm_for_root(&q, d)?;
            let c = classify(&f, options).map_err(|e| DynkinError::NotTypeD(e.to_string()))?;
            let mut vs = Vec::new();
            if variants {
                for (b, g) in wrong_choice_variants(&q, d)? {
                    let cv = classify(
                        &g,
                        &ClassifyOptions {
                            oracle: None,
                            ..options.clone()
                        },
                    )
                    .map_err(|e| DynkinError::NotTypeD(e.to_string()))?;
                    vs.push((b, dims_of(&g)? == *d, cv.verdict.outcome));
                }
            }
            Ok(CatalogEntry {
                root: d.clone(),
                branch: correct_branch(spec, d),
                dims_match: dims_of(&f)? == *d,
                tree_module: validate_morphism(&f).is_tree_module,
                oracle_agrees: c.verdict.oracle_agrees(),
                outcome: c.verdict.outcome,
                variants: vs,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CatalogReport {
        spec: spec.clone(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::morphisms;

    fn d5() -> (DynkinDSpec, Arc<BoundQuiver>) {
        let spec: DynkinDSpec = "5 <<<>".parse().unwrap();
        let q = Arc::new(dynkin_d_quiver(&spec).unwrap());
        (spec, q)
    }

    fn shape(f: &TreeMorphism) -> (Vec<usize>, BTreeSet<(u32, u32, usize)>) {
        let arrows = f
            .tree()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| (a.source, a.target, f.arrow_image(i)))
            .collect();
        (f.vertex_map().to_vec(), arrows)
    }

    #[test]
    fn all_branches_valid_when_every_arrow_points_in() {
        let spec: DynkinDSpec = "5 ><<<".parse().unwrap();
        assert_eq!(
            valid_branches(&spec, &[1, 2, 2, 1, 1]),
            vec![Branch::A, Branch::B, Branch::C]
        );
        let q = Arc::new(dynkin_d_quiver(&spec).unwrap());
        assert!(wrong_choice_variants(&q, &[1, 2, 2, 1, 1])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn root_counts() {
        for n in 4..=8 {
            let roots = positive_roots_d(n).unwrap();
            assert_eq!(roots.len(), n * (n - 1));
            assert!(roots.iter().all(|r| r.iter().all(|&x| x <= 2)));
            for i in 0..n {
                assert!(roots
                    .iter()
                    .any(|r| r.iter().enumerate().all(|(j, &x)| x == u8::from(i == j))));
            }
        }
        assert!(positive_roots_d(3).is_err());
    }

    #[test]
    fn quiver_shapes() {
        let q = dynkin_d_quiver(
            &DynkinDSpec::new(4, vec![Dir::Forward, Dir::Backward, Dir::Backward]).unwrap(),
        )
        .unwrap();
        assert_eq!((q.vertex_count(), q.arrow_count()), (4, 3));
        let (_, q5) = d5();
        let fixture = morphisms("d5").0;
        assert_eq!(**fixture.codomain(), *q5);
        assert!(DynkinDSpec::new(3, vec![Dir::Forward; 2]).is_err());
        assert!("5 <<>".parse::<DynkinDSpec>().is_err());
    }

    #[test]
    fn d5_root_gives_fixture_tree() {
        let (spec, q) = d5();
        let d = vec![1, 1, 2, 1, 1];
        assert_eq!(correct_branch(&spec, &d), Some(Branch::B));
        let f = build_gtm_for_root(&q, &d).unwrap();
        assert_eq!(shape(&f), shape(&morphisms("d5").0));
        let variants = wrong_choice_variants(&q, &d).unwrap();
        let bad = variants.iter().find(|(b, _)| *b == Branch::C).unwrap();
        assert_eq!(shape(&bad.1), shape(&morphisms("d5_bad").0));
    }

    #[test]
    fn non_roots_are_rejected() {
        let (_, q) = d5();
        assert!(build_gtm_for_root(&q, &[2, 2, 2, 2, 2]).is_err());
        assert!(build_gtm_for_root(&q, &[1, 0, 1, 0, 0]).is_err());
    }

    #[test]
    fn thin_roots_are_tree_modules() {
        let (_, q) = d5();
        for d in positive_roots_d(5).unwrap() {
            let f = build_gtm_for_root(&q, &d).unwrap();
            let m = pushdown(&f, FieldSpec::Rational).unwrap();
            assert_eq!(m.dims().into_iter().map(|x| x as u8).collect::<Vec<_>>(), d);
            assert_eq!(
                validate_morphism(&f).is_tree_module,
                d.iter().all(|&x| x <= 1)
            );
        }
    }

    #[test]
    fn catalog_d4_standard() {
        let spec = DynkinDSpec::standard(4).unwrap();
        let r = verify_catalog(&spec, true, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.entries.len(), 12);
        assert!(
            r.all_ok(),
            "{:#?}",
            r.entries.iter().filter(|e| !e.ok()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn catalog_every_d5_orientation() {
        for spec in DynkinDSpec::all(5).unwrap() {
            let r = verify_catalog(&spec, true, &ClassifyOptions::default()).unwrap();
            assert_eq!(r.entries.len(), 20);
            let bad: Vec<_> = r.entries.iter().filter(|e| !e.ok()).collect();
            assert!(bad.is_empty(), "{spec}: {bad:#?}");
        }
    }

    #[test]
    fn catalog_larger_standard() {
        for n in [6, 7] {
            let spec = DynkinDSpec::standard(n).unwrap();
            let r = verify_catalog(&spec, true, &ClassifyOptions::default()).unwrap();
            assert_eq!(r.proved(), n * (n - 1));
            assert!(r.all_ok(), "{spec}");
        }
    }
}
