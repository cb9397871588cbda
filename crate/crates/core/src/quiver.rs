//! Finite bound quivers with monomial relations, trees, tree morphisms and
//! the push-down of the all-ones tree representation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{FieldSpec, Matrix, Representation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation must have length at least 2, got {0}")]
    RelationTooShort(usize),
    #[error("path is not composable: arrow `{first}` ends at `{end}` but `{second}` starts at `{start}`")]
    NotComposable {
        first: String,
        second: String,
        end: String,
        start: String,
    },
    #[error("tree must be nonempty")]
    EmptyTree,
    #[error("underlying graph of the tree is not connected and acyclic")]
    NotATree,
    #[error("tree arrow `{arrow}` is incompatible with the vertex map: {detail}")]
    Incompatible { arrow: String, detail: String },
    #[error("vertex map is not total: tree vertex {0} has no image")]
    PartialVertexMap(u32),
    #[error("arrow map is not total: tree arrow `{0}` has no image")]
    PartialArrowMap(String),
    #[error("morphism is not bound: {0}")]
    NotBound(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A path in a quiver: a start vertex plus arrow indices in application
/// order (first applied first). A path with no arrows is the lazy path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(vertex: usize) -> Self {
        Path {
            start: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Whether `needle` occurs as a contiguous run of arrows in `self`.
    pub fn contains_subpath(&self, needle: &Path) -> bool {
        if needle.arrows.is_empty() {
            return false;
        }
        self.arrows
            .windows(needle.arrows.len())
            .any(|w| w == needle.arrows.as_slice())
    }
}

/// A finite quiver together with a finite set of monomial relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Path>,
}

impl BoundQuiver {
    /// Builds a bound quiver. Relations are given as arrow labels in
    /// application order.
    pub fn new(
        name: impl Into<String>,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[&str]],
    ) -> Result<Self, QuiverError> {
        let mut q = BoundQuiver {
            name: name.into(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
        };
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (label, s, t) in arrows {
            q.add_arrow(label, s, t)?;
        }
        for r in relations {
            q.add_relation(r)?;
        }
        Ok(q)
    }

    pub fn empty(name: impl Into<String>) -> Self {
        BoundQuiver {
            name: name.into(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize, QuiverError> {
        if self.vertices.iter().any(|v| v == label) {
            return Err(QuiverError::DuplicateVertex(label.to_string()));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(
        &mut self,
        label: &str,
        source: &str,
        target: &str,
    ) -> Result<usize, QuiverError> {
        if self.arrows.iter().any(|a| a.label == label) {
            return Err(QuiverError::DuplicateArrow(label.to_string()));
        }
        let source = self.vertex_index(source)?;
        let target = self.vertex_index(target)?;
        self.arrows.push(Arrow {
            label: label.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn add_relation(&mut self, labels: &[&str]) -> Result<(), QuiverError> {
        if labels.len() < 2 {
            return Err(QuiverError::RelationTooShort(labels.len()));
        }
        let path = self.path_from_labels(labels)?;
        if !self.relations.contains(&path) {
            self.relations.push(path);
        }
        Ok(())
    }

    /// Resolves arrow labels (application order) into a validated path.
    pub fn path_from_labels(&self, labels: &[&str]) -> Result<Path, QuiverError> {
        let arrows = labels
            .iter()
            .map(|l| self.arrow_index(l))
            .collect::<Result<Vec<_>, _>>()?;
        let start = match arrows.first() {
            Some(&a) => self.arrows[a].source,
            None => return Err(QuiverError::RelationTooShort(0)),
        };
        let path = Path { start, arrows };
        self.check_path(&path)?;
        Ok(path)
    }

    pub fn check_path(&self, p: &Path) -> Result<(), QuiverError> {
        if p.start >= self.vertices.len() {
            return Err(QuiverError::UnknownVertex(p.start.to_string()));
        }
        let mut at = p.start;
        let mut prev: Option<usize> = None;
        for &a in &p.arrows {
            let arrow = self
                .arrows
                .get(a)
                .ok_or_else(|| QuiverError::UnknownArrow(a.to_string()))?;
            if arrow.source != at {
                let first = prev
                    .map(|i| self.arrows[i].label.clone())
                    .unwrap_or_else(|| format!("e_{}", self.vertices[p.start]));
                return Err(QuiverError::NotComposable {
                    first,
                    second: arrow.label.clone(),
                    end: self.vertices[at].clone(),
                    start: self.vertices[arrow.source].clone(),
                });
            }
            at = arrow.target;
            prev = Some(a);
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| QuiverError::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, label: &str) -> Result<usize, QuiverError> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| QuiverError::UnknownArrow(label.to_string()))
    }

    /// Writes a path in the usual right-to-left composition notation.
    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.start]);
        }
        p.arrows
            .iter()
            .rev()
            .map(|&a| self.arrows[a].label.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Membership in the monomial ideal generated by the relations: a path lies
/// in it iff some relation occurs in it as a contiguous subpath.
pub fn path_in_ideal(q: &BoundQuiver, p: &Path) -> Result<bool, QuiverError> {
    q.check_path(p)?;
    Ok(q.relations.iter().any(|r| p.contains_subpath(r)))
}

/// True iff the underlying undirected graph is nonempty, connected and acyclic.
pub fn validate_tree(q: &BoundQuiver) -> bool {
    let edges: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.source, a.target)).collect();
    is_tree_shape(q.vertex_count(), &edges)
}

fn is_tree_shape(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    // union-find; a cycle shows up as an edge joining one component
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeArrow {
    pub label: String,
    pub source: u32,
    pub target: u32,
}

/// A finite tree quiver with natural-number vertex labels.
///
/// Vertices are kept in ascending label order; arrow indices follow the
/// insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    name: String,
    vertices: Vec<u32>,
    arrows: Vec<TreeArrow>,
}

impl Tree {
    pub fn new(
        name: impl Into<String>,
        vertices: &[u32],
        arrows: &[(&str, u32, u32)],
    ) -> Result<Self, QuiverError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuiverError::DuplicateVertex(w[0].to_string()));
        }
        if vs.is_empty() {
            return Err(QuiverError::EmptyTree);
        }
        let mut seen = HashSet::new();
        let mut tree_arrows = Vec::with_capacity(arrows.len());
        for &(label, s, t) in arrows {
            if !seen.insert(label) {
                return Err(QuiverError::DuplicateArrow(label.to_string()));
            }
            for v in [s, t] {
                if vs.binary_search(&v).is_err() {
                    return Err(QuiverError::UnknownVertex(v.to_string()));
                }
            }
            tree_arrows.push(TreeArrow {
                label: label.to_string(),
                source: s,
                target: t,
            });
        }
        let tree = Tree {
            name: name.into(),
            vertices: vs,
            arrows: tree_arrows,
        };
        let edges: Vec<(usize, usize)> = tree
            .arrows
            .iter()
            .map(|a| (tree.position(a.source), tree.position(a.target)))
            .collect();
        if !is_tree_shape(tree.vertices.len(), &edges) {
            return Err(QuiverError::NotATree);
        }
        Ok(tree)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[TreeArrow] {
        &self.arrows
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of a vertex label in the ascending vertex list.
    ///
    /// Panics if the label is not a vertex of the tree.
    pub fn position(&self, v: u32) -> usize {
        self.vertices
            .binary_search(&v)
            .unwrap_or_else(|_| panic!("vertex {v} not in tree {}", self.name))
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn incoming(&self, v: u32) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    pub fn outgoing(&self, v: u32) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    /// All directed paths of length at least one, as arrow index sequences.
    pub fn directed_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in 0..self.arrows.len() {
            let mut stack = vec![vec![start]];
            while let Some(p) = stack.pop() {
                let end = self.arrows[*p.last().unwrap()].target;
                for next in self.outgoing(end) {
                    let mut q = p.clone();
                    q.push(next);
                    stack.push(q);
                }
                out.push(p);
            }
        }
        out.sort();
        out
    }

    /// Vertices of the component containing `start` once the arrows in
    /// `removed` are deleted.
    pub fn component_without(&self, start: u32, removed: &[usize]) -> Vec<u32> {
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (i, a) in self.arrows.iter().enumerate() {
                if removed.contains(&i) {
                    continue;
                }
                let other = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if !seen.contains(&other) {
                    seen.push(other);
                    stack.push(other);
                }
            }
        }
        seen.sort_unstable();
        seen
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A quiver morphism from a tree into a bound quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMorphism {
    name: String,
    tree: Tree,
    codomain: Arc<BoundQuiver>,
    vertex_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// A tree path (arrow indices, application order) whose image contains
    /// the given relation.
    PathInIdeal {
        tree_path: Vec<usize>,
        relation: usize,
    },
    /// Two distinct tree arrows sharing a source (or target) with equal images.
    SharedImage {
        first: usize,
        second: usize,
        vertex: u32,
        common_source: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub is_bound: bool,
    pub is_tree_module: bool,
    pub violations: Vec<MorphismViolation>,
}

impl TreeMorphism {
    /// Builds a morphism from label maps. Compatibility with source and
    /// target is checked here; boundedness is checked by [`validate_morphism`].
    pub fn new(
        name: impl Into<String>,
        tree: Tree,
        codomain: Arc<BoundQuiver>,
        vertex_map: &BTreeMap<u32, String>,
        arrow_map: &BTreeMap<String, String>,
    ) -> Result<Self, QuiverError> {
        let mut vmap = Vec::with_capacity(tree.vertices.len());
        for &v in &tree.vertices {
            let label = vertex_map.get(&v).ok_or(QuiverError::PartialVertexMap(v))?;
            vmap.push(codomain.vertex_index(label)?);
        }
        let mut amap = Vec::with_capacity(tree.arrows.len());
        for a in &tree.arrows {
            let label = arrow_map
                .get(&a.label)
                .ok_or_else(|| QuiverError::PartialArrowMap(a.label.clone()))?;
            amap.push(codomain.arrow_index(label)?);
        }
        Self::from_indices(name, tree, codomain, vmap, amap)
    }

    pub fn from_indices(
        name: impl Into<String>,
        tree: Tree,
        codomain: Arc<BoundQuiver>,
        vertex_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self, QuiverError> {
        if vertex_map.len() != tree.vertices.len() {
            return Err(QuiverError::PartialVertexMap(
                tree.vertices.get(vertex_map.len()).copied().unwrap_or(0),
            ));
        }
        if arrow_map.len() != tree.arrows.len() {
            let missing = tree.arrows.get(arrow_map.len()).map(|a| a.label.clone());
            return Err(QuiverError::PartialArrowMap(missing.unwrap_or_default()));
        }
        for (i, a) in tree.arrows.iter().enumerate() {
            let image = codomain
                .arrows
                .get(arrow_map[i])
                .ok_or_else(|| QuiverError::UnknownArrow(arrow_map[i].to_string()))?;
            let s = vertex_map[tree.position(a.source)];
            let t = vertex_map[tree.position(a.target)];
            if image.source != s || image.target != t {
                return Err(QuiverError::Incompatible {
                    arrow: a.label.clone(),
                    detail: format!(
                        "image `{}` runs {} -> {} but endpoints map to {} -> {}",
                        image.label,
                        codomain.vertices[image.source],
                        codomain.vertices[image.target],
                        codomain.vertices[s],
                        codomain.vertices[t]
                    ),
                });
            }
        }
        Ok(TreeMorphism {
            name: name.into(),
            tree,
            codomain,
            vertex_map,
            arrow_map,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn codomain(&self) -> &Arc<BoundQuiver> {
        &self.codomain
    }

    /// Image of a tree vertex (by label).
    pub fn vertex_image(&self, v: u32) -> usize {
        self.vertex_map[self.tree.position(v)]
    }

    /// Image of a tree arrow (by index).
    pub fn arrow_image(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }

    /// Tree vertices over a quiver vertex, ascending.
    pub fn fiber(&self, q: usize) -> Vec<u32> {
        self.tree
            .vertices
            .iter()
            .zip(&self.vertex_map)
            .filter(|(_, &img)| img == q)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Restriction to the induced subtree on `vertices`, which must span a
    /// connected subtree.
    pub fn restrict(&self, name: impl Into<String>, vertices: &[u32]) -> Result<Self, QuiverError> {
        let arrows: Vec<(&str, u32, u32)> = self
            .tree
            .arrows
            .iter()
            .filter(|a| vertices.contains(&a.source) && vertices.contains(&a.target))
            .map(|a| (a.label.as_str(), a.source, a.target))
            .collect();
        let name = name.into();
        let sub = Tree::new(name.clone(), vertices, &arrows)?;
        let vmap = sub.vertices.iter().map(|&v| self.vertex_image(v)).collect();
        let amap = sub
            .arrows
            .iter()
            .map(|a| self.arrow_map[self.tree.arrow_index(&a.label).unwrap()])
            .collect();
        Self::from_indices(name, sub, Arc::clone(&self.codomain), vmap, amap)
    }
}

/// Checks boundedness (no tree path maps into the relation ideal) and the
/// tree module injectivity condition.
pub fn validate_morphism(f: &TreeMorphism) -> MorphismReport {
    let q = &f.codomain;
    let mut violations = Vec::new();
    for tree_path in f.tree.directed_paths() {
        if tree_path.len() < 2 {
            continue;
        }
        let start = f.vertex_image(f.tree.arrows[tree_path[0]].source);
        let image = Path {
            start,
            arrows: tree_path.iter().map(|&a| f.arrow_map[a]).collect(),
        };
        if let Some(r) = q.relations.iter().position(|r| image.contains_subpath(r)) {
            // report only minimal offenders: skip paths extending a reported one
            let extends = violations.iter().any(|v| match v {
                MorphismViolation::PathInIdeal { tree_path: p, .. } => {
                    tree_path.windows(p.len()).any(|w| w == p.as_slice())
                }
                _ => false,
            });
            if !extends {
                violations.push(MorphismViolation::PathInIdeal {
                    tree_path,
                    relation: r,
                });
            }
        }
    }
    let is_bound = violations.is_empty();

    let mut shared = Vec::new();
    for (i, a) in f.tree.arrows.iter().enumerate() {
        for (j, b) in f.tree.arrows.iter().enumerate().skip(i + 1) {
            if f.arrow_map[i] != f.arrow_map[j] {
                continue;
            }
            if a.source == b.source {
                shared.push(MorphismViolation::SharedImage {
                    first: i,
                    second: j,
                    vertex: a.source,
                    common_source: true,
                });
            }
            if a.target == b.target {
                shared.push(MorphismViolation::SharedImage {
                    first: i,
                    second: j,
                    vertex: a.target,
                    common_source: false,
                });
            }
        }
    }
    let is_tree_module = is_bound && shared.is_empty();
    violations.extend(shared);
    MorphismReport {
        is_bound,
        is_tree_module,
        violations,
    }
}

/// Push-down of the all-ones representation of the tree along `f`.
///
/// The space over a quiver vertex has the fiber as basis (ascending tree
/// labels); each quiver arrow acts as the sum of its tree preimages.
pub fn pushdown(f: &TreeMorphism, field: FieldSpec) -> Result<Representation, QuiverError> {
    let report = validate_morphism(f);
    if !report.is_bound {
        return Err(QuiverError::NotBound(format!(
            "morphism `{}` maps a tree path into the relation ideal",
            f.name
        )));
    }
    let q = &f.codomain;
    let basis: Vec<Vec<u32>> = (0..q.vertex_count()).map(|j| f.fiber(j)).collect();
    let position: HashMap<u32, usize> = basis
        .iter()
        .flat_map(|fib| fib.iter().enumerate().map(|(i, &v)| (v, i)))
        .collect();
    let mut maps: Vec<Matrix> = q
        .arrows
        .iter()
        .map(|g| Matrix::zeros(basis[g.target].len(), basis[g.source].len()))
        .collect();
    for (i, a) in f.tree.arrows.iter().enumerate() {
        let m = &mut maps[f.arrow_map[i]];
        let (row, col) = (position[&a.target], position[&a.source]);
        m.set(row, col, m.get(row, col) + crate::linalg::one());
    }
    let rep = Representation::with_basis(Arc::clone(q), field, maps, basis)
        .expect("push-down shapes are consistent by construction");
    assert!(
        rep.relations_vanish(),
        "bound morphism produced a representation violating a relation"
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::new("A2", &["1", "2"], &[("a", "1", "2")], &[]).unwrap())
    }

    fn a4_with_ba() -> BoundQuiver {
        BoundQuiver::new(
            "A4",
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
            &[&["a", "b"]],
        )
        .unwrap()
    }

    fn morphism(
        tree: Tree,
        q: Arc<BoundQuiver>,
        verts: &[(u32, &str)],
        arrows: &[(&str, &str)],
    ) -> TreeMorphism {
        let vm = verts.iter().map(|&(v, l)| (v, l.to_string())).collect();
        let am = arrows
            .iter()
            .map(|&(a, l)| (a.to_string(), l.to_string()))
            .collect();
        TreeMorphism::new("F", tree, q, &vm, &am).unwrap()
    }

    fn fix_dec() -> TreeMorphism {
        let t = Tree::new("T", &[1, 2, 3], &[("a", 1, 2), ("b", 3, 2)]).unwrap();
        morphism(
            t,
            a2(),
            &[(1, "1"), (2, "2"), (3, "1")],
            &[("a", "a"), ("b", "a")],
        )
    }

    #[test]
    fn ideal_membership_is_subpath_containment() {
        let q = a4_with_ba();
        let cba = q.path_from_labels(&["a", "b", "c"]).unwrap();
        assert!(path_in_ideal(&q, &cba).unwrap());
        let cb = q.path_from_labels(&["b", "c"]).unwrap();
        assert!(!path_in_ideal(&q, &cb).unwrap());
        let ba = q.path_from_labels(&["a", "b"]).unwrap();
        assert!(path_in_ideal(&q, &ba).unwrap());
        assert_eq!(q.path_label(&cba), "c b a");

        let free = BoundQuiver::new(
            "A4",
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
            &[],
        )
        .unwrap();
        let p = free.path_from_labels(&["a", "b", "c"]).unwrap();
        assert!(!path_in_ideal(&free, &p).unwrap());
    }

    #[test]
    fn non_composable_paths_are_rejected() {
        let q = a4_with_ba();
        let bad = Path {
            start: 0,
            arrows: vec![0, 2],
        };
        assert!(matches!(
            path_in_ideal(&q, &bad),
            Err(QuiverError::NotComposable { .. })
        ));
        assert!(matches!(
            q.path_from_labels(&["b", "a"]),
            Err(QuiverError::NotComposable { .. })
        ));
    }

    #[test]
    fn relation_of_length_one_is_rejected() {
        let mut q = a4_with_ba();
        assert_eq!(
            q.add_relation(&["a"]),
            Err(QuiverError::RelationTooShort(1))
        );
    }

    #[test]
    fn tree_validation() {
        let q = BoundQuiver::new(
            "T",
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "3", "2")],
            &[],
        )
        .unwrap();
        assert!(validate_tree(&q));
        let single = BoundQuiver::new("pt", &["0"], &[], &[]).unwrap();
        assert!(validate_tree(&single));
        let parallel =
            BoundQuiver::new("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]).unwrap();
        assert!(!validate_tree(&parallel));
        assert!(!validate_tree(&BoundQuiver::empty("e")));
        let disconnected =
            BoundQuiver::new("D", &["1", "2", "3"], &[("a", "1", "2")], &[]).unwrap();
        assert!(!validate_tree(&disconnected));
        assert_eq!(Tree::new("t", &[], &[]), Err(QuiverError::EmptyTree));
        assert_eq!(
            Tree::new("t", &[1, 2], &[("a", 1, 2), ("b", 2, 1)]),
            Err(QuiverError::NotATree)
        );
    }

    #[test]
    fn decomposable_example_is_bound_but_not_a_tree_module() {
        let f = fix_dec();
        let r = validate_morphism(&f);
        assert!(r.is_bound);
        assert!(!r.is_tree_module);
        assert_eq!(
            r.violations,
            vec![MorphismViolation::SharedImage {
                first: 0,
                second: 1,
                vertex: 2,
                common_source: false
            }]
        );
    }

    #[test]
    fn embedding_of_an_arrow_is_a_tree_module() {
        let t = Tree::new("T", &[1, 2], &[("x", 1, 2)]).unwrap();
        let f = morphism(t, a2(), &[(1, "1"), (2, "2")], &[("x", "a")]);
        let r = validate_morphism(&f);
        assert!(r.is_bound && r.is_tree_module);
    }

    #[test]
    fn relation_hit_makes_morphism_unbound() {
        let q = Arc::new(a4_with_ba());
        let t = Tree::new("T", &[0, 1, 2], &[("x", 0, 1), ("y", 1, 2)]).unwrap();
        let f = morphism(
            t,
            Arc::clone(&q),
            &[(0, "1"), (1, "2"), (2, "3")],
            &[("x", "a"), ("y", "b")],
        );
        let r = validate_morphism(&f);
        assert!(!r.is_bound);
        assert_eq!(
            r.violations,
            vec![MorphismViolation::PathInIdeal {
                tree_path: vec![0, 1],
                relation: 0
            }]
        );
        assert!(matches!(
            pushdown(&f, FieldSpec::Rational),
            Err(QuiverError::NotBound(_))
        ));
    }

    #[test]
    fn incompatible_maps_are_structural_errors() {
        let t = Tree::new("T", &[1, 2], &[("x", 1, 2)]).unwrap();
        let vm = [(1, "2".to_string()), (2, "1".to_string())]
            .into_iter()
            .collect();
        let am = [("x".to_string(), "a".to_string())].into_iter().collect();
        assert!(matches!(
            TreeMorphism::new("F", t, a2(), &vm, &am),
            Err(QuiverError::Incompatible { .. })
        ));
    }

    #[test]
    fn pushdown_of_decomposable_example() {
        let rep = pushdown(&fix_dec(), FieldSpec::Rational).unwrap();
        assert_eq!(rep.dims(), vec![2, 1]);
        assert_eq!(rep.map(0), &Matrix::from_ints(1, 2, &[1, 1]));
        assert_eq!(rep.basis(0), &[1, 3]);
    }

    #[test]
    fn pushdown_of_single_vertex_is_simple() {
        let t = Tree::new("T", &[7], &[]).unwrap();
        let f = morphism(t, a2(), &[(7, "2")], &[]);
        let rep = pushdown(&f, FieldSpec::Rational).unwrap();
        assert_eq!(rep.dims(), vec![0, 1]);
        assert_eq!(rep.map(0).rows(), 1);
        assert_eq!(rep.map(0).cols(), 0);
    }

    #[test]
    fn pushdown_of_fork_is_column_of_ones() {
        let t = Tree::new("T", &[1, 2, 3], &[("a", 1, 2), ("b", 1, 3)]).unwrap();
        let f = morphism(
            t,
            a2(),
            &[(1, "1"), (2, "2"), (3, "2")],
            &[("a", "a"), ("b", "a")],
        );
        let rep = pushdown(&f, FieldSpec::Rational).unwrap();
        assert_eq!(rep.dims(), vec![1, 2]);
        assert_eq!(rep.map(0), &Matrix::from_ints(2, 1, &[1, 1]));
    }
}
