use std::sync::Arc;

use num_traits::Zero;

use super::{field, FieldSpec, LinalgError, Matrix, Rat};
use crate::quiver::BoundQuiver;

/// A finite-dimensional representation of a bound quiver.
///
/// `basis[j]` names the basis vectors at vertex `j`; push-downs use tree
/// vertex labels, other representations default to `0..dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<BoundQuiver>,
    field: FieldSpec,
    maps: Vec<Matrix>,
    basis: Vec<Vec<u32>>,
}

impl Representation {
    pub fn new(
        quiver: Arc<BoundQuiver>,
        field: FieldSpec,
        dims: &[usize],
        maps: Vec<Matrix>,
    ) -> Result<Self, LinalgError> {
        let basis = dims.iter().map(|&d| (0..d as u32).collect()).collect();
        Self::with_basis(quiver, field, maps, basis)
    }

    pub fn with_basis(
        quiver: Arc<BoundQuiver>,
        field: FieldSpec,
        maps: Vec<Matrix>,
        basis: Vec<Vec<u32>>,
    ) -> Result<Self, LinalgError> {
        if basis.len() != quiver.vertex_count() {
            return Err(LinalgError::Shape(format!(
                "{} vertex spaces given for a quiver with {} vertices",
                basis.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(LinalgError::Shape(format!(
                "{} maps given for a quiver with {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (g, m) in quiver.arrows().iter().zip(&maps) {
            let want = (basis[g.target].len(), basis[g.source].len());
            if (m.rows(), m.cols()) != want {
                return Err(LinalgError::Shape(format!(
                    "map for arrow `{}` is {}x{}, expected {}x{}",
                    g.label,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        let maps = maps.iter().map(|m| m.reduce(field)).collect();
        Ok(Representation {
            quiver,
            field,
            maps,
            basis,
        })
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, j: usize) -> usize {
        self.basis[j].len()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn basis(&self, j: usize) -> &[u32] {
        &self.basis[j]
    }

    /// Same maps over another field (entries reduced if it is F_p).
    pub fn over(&self, field: FieldSpec) -> Self {
        Representation {
            quiver: Arc::clone(&self.quiver),
            field,
            maps: self.maps.iter().map(|m| m.reduce(field)).collect(),
            basis: self.basis.clone(),
        }
    }

    /// Whether every relation acts as zero.
    pub fn relations_vanish(&self) -> bool {
        self.quiver.relations().iter().all(|r| {
            let mut acc = Matrix::identity(self.dim(r.start));
            for &a in &r.arrows {
                acc = &self.maps[a] * &acc;
            }
            acc.is_zero_in(self.field)
        })
    }

    fn compatible(&self, other: &Representation) -> Result<(), LinalgError> {
        if self.quiver != other.quiver {
            return Err(LinalgError::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }
}

/// A family of linear maps, one block per quiver vertex. Block `j` has shape
/// `dim2(j) x dim1(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    blocks: Vec<Matrix>,
}

impl Homomorphism {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        Homomorphism { blocks }
    }

    pub fn zero(m1: &Representation, m2: &Representation) -> Self {
        Homomorphism {
            blocks: (0..m1.basis.len())
                .map(|j| Matrix::zeros(m2.dim(j), m1.dim(j)))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        Homomorphism {
            blocks: m.dims().into_iter().map(Matrix::identity).collect(),
        }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> &Matrix {
        &self.blocks[j]
    }

    pub fn block_mut(&mut self, j: usize) -> &mut Matrix {
        &mut self.blocks[j]
    }

    /// Composite `self ∘ other`.
    pub fn compose(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Homomorphism {
        Homomorphism {
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn reduce(&self, field: FieldSpec) -> Homomorphism {
        Homomorphism {
            blocks: self.blocks.iter().map(|b| b.reduce(field)).collect(),
        }
    }

    pub fn is_zero_in(&self, field: FieldSpec) -> bool {
        self.blocks.iter().all(|b| b.is_zero_in(field))
    }

    pub fn eq_in(&self, other: &Homomorphism, field: FieldSpec) -> bool {
        self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.eq_in(b, field))
    }

    pub fn is_idempotent(&self, field: FieldSpec) -> bool {
        self.compose(self).eq_in(self, field)
    }

    /// Flattened coordinates: vertex by vertex, each block row-major.
    pub fn coordinates(&self) -> Vec<Rat> {
        self.blocks
            .iter()
            .flat_map(|b| b.entries().iter().cloned())
            .collect()
    }

    fn shape_matches(&self, m1: &Representation, m2: &Representation) -> bool {
        self.blocks.len() == m1.basis.len()
            && self
                .blocks
                .iter()
                .enumerate()
                .all(|(j, b)| (b.rows(), b.cols()) == (m2.dim(j), m1.dim(j)))
    }
}

/// A failure of the commutativity condition for one arrow, evaluated on one
/// basis vector of the source representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDefect {
    pub arrow: usize,
    /// Index of the basis vector at the tail of the arrow.
    pub basis_index: usize,
    /// Image under `M2(γ) ∘ H(s)`.
    pub map_then_arrow: Vec<Rat>,
    /// Image under `H(t) ∘ M1(γ)`.
    pub arrow_then_map: Vec<Rat>,
}

/// All commutativity failures of `h` as a map `m1 -> m2`.
pub fn hom_defects(
    h: &Homomorphism,
    m1: &Representation,
    m2: &Representation,
) -> Result<Vec<HomDefect>, LinalgError> {
    m1.compatible(m2)?;
    if !h.shape_matches(m1, m2) {
        return Err(LinalgError::Shape(
            "homomorphism blocks do not match the dimension vectors".into(),
        ));
    }
    let field = m1.field;
    let mut out = Vec::new();
    for (gi, g) in m1.quiver.arrows().iter().enumerate() {
        let left = (&m2.maps[gi] * &h.blocks[g.source]).reduce(field);
        let right = (&h.blocks[g.target] * &m1.maps[gi]).reduce(field);
        for c in 0..left.cols() {
            let col_l: Vec<Rat> = (0..left.rows()).map(|r| left.get(r, c).clone()).collect();
            let col_r: Vec<Rat> = (0..right.rows()).map(|r| right.get(r, c).clone()).collect();
            if col_l != col_r {
                out.push(HomDefect {
                    arrow: gi,
                    basis_index: c,
                    map_then_arrow: col_l,
                    arrow_then_map: col_r,
                });
            }
        }
    }
    Ok(out)
}

/// Whether `h` is a homomorphism of representations `m1 -> m2`.
pub fn verify_hom(
    h: &Homomorphism,
    m1: &Representation,
    m2: &Representation,
) -> Result<bool, LinalgError> {
    Ok(hom_defects(h, m1, m2)?.is_empty())
}

/// A basis of Hom(m1, m2) as the kernel of the commutativity equations.
pub fn hom_space(
    m1: &Representation,
    m2: &Representation,
) -> Result<Vec<Homomorphism>, LinalgError> {
    m1.compatible(m2)?;
    let n = m1.quiver.vertex_count();
    let mut offset = vec![0usize; n + 1];
    for j in 0..n {
        offset[j + 1] = offset[j] + m2.dim(j) * m1.dim(j);
    }
    let unknowns = offset[n];
    // unknown for entry (r, c) of block j
    let var = |j: usize, r: usize, c: usize| offset[j] + r * m1.dim(j) + c;

    let mut rows = Vec::new();
    for (gi, g) in m1.quiver.arrows().iter().enumerate() {
        let (s, t) = (g.source, g.target);
        let a2 = &m2.maps[gi];
        let a1 = &m1.maps[gi];
        for r in 0..m2.dim(t) {
            for c in 0..m1.dim(s) {
                let mut row = vec![Rat::zero(); unknowns];
                for k in 0..m2.dim(s) {
                    row[var(s, k, c)] += a2.get(r, k);
                }
                for k in 0..m1.dim(t) {
                    row[var(t, r, k)] -= a1.get(k, c);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = field::kernel(m1.field, &rows, unknowns);
    Ok(basis
        .into_iter()
        .map(|v| from_coordinates(m1, m2, &v))
        .collect())
}

pub(crate) fn from_coordinates(
    m1: &Representation,
    m2: &Representation,
    v: &[Rat],
) -> Homomorphism {
    let mut at = 0;
    let blocks = (0..m1.basis.len())
        .map(|j| {
            let (r, c) = (m2.dim(j), m1.dim(j));
            let b = Matrix::from_rows(r, c, v[at..at + r * c].to_vec());
            at += r * c;
            b
        })
        .collect();
    Homomorphism { blocks }
}

/// Dimension vectors of `im e` and `ker e` for an idempotent endomorphism.
pub fn decompose_by_idempotent(
    m: &Representation,
    e: &Homomorphism,
) -> Result<(Vec<usize>, Vec<usize>), LinalgError> {
    if !verify_hom(e, m, m)? {
        return Err(LinalgError::NotAHomomorphism);
    }
    if !e.is_idempotent(m.field) {
        return Err(LinalgError::NotIdempotent);
    }
    let image: Vec<usize> = e.blocks.iter().map(|b| b.rank(m.field)).collect();
    let kernel = m.dims().iter().zip(&image).map(|(d, r)| d - r).collect();
    Ok((image, kernel))
}
