use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::BoundQuiverAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};

/// A finite-dimensional module: one vector space per vertex, one matrix per
/// arrow of shape `dims[target] x dims[source]`.
#[derive(Clone)]
pub struct Representation {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut d = f.debug_struct("Representation");
        d.field("dims", &self.dims);
        for (a, m) in self.algebra.quiver().arrows().iter().zip(&self.maps) {
            d.field(&a.label, m);
        }
        d.finish()
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.dims == other.dims
            && self.maps == other.maps
    }
}

pub(crate) fn same_algebra(a: &Arc<BoundQuiverAlgebra>, b: &Arc<BoundQuiverAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Checks shapes and relations.
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions given for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow maps given for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            let want = (dims[a.target], dims[a.source]);
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.label,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let r = Representation {
            algebra,
            dims,
            maps,
        };
        r.validate()?;
        Ok(r)
    }

    pub(crate) fn new_unchecked(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Self {
        Representation {
            algebra,
            dims,
            maps,
        }
    }

    pub fn zero_maps(algebra: Arc<BoundQuiverAlgebra>, dims: Vec<usize>) -> Self {
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation {
            algebra,
            dims,
            maps,
        }
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let n = algebra.vertex_count();
        Self::zero_maps(algebra, vec![0; n])
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn map_by_label(&self, label: &str) -> Option<&Matrix> {
        self.algebra.quiver().arrow_id(label).map(|i| &self.maps[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of the path `arrows` starting at `source`.
    pub fn path_matrix(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.dims[source]);
        for &a in arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// The first relation whose matrix is nonzero, reported 1-based.
    pub fn validate(&self) -> Result<()> {
        for (i, rel) in self.algebra.relations().iter().enumerate() {
            let (s, t) = self
                .algebra
                .quiver()
                .path_ends(&rel.terms[0].1)
                .expect("validated relation");
            let mut acc = Matrix::zeros(self.dims[t], self.dims[s]);
            for (c, p) in &rel.terms {
                acc = acc.add(&self.path_matrix(s, p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated {
                    index: i + 1,
                    residual: format!("{acc:?}"),
                });
            }
        }
        Ok(())
    }

    pub fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_same_algebra(other)?;
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dims,
            maps,
        })
    }

    pub fn direct_sum_all(
        algebra: &Arc<BoundQuiverAlgebra>,
        parts: &[Representation],
    ) -> Result<Representation> {
        let mut acc = Representation::zero(algebra.clone());
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// The module transported along per-vertex invertible matrices:
    /// `M'_a = B_t^{-1} M_a B_s`.
    pub fn change_basis(&self, bases: &[Matrix]) -> Result<Representation> {
        let inverses: Vec<Matrix> = bases
            .iter()
            .map(|b| {
                b.inverse()
                    .ok_or_else(|| Error::BadMorphism("base change is not invertible".into()))
            })
            .collect::<Result<_>>()?;
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| inverses[a.target].mul(m).mul(&bases[a.source]))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dims: self.dims.clone(),
            maps,
        })
    }

    /// Submodule spanned per vertex by the (independent) columns of
    /// `basis[v]`, with its inclusion. The spans must be arrow-stable.
    pub fn submodule(&self, basis: &[Matrix]) -> Result<(Representation, Morphism)> {
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let mut maps = Vec::new();
        for (a, m) in self.algebra.quiver().arrows().iter().zip(&self.maps) {
            let image = m.mul(&basis[a.source]);
            let x = basis[a.target].solve_matrix(&image).ok_or_else(|| {
                Error::BadMorphism(format!("subspace is not stable under arrow {}", a.label))
            })?;
            maps.push(x);
        }
        let sub = Representation {
            algebra: self.algebra.clone(),
            dims,
            maps,
        };
        Ok((sub, Morphism::new(basis.to_vec())))
    }

    /// Quotient by an arrow-stable subspace given by independent columns.
    pub fn quotient(&self, sub: &[Matrix]) -> Result<Quotient> {
        let n = self.dims.len();
        if sub.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} subspaces for {n} vertices",
                sub.len()
            )));
        }
        let mut section = Vec::with_capacity(n);
        let mut projection = Vec::with_capacity(n);
        for (s, &d) in sub.iter().zip(&self.dims) {
            let comp = Matrix::unit_columns(d, &s.complement_indices());
            let full = s.hstack(&comp);
            let inv = full
                .inverse()
                .ok_or_else(|| Error::BadMorphism("subspace columns are dependent".into()))?;
            let rows: Vec<usize> = (s.cols()..d).collect();
            projection.push(inv.select_rows(&rows));
            section.push(comp);
        }
        let dims: Vec<usize> = section.iter().map(Matrix::cols).collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| projection[a.target].mul(m).mul(&section[a.source]))
            .collect();
        let module = Representation {
            algebra: self.algebra.clone(),
            dims,
            maps,
        };
        // Stability check: the subspace must map into itself.
        for (a, m) in self.algebra.quiver().arrows().iter().zip(&self.maps) {
            if !projection[a.target].mul(m).mul(&sub[a.source]).is_zero() {
                return Err(Error::BadMorphism(format!(
                    "subspace is not stable under arrow {}",
                    a.label
                )));
            }
        }
        Ok(Quotient {
            module,
            projection: Morphism::new(projection),
            section,
        })
    }
}

/// `M / S` with the projection `M -> M/S` and, per vertex, the columns of
/// `M_v` chosen to represent the quotient basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Representation,
    pub projection: Morphism,
    pub section: Vec<Matrix>,
}

/// A homomorphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        Morphism { blocks }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        Morphism {
            blocks: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&a, &b)| Matrix::zeros(b, a))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism {
            blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// Rebuilds a morphism from the concatenated row-major block entries.
    pub fn from_flat(src: &[usize], tgt: &[usize], flat: &[Scalar]) -> Self {
        let mut blocks = Vec::with_capacity(src.len());
        let mut off = 0;
        for (&s, &t) in src.iter().zip(tgt) {
            blocks.push(Matrix::from_vec(t, s, flat[off..off + s * t].to_vec()));
            off += s * t;
        }
        Morphism { blocks }
    }

    pub fn to_flat(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .flat_map(|b| b.data().iter().cloned())
            .collect()
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .zip(&first.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Shapes and commutativity with every arrow.
    pub fn is_homomorphism(&self, m: &Representation, n: &Representation) -> bool {
        if self.blocks.len() != m.dims.len() {
            return false;
        }
        for (v, b) in self.blocks.iter().enumerate() {
            if b.shape() != (n.dims[v], m.dims[v]) {
                return false;
            }
        }
        m.algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(i, a)| {
                self.blocks[a.target].mul(&m.maps[i]) == n.maps[i].mul(&self.blocks[a.source])
            })
    }

    /// Combination `sum c_k f_k`; `parts` must be nonempty or `like` given.
    pub fn combination(parts: &[Morphism], coeffs: &[Scalar], like: &Morphism) -> Morphism {
        let mut acc = Morphism {
            blocks: like
                .blocks
                .iter()
                .map(|b| Matrix::zeros(b.rows(), b.cols()))
                .collect(),
        };
        for (f, c) in parts.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

/// Kernel of `f: m -> n` as a submodule of `m`, with its inclusion.
pub fn kernel(f: &Morphism, m: &Representation) -> Result<(Representation, Morphism)> {
    let basis: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel_basis).collect();
    m.submodule(&basis)
}

/// Image of `f: m -> n` as a submodule of `n`, with its inclusion.
pub fn image(f: &Morphism, n: &Representation) -> Result<(Representation, Morphism)> {
    let basis: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space).collect();
    n.submodule(&basis)
}

/// Cokernel of `f: m -> n`.
pub fn cokernel(f: &Morphism, n: &Representation) -> Result<Quotient> {
    let basis: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space).collect();
    n.quotient(&basis)
}
