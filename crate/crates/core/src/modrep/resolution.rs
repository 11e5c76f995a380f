use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{dualize, BoundQuiverAlgebra};
use crate::error::Result;
use crate::exactlin::{Matrix, Scalar};

use super::rep::{kernel, Morphism, Representation};

/// Minimal projective cover `P0 -> m` with its kernel.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Top generators: a vertex and a vector in `m` at that vertex, one per
    /// indecomposable summand of `p0`, in summand order.
    pub generators: Vec<(usize, Vec<Scalar>)>,
    pub p0: Representation,
    pub cover: Morphism,
    pub syzygy: Representation,
    pub embedding: Morphism,
}

impl ProjectiveCover {
    pub fn summand_vertices(&self) -> Vec<usize> {
        self.generators.iter().map(|(v, _)| *v).collect()
    }
}

/// Vectors spanning a complement of `rad m` at every vertex.
pub fn top_generators(m: &Representation) -> Vec<(usize, Vec<Scalar>)> {
    let alg = m.algebra();
    let mut out = Vec::new();
    for v in 0..alg.vertex_count() {
        let mut rad = Matrix::zeros(m.dims()[v], 0);
        for (id, a) in alg.quiver().arrows().iter().enumerate() {
            if a.target == v {
                rad = rad.hstack(m.map(id));
            }
        }
        for i in rad.complement_indices() {
            let mut e = vec![crate::exactlin::zero(); m.dims()[v]];
            e[i] = crate::exactlin::one();
            out.push((v, e));
        }
    }
    out
}

/// `P(v_1) + ... + P(v_k)` for the given vertices.
pub fn projective_sum(alg: &Arc<BoundQuiverAlgebra>, vertices: &[usize]) -> Representation {
    let parts: Vec<Representation> = vertices.iter().map(|&v| alg.projective(v)).collect();
    Representation::direct_sum_all(alg, &parts).expect("same algebra")
}

/// The map `P(v_1) + ... + P(v_k) -> n` sending the i-th top to `images[i]`.
pub fn map_from_projectives(
    alg: &BoundQuiverAlgebra,
    generators: &[(usize, Vec<Scalar>)],
    n: &Representation,
) -> Morphism {
    let nv = alg.vertex_count();
    let mut blocks = Vec::with_capacity(nv);
    for w in 0..nv {
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for (v, img) in generators {
            for &b in alg.paths_between(*v, w) {
                cols.push(n.path_matrix(*v, &alg.basis()[b].arrows).mul_vec(img));
            }
        }
        blocks.push(Matrix::from_columns(n.dims()[w], &cols));
    }
    Morphism::new(blocks)
}

pub fn projective_cover(m: &Representation) -> Result<ProjectiveCover> {
    let alg = m.algebra();
    let generators = top_generators(m);
    let vertices: Vec<usize> = generators.iter().map(|(v, _)| *v).collect();
    let p0 = projective_sum(alg, &vertices);
    let cover = map_from_projectives(alg, &generators, m);
    let (syzygy, embedding) = kernel(&cover, &p0)?;
    Ok(ProjectiveCover {
        generators,
        p0,
        cover,
        syzygy,
        embedding,
    })
}

pub fn syzygy(m: &Representation) -> Result<Representation> {
    Ok(projective_cover(m)?.syzygy)
}

pub fn is_projective(m: &Representation) -> Result<bool> {
    Ok(syzygy(m)?.is_zero())
}

pub fn is_injective(m: &Representation) -> Result<bool> {
    is_projective(&dualize(m))
}

/// A homological dimension, either known or only bounded below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimBound {
    Exact(usize),
    AtLeast(usize),
}

impl DimBound {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, DimBound::Exact(d) if d <= k)
    }
}

impl std::fmt::Display for DimBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimBound::Exact(d) => write!(f, "{d}"),
            DimBound::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Projective dimension, computed through at most `bound` syzygies.
pub fn pdim(m: &Representation, bound: usize) -> Result<DimBound> {
    let mut cur = m.clone();
    for k in 0..=bound {
        if cur.is_zero() {
            return Ok(DimBound::Exact(k.saturating_sub(1)));
        }
        let omega = syzygy(&cur)?;
        if omega.is_zero() {
            return Ok(DimBound::Exact(k));
        }
        cur = omega;
    }
    Ok(DimBound::AtLeast(bound + 1))
}

pub fn idim(m: &Representation, bound: usize) -> Result<DimBound> {
    pdim(&dualize(m), bound)
}
