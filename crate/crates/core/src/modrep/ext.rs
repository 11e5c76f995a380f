use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};

use super::hom::{hom, HomSpace};
use super::rep::{Morphism, Representation};
use super::resolution::{map_from_projectives, projective_cover, ProjectiveCover};

/// `Ext^1(w, u)` presented as `Hom(Omega w, u)` modulo the maps that extend
/// to the projective cover of `w`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub w: Representation,
    pub u: Representation,
    pub presentation: ProjectiveCover,
    /// `Hom(Omega w, u)`.
    pub cocycles_all: HomSpace,
    /// Coordinates (in `cocycles_all`) of restrictions of maps `P0 -> u`.
    extendable: Matrix,
    /// Cocycles spanning a complement of the extendable ones.
    pub cocycle_basis: Vec<Morphism>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.cocycle_basis.len()
    }

    /// Combination of the cocycle basis.
    pub fn cocycle(&self, coeffs: &[Scalar]) -> Morphism {
        Morphism::combination(
            &self.cocycle_basis,
            coeffs,
            &Morphism::zero(&self.presentation.syzygy, &self.u),
        )
    }

    /// Whether `c: Omega w -> u` represents the zero class.
    pub fn is_trivial(&self, c: &Morphism) -> Result<bool> {
        let coords = self.coords(c)?;
        let col = Matrix::from_columns(coords.len(), &[coords]);
        Ok(self.extendable.solve_matrix(&col).is_some())
    }

    fn coords(&self, c: &Morphism) -> Result<Vec<Scalar>> {
        if !c.is_homomorphism(&self.presentation.syzygy, &self.u) {
            return Err(Error::BadMorphism(
                "cocycle is not a map from the syzygy to the target".into(),
            ));
        }
        Ok(self
            .cocycles_all
            .coordinates()
            .of(&c.to_flat())
            .expect("a homomorphism lies in the hom space"))
    }
}

pub fn ext1(w: &Representation, u: &Representation) -> Result<ExtSpace> {
    w.check_same_algebra(u)?;
    let presentation = projective_cover(w)?;
    let omega = &presentation.syzygy;
    let cocycles_all = hom(omega, u)?;
    let coords = cocycles_all.coordinates();
    let alg = w.algebra();

    // Restrictions of the maps P0 -> u that send one top generator to one
    // basis vector of u and the others to zero.
    let mut cols = Vec::new();
    for (i, (v, _)) in presentation.generators.iter().enumerate() {
        for k in 0..u.dims()[*v] {
            let mut gens: Vec<(usize, Vec<Scalar>)> = presentation
                .generators
                .iter()
                .map(|(x, _)| (*x, vec![crate::exactlin::zero(); u.dims()[*x]]))
                .collect();
            gens[i].1[k] = crate::exactlin::one();
            let phi = map_from_projectives(alg, &gens, u);
            let restricted = phi.compose(&presentation.embedding);
            cols.push(
                coords
                    .of(&restricted.to_flat())
                    .expect("restriction is a homomorphism"),
            );
        }
    }
    let extendable = Matrix::from_columns(cocycles_all.dim(), &cols);
    let cocycle_basis = extendable
        .complement_indices()
        .into_iter()
        .map(|j| cocycles_all.basis[j].clone())
        .collect();
    Ok(ExtSpace {
        w: w.clone(),
        u: u.clone(),
        presentation,
        cocycles_all,
        extendable,
        cocycle_basis,
    })
}

pub fn ext_dim(w: &Representation, u: &Representation) -> Result<usize> {
    Ok(ext1(w, u)?.dim())
}

/// `0 -> u -> v -> w -> 0` with explicit maps.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub u: Representation,
    pub v: Representation,
    pub w: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub non_split: bool,
}

/// Outcome of the exactness checks on a short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub valid_middle: bool,
    pub maps_are_homomorphisms: bool,
    pub dims_add: bool,
    pub composite_zero: bool,
    pub inclusion_injective: bool,
    pub projection_surjective: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.valid_middle
            && self.maps_are_homomorphisms
            && self.dims_add
            && self.composite_zero
            && self.inclusion_injective
            && self.projection_surjective
    }
}

impl ShortExactSequence {
    /// Injective + surjective + composite zero + additive dimensions give
    /// exactness in the middle by counting.
    pub fn check_exact(&self) -> ExactnessReport {
        ExactnessReport {
            valid_middle: self.v.validate().is_ok(),
            maps_are_homomorphisms: self.inclusion.is_homomorphism(&self.u, &self.v)
                && self.projection.is_homomorphism(&self.v, &self.w),
            dims_add: self
                .v
                .dims()
                .iter()
                .zip(self.u.dims())
                .zip(self.w.dims())
                .all(|((v, u), w)| *v == u + w),
            composite_zero: self.projection.compose(&self.inclusion).is_zero(),
            inclusion_injective: self.inclusion.is_injective(),
            projection_surjective: self.projection.is_surjective(),
        }
    }
}

/// Pushout of `0 -> Omega w -> P0 -> w -> 0` along `cocycle: Omega w -> u`:
/// `V = (u + P0) / {(c(x), -i(x))}`.
pub fn push_out_extension(ext: &ExtSpace, cocycle: &Morphism) -> Result<ShortExactSequence> {
    let non_split = !ext.is_trivial(cocycle)?;
    let pres = &ext.presentation;
    let u = &ext.u;
    let sum = u.direct_sum(&pres.p0)?;
    let n = u.dims().len();
    let mut graph = Vec::with_capacity(n);
    for x in 0..n {
        let g = cocycle.block(x).vstack(&pres.embedding.block(x).neg());
        graph.push(g);
    }
    let q = sum.quotient(&graph)?;
    let mut inclusion = Vec::with_capacity(n);
    let mut projection = Vec::with_capacity(n);
    for x in 0..n {
        let du = u.dims()[x];
        let dp = pres.p0.dims()[x];
        let into_sum = Matrix::identity(du).vstack(&Matrix::zeros(dp, du));
        inclusion.push(q.projection.block(x).mul(&into_sum));
        let onto_w = Matrix::zeros(ext.w.dims()[x], du).hstack(pres.cover.block(x));
        projection.push(onto_w.mul(&q.section[x]));
    }
    Ok(ShortExactSequence {
        u: u.clone(),
        v: q.module,
        w: ext.w.clone(),
        inclusion: Morphism::new(inclusion),
        projection: Morphism::new(projection),
        non_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver};
    use crate::exactlin::int;

    #[test]
    fn a2_ar_sequence() {
        let q = Quiver::new(
            2,
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        let a = BoundQuiverAlgebra::build(q, vec![], 12).unwrap();
        let e = ext1(&a.simple(0), &a.simple(1)).unwrap();
        assert_eq!(e.dim(), 1);
        let ses = push_out_extension(&e, &e.cocycle_basis[0]).unwrap();
        assert!(ses.non_split);
        assert!(ses.check_exact().is_exact());
        assert_eq!(ses.v.dims(), &[1, 1]);
        assert!(!ses.v.map(0).is_zero());
        let split = push_out_extension(&e, &e.cocycle(&[int(0)])).unwrap();
        assert!(!split.non_split);
        assert!(split.v.map(0).is_zero());
        assert!(split.check_exact().is_exact());
        assert_eq!(ext_dim(&a.simple(1), &a.simple(0)).unwrap(), 0);
        assert_eq!(ext_dim(&a.projective(0), &a.simple(1)).unwrap(), 0);
    }
}
