use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::poly::Poly;
use crate::exactlin::{int, Coordinates, Matrix, Scalar};

use super::hom::hom;
use super::rep::{Morphism, Representation};

/// `End(m)` with its Jacobson radical.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub module: Representation,
    pub basis: Vec<Morphism>,
    /// Radical elements as coordinate columns in `basis`.
    pub radical: Matrix,
}

impl EndRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    pub fn semisimple_quotient_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    pub fn radical_elements(&self) -> Vec<Morphism> {
        (0..self.radical.cols())
            .map(|c| {
                Morphism::combination(
                    &self.basis,
                    &self.radical.column(c),
                    &Morphism::identity(&self.module),
                )
            })
            .collect()
    }
}

/// Radical via the trace form `(x, y) -> tr(L_{xy})`, valid in
/// characteristic zero.
pub fn end_ring(m: &Representation) -> Result<EndRing> {
    let h = hom(m, m)?;
    let d = h.dim();
    let coords = h.coordinates();
    // products[i][j] = coordinates of e_i e_j
    let products: Vec<Vec<Vec<Scalar>>> = h
        .basis
        .iter()
        .map(|ei| {
            h.basis
                .iter()
                .map(|ej| {
                    coords
                        .of(&ei.compose(ej).to_flat())
                        .expect("End is closed under composition")
                })
                .collect()
        })
        .collect();
    // tr(L_{e_k}) = sum_j coefficient of e_j in e_k e_j
    let traces: Vec<Scalar> = (0..d)
        .map(|k| (0..d).map(|j| products[k][j][j].clone()).sum())
        .collect();
    let mut gram = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            gram[(i, j)] = products[i][j].iter().zip(&traces).map(|(c, t)| c * t).sum();
        }
    }
    Ok(EndRing {
        module: m.clone(),
        basis: h.basis,
        radical: gram.kernel_basis(),
    })
}

/// Result of the indecomposability test.
#[derive(Clone, Debug)]
pub enum Decomposability {
    Indecomposable,
    /// A nontrivial idempotent endomorphism.
    Decomposable(Morphism),
    UndecidableOverQ,
}

impl Decomposability {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Decomposability::Indecomposable)
    }
}

const SPLIT_SEED: u64 = 0xdec0;
const SPLIT_RANDOM_ROUNDS: usize = 24;

pub fn is_indecomposable(m: &Representation) -> Result<Decomposability> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let end = end_ring(m)?;
    if end.semisimple_quotient_dim() == 1 {
        return Ok(Decomposability::Indecomposable);
    }
    Ok(match find_idempotent(m, &end) {
        Some(e) => Decomposability::Decomposable(e),
        None if quotient_is_field(m, &end) => Decomposability::Indecomposable,
        None => Decomposability::UndecidableOverQ,
    })
}

/// Some endomorphism `x` has characteristic polynomial `p^r` with `p`
/// irreducible of degree `k = dim End/rad`. The image of `Q[x]` in `End/rad`
/// is then `Q[t]/(p)`, a field of dimension `k`, so it is all of `End/rad`
/// and `End` is local.
fn quotient_is_field(m: &Representation, end: &EndRing) -> bool {
    let k = end.semisimple_quotient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ 1);
    let mut candidates = end.basis.clone();
    for _ in 0..SPLIT_RANDOM_ROUNDS {
        let c: Vec<Scalar> = end
            .basis
            .iter()
            .map(|_| int(rng.gen_range(-5..=5)))
            .collect();
        candidates.push(Morphism::combination(
            &end.basis,
            &c,
            &Morphism::identity(m),
        ));
    }
    candidates.iter().any(|x| {
        let total = Matrix::block_diag(&x.blocks().iter().collect::<Vec<_>>());
        let p = Poly::characteristic(&total).squarefree_part();
        p.degree() == Some(k) && p.irreducible() == Some(true)
    })
}

/// Fitting's lemma: for any endomorphism `phi`, `m = ker phi^N + im phi^N`.
/// Candidates are basis elements, their products and seeded random
/// combinations, shifted by rational eigenvalues or evaluated at coprime
/// factors of their characteristic polynomial.
fn find_idempotent(m: &Representation, end: &EndRing) -> Option<Morphism> {
    let basis = &end.basis;
    let mut candidates: Vec<Morphism> = basis.clone();
    for a in basis {
        for b in basis {
            candidates.push(a.compose(b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    for _ in 0..SPLIT_RANDOM_ROUNDS {
        let c: Vec<Scalar> = basis.iter().map(|_| int(rng.gen_range(-5..=5))).collect();
        candidates.push(Morphism::combination(basis, &c, &Morphism::identity(m)));
    }
    let n = m.total_dim();
    for x in &candidates {
        let total = Matrix::block_diag(&x.blocks().iter().collect::<Vec<_>>());
        let chi = Poly::characteristic(&total);
        let mut shifts: Vec<Poly> = chi.rational_roots().iter().map(Poly::linear).collect();
        if !shifts.iter().any(|p| p.coeffs()[0] == int(0)) {
            shifts.push(Poly::linear(&int(0)));
        }
        let parts = chi.squarefree_decomposition();
        if parts.iter().filter(|p| p.degree().unwrap_or(0) > 0).count() > 1 {
            shifts.extend(parts.into_iter().filter(|p| p.degree().unwrap_or(0) > 0));
        }
        for p in shifts {
            let phi = Morphism::new(x.blocks().iter().map(|b| p.eval_matrix(b)).collect());
            if let Some(e) = fitting_idempotent(&phi, n) {
                return Some(e);
            }
        }
    }
    None
}

/// Projection onto `im phi^N` along `ker phi^N`, when both are nonzero.
fn fitting_idempotent(phi: &Morphism, n: usize) -> Option<Morphism> {
    let powers: Vec<Matrix> = phi.blocks().iter().map(|b| b.pow(n)).collect();
    let rank: usize = powers.iter().map(Matrix::rank).sum();
    if rank == 0 || rank == n {
        return None;
    }
    let blocks = powers
        .iter()
        .map(|p| {
            let im = p.column_space();
            let ker = p.kernel_basis();
            let r = im.cols();
            let full = im.hstack(&ker);
            let inv = full.inverse().expect("Fitting decomposition is direct");
            let mut diag = Matrix::zeros(full.cols(), full.cols());
            for i in 0..r {
                diag[(i, i)] = crate::exactlin::one();
            }
            full.mul(&diag).mul(&inv)
        })
        .collect();
    Some(Morphism::new(blocks))
}

/// Splits `m` along an idempotent into `(im e, ker e)`.
pub fn split_by_idempotent(
    m: &Representation,
    e: &Morphism,
) -> Result<(Representation, Representation)> {
    let im: Vec<Matrix> = e.blocks().iter().map(Matrix::column_space).collect();
    let ker: Vec<Matrix> = e.blocks().iter().map(Matrix::kernel_basis).collect();
    Ok((m.submodule(&im)?.0, m.submodule(&ker)?.0))
}

/// Indecomposable summands, recursively split by idempotents.
pub fn decompose(m: &Representation) -> Result<Vec<Representation>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    match is_indecomposable(m)? {
        Decomposability::Indecomposable => Ok(vec![m.clone()]),
        Decomposability::UndecidableOverQ => Err(Error::UndecidableOverQ),
        Decomposability::Decomposable(e) => {
            let (a, b) = split_by_idempotent(m, &e)?;
            let mut out = decompose(&a)?;
            out.extend(decompose(&b)?);
            Ok(out)
        }
    }
}

/// Coordinates of flattened endomorphisms; exposed for tests of the radical.
pub fn end_coordinates(end: &EndRing) -> Coordinates {
    let cols: Vec<Vec<Scalar>> = end.basis.iter().map(Morphism::to_flat).collect();
    let len = end.module.dims().iter().map(|d| d * d).sum();
    Coordinates::new(Matrix::from_columns(len, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver};

    #[test]
    fn semisimple_square() {
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
        let two = a.simple(0).direct_sum(&a.simple(0)).unwrap();
        let e = end_ring(&two).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (4, 0));
        let parts = decompose(&two).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(is_indecomposable(&a.projective(0))
            .unwrap()
            .is_indecomposable());
        let mixed = a.projective(0).direct_sum(&a.simple(1)).unwrap();
        let e = end_ring(&mixed).unwrap();
        // Hom(S2, P1) is radical.
        assert_eq!((e.dim(), e.radical_dim()), (3, 1));
        for r in e.radical_elements() {
            assert!(r.compose(&r).is_zero());
        }
        let parts = decompose(&mixed).unwrap();
        let mut dims: Vec<Vec<usize>> = parts.iter().map(|p| p.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(
            is_indecomposable(&Representation::zero(a)),
            Err(Error::ZeroModule)
        ));
    }

    #[test]
    fn field_endomorphisms_are_indecomposable() {
        let arrows = vec![
            Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                label: "b".into(),
                source: 0,
                target: 1,
            },
        ];
        let k = BoundQuiverAlgebra::build(Quiver::new(2, arrows).unwrap(), vec![], 12).unwrap();
        // b = a * [[2,1],[1,1]], whose characteristic polynomial t^2 - 3t + 1
        // has no rational root: End is Q(sqrt 5).
        let a = Matrix::from_i64(&[&[-1, 1], &[0, -1]]);
        let b = Matrix::from_i64(&[&[-1, 0], &[-1, -1]]);
        let m = Representation::new(k.clone(), vec![2, 2], vec![a, b]).unwrap();
        let e = end_ring(&m).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (2, 0));
        assert!(is_indecomposable(&m).unwrap().is_indecomposable());
        assert_eq!(decompose(&m).unwrap().len(), 1);
        // With b = a * diag(1, 2) the same test splits.
        let split = Representation::new(
            k,
            vec![2, 2],
            vec![Matrix::identity(2), Matrix::from_i64(&[&[1, 0], &[0, 2]])],
        )
        .unwrap();
        assert_eq!(decompose(&split).unwrap().len(), 2);
    }
}
