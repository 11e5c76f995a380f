use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactlin::{int, Scalar};

use super::hom::{hom, hom_dim, HomSpace};
use super::rep::{Morphism, Representation};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const RANDOM_ROUNDS: usize = 32;
pub const RANDOM_COEFF_BOUND: i64 = 1_000_000;
pub const GRID_MAX_HOM_DIM: usize = 4;

/// How far a verdict can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    /// Backed by an explicit isomorphism or an exact invariant mismatch.
    Certain,
    /// No isomorphism found by the randomized and grid searches. If one
    /// exists, each random round misses it with probability at most
    /// `total_dim / (2 * 10^6 + 1)` (Schwartz-Zippel on the determinant).
    Probable,
}

#[derive(Clone, Debug)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub confidence: Confidence,
    pub witness: Option<Morphism>,
}

fn reject() -> IsoVerdict {
    IsoVerdict {
        isomorphic: false,
        confidence: Confidence::Certain,
        witness: None,
    }
}

fn found(f: Morphism) -> IsoVerdict {
    IsoVerdict {
        isomorphic: true,
        confidence: Confidence::Certain,
        witness: Some(f),
    }
}

/// Looks for an invertible element of `Hom(m, n)`: first the basis
/// elements, then seeded random combinations, then a small coefficient grid.
pub fn isomorphism(m: &Representation, n: &Representation, seed: u64) -> Result<IsoVerdict> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(reject());
    }
    let h = hom(m, n)?;
    if h.dim() == 0 {
        return Ok(if m.is_zero() {
            found(Morphism::zero(m, n))
        } else {
            reject()
        });
    }
    // End(m), End(n) and Hom(m, n) share a dimension when m and n are isomorphic.
    if hom_dim(m, m)? != h.dim() || hom_dim(n, n)? != h.dim() {
        return Ok(reject());
    }
    Ok(search(&h, seed))
}

fn search(h: &HomSpace, seed: u64) -> IsoVerdict {
    for f in &h.basis {
        if f.is_invertible() {
            return found(f.clone());
        }
    }
    let d = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ROUNDS {
        let coeffs: Vec<Scalar> = (0..d)
            .map(|_| int(rng.gen_range(-RANDOM_COEFF_BOUND..=RANDOM_COEFF_BOUND)))
            .collect();
        let f = h.combination(&coeffs);
        if f.is_invertible() {
            return found(f);
        }
    }
    if d <= GRID_MAX_HOM_DIM {
        let mut c = vec![-2i64; d];
        loop {
            let f = h.combination(&c.iter().map(|&x| int(x)).collect::<Vec<_>>());
            if f.is_invertible() {
                return found(f);
            }
            let mut k = 0;
            while k < d && c[k] == 2 {
                c[k] = -2;
                k += 1;
            }
            if k == d {
                break;
            }
            c[k] += 1;
        }
    }
    IsoVerdict {
        isomorphic: false,
        confidence: Confidence::Probable,
        witness: None,
    }
}

pub fn is_isomorphic_seeded(m: &Representation, n: &Representation, seed: u64) -> Result<bool> {
    Ok(isomorphism(m, n, seed)?.isomorphic)
}

pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    is_isomorphic_seeded(m, n, DEFAULT_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver};
    use crate::exactlin::Matrix;

    #[test]
    fn basic_verdicts() {
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
        assert!(is_isomorphic(&a.simple(0), &a.simple(0)).unwrap());
        assert!(!is_isomorphic(&a.simple(0), &a.simple(1)).unwrap());
        // A scaled copy of P(1) is still P(1).
        let p = a.projective(0);
        let scaled =
            Representation::new(a.clone(), vec![1, 1], vec![Matrix::from_i64(&[&[7]])]).unwrap();
        let v = isomorphism(&p, &scaled, 1).unwrap();
        assert!(v.isomorphic);
        assert!(v.witness.unwrap().is_homomorphism(&p, &scaled));
        // Same dimension vector, different module.
        let split = a.simple(0).direct_sum(&a.simple(1)).unwrap();
        let v = isomorphism(&p, &split, 1).unwrap();
        assert!(!v.isomorphic);
        assert_eq!(v.confidence, Confidence::Certain);
    }
}
