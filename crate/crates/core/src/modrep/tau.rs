use num_traits::Zero;

use crate::algebra::dualize_onto;
use crate::error::Result;
use crate::exactlin::Matrix;

use super::rep::{cokernel, Morphism, Representation};
use super::resolution::{projective_cover, projective_sum};

/// Auslander-Reiten translate `D Tr m` from a minimal presentation
/// `P1 -> P0 -> m -> 0`.
pub fn ar_translate(m: &Representation) -> Result<Representation> {
    let alg = m.algebra();
    let c0 = projective_cover(m)?;
    if c0.syzygy.is_zero() {
        return Ok(Representation::zero(alg.clone()));
    }
    let c1 = projective_cover(&c0.syzygy)?;
    let top0 = c0.summand_vertices();
    let top1 = c1.summand_vertices();

    // z[j][i]: component in P(v_i) of the image of the j-th top of P1,
    // as coefficients over the basis paths v_i -> u_j.
    let mut z = Vec::with_capacity(top1.len());
    for (u, g) in &c1.generators {
        let image = c0.embedding.block(*u).mul_vec(g);
        let mut parts = Vec::with_capacity(top0.len());
        let mut off = 0;
        for &v in &top0 {
            let len = alg.paths_between(v, *u).len();
            parts.push(image[off..off + len].to_vec());
            off += len;
        }
        z.push(parts);
    }

    // Hom(-, A) turns P(v) into the opposite projective at v; a map given by
    // left multiplication with z becomes right multiplication, i.e.
    // y -> reverse(z) . y over the opposite algebra.
    let op = alg.opposite();
    let source = projective_sum(&op, &top0);
    let target = projective_sum(&op, &top1);
    let nv = alg.vertex_count();
    let mut blocks = Vec::with_capacity(nv);
    for w in 0..nv {
        let mut block = Matrix::zeros(target.dims()[w], source.dims()[w]);
        let mut col_off = 0;
        for (i, &v) in top0.iter().enumerate() {
            let ys = op.paths_between(v, w);
            let mut row_off = 0;
            for (j, &u) in top1.iter().enumerate() {
                let rows = op.paths_between(u, w).len();
                for (k, &qb) in alg.paths_between(v, u).iter().enumerate() {
                    let c = &z[j][i][k];
                    if c.is_zero() {
                        continue;
                    }
                    let rev_q: Vec<usize> = alg.basis()[qb].arrows.iter().rev().copied().collect();
                    for (col, &yb) in ys.iter().enumerate() {
                        let mut path = rev_q.clone();
                        path.extend(&op.basis()[yb].arrows);
                        for (b, coeff) in op.reduce(u, &path) {
                            let row = op.basis()[b].position;
                            block[(row_off + row, col_off + col)] += c * coeff;
                        }
                    }
                }
                row_off += rows;
            }
            col_off += ys.len();
        }
        blocks.push(block);
    }
    let transpose = Morphism::new(blocks);
    debug_assert!(transpose.is_homomorphism(&source, &target));
    let tr = cokernel(&transpose, &target)?.module;
    dualize_onto(&tr, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver};

    #[test]
    fn a3_translates() {
        let arrows = vec![
            Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                label: "b".into(),
                source: 1,
                target: 2,
            },
        ];
        let a = BoundQuiverAlgebra::build(Quiver::new(3, arrows).unwrap(), vec![], 12).unwrap();
        // tau of the top simple S(1) is the simple S(2).
        assert_eq!(ar_translate(&a.simple(0)).unwrap().dims(), &[0, 1, 0]);
        assert_eq!(ar_translate(&a.simple(1)).unwrap().dims(), &[0, 0, 1]);
        for v in 0..3 {
            assert!(ar_translate(&a.projective(v)).unwrap().is_zero());
        }
        let t = ar_translate(&a.injective(1)).unwrap();
        assert_eq!(t.dims(), &[0, 1, 1]);
        t.validate().unwrap();
    }

    #[test]
    fn kronecker_top_simple() {
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
        let a = BoundQuiverAlgebra::build(Quiver::new(2, arrows).unwrap(), vec![], 12).unwrap();
        assert_eq!(ar_translate(&a.simple(0)).unwrap().dims(), &[3, 2]);
    }
}
