use crate::error::Result;
use crate::exactlin::Matrix;

use super::hom::hom;
use super::rep::Representation;

/// `m` is a quotient of a sum of copies of `g`: the images of all maps
/// `g -> m` fill every vertex.
pub fn is_generated_by(m: &Representation, g: &Representation) -> Result<bool> {
    let h = hom(g, m)?;
    Ok((0..m.dims().len()).all(|v| {
        let mut span = Matrix::zeros(m.dims()[v], 0);
        for f in &h.basis {
            span = span.hstack(f.block(v));
        }
        span.rank() == m.dims()[v]
    }))
}

/// `m` embeds in a product of copies of `c`: the maps `m -> c` have no
/// common kernel.
pub fn is_cogenerated_by(m: &Representation, c: &Representation) -> Result<bool> {
    let h = hom(m, c)?;
    Ok((0..m.dims().len()).all(|v| {
        let mut stack = Matrix::zeros(0, m.dims()[v]);
        for f in &h.basis {
            stack = stack.vstack(f.block(v));
        }
        stack.rank() == m.dims()[v]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver};

    #[test]
    fn a2_generation() {
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
        let (s1, s2, p1) = (a.simple(0), a.simple(1), a.projective(0));
        assert!(is_generated_by(&s1, &p1).unwrap());
        assert!(!is_generated_by(&s2, &p1).unwrap());
        assert!(is_generated_by(&p1, &p1).unwrap());
        assert!(is_cogenerated_by(&s2, &p1).unwrap());
        assert!(!is_cogenerated_by(&s1, &s2).unwrap());
        assert!(is_cogenerated_by(&s1, &a.injective(0)).unwrap());
    }
}
