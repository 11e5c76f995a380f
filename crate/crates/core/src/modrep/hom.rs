use num_traits::Zero;

use crate::error::Result;
use crate::exactlin::{Coordinates, Matrix, Scalar};

use super::rep::{Morphism, Representation};

/// A basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of flattened morphisms in this basis.
    pub fn coordinates(&self) -> Coordinates {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(Morphism::to_flat).collect();
        let len = flat_len(&self.source, &self.target);
        Coordinates::new(Matrix::from_columns(len, &cols))
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Morphism {
        Morphism::combination(
            &self.basis,
            coeffs,
            &Morphism::zero(&self.source, &self.target),
        )
    }
}

pub(crate) fn flat_len(m: &Representation, n: &Representation) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

/// Kernel of `(f_v) -> (f_t M_a - N_a f_s)`.
pub fn hom(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_same_algebra(n)?;
    let dm = m.dims();
    let dn = n.dims();
    let mut offsets = Vec::with_capacity(dm.len());
    let mut vars = 0;
    for v in 0..dm.len() {
        offsets.push(vars);
        vars += dm[v] * dn[v];
    }
    // Index of entry (i, j) of f_v.
    let var = |v: usize, i: usize, j: usize| offsets[v] + i * dm[v] + j;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (id, a) in m.algebra().quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = m.map(id);
        let na = n.map(id);
        // Entry (i, j) of f_t M_a - N_a f_s, with i < dn[t] and j < dm[s].
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let mut row = vec![Scalar::zero(); vars];
                for k in 0..dm[t] {
                    row[var(t, i, k)] += &ma[(k, j)];
                }
                for k in 0..dn[s] {
                    row[var(s, k, j)] -= &na[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    let phi = Matrix::from_rows(rows, vars);
    let k = phi.kernel_basis();
    let basis = (0..k.cols())
        .map(|c| Morphism::from_flat(dm, dn, &k.column(c)))
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom(m, n)?.dim())
}
