//! Exact linear algebra over the rationals.
//!
//! Every computation in the crate bottoms out here. Scalars are arbitrary
//! precision rationals kept in lowest terms with a positive denominator, so
//! equality tests are exact and results reproduce bit for bit.

mod matrix;
pub mod poly;

pub use matrix::{Coordinates, Matrix, Rref};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// A rational number in canonical form.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match t.split_once('/') {
        None => t
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().map_err(|_| bad())?;
            let q = q.trim().parse::<BigInt>().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reduced row-echelon form of `m`.
pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

/// Columns of the returned matrix form a basis of the null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let rhs = Matrix::from_vec(b.len(), 1, b.to_vec());
    Ok(m.solve_matrix(&rhs).map(|x| x.column(0)))
}

/// Codomain dimension minus rank.
pub fn cokernel_dim(m: &Matrix) -> usize {
    m.rows() - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let r = rref(&Matrix::identity(2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        let r = rref(&Matrix::zeros(3, 4));
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // [[1,2],[2,4]]: subtract twice row one from row two by hand.
        let r = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivot_columns, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(3)).cols(), 0);
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)].clone(), -k[(1, 0)].clone());
        let a = m(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        // (2,-1) spans the kernel: the basis column must be proportional to it.
        assert_eq!(k[(0, 0)].clone() * int(-1), k[(1, 0)].clone() * int(2));
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(3), int(-7)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b.clone()));
        let x = solve(&m(&[&[1, 1]]), &[int(3)]).unwrap().unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), int(3));
        assert_eq!(solve(&m(&[&[1], &[2]]), &[int(1), int(1)]).unwrap(), None);
        assert!(solve(&Matrix::identity(2), &[int(1)]).is_err());
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_dim(&Matrix::identity(4)), 0);
        assert_eq!(cokernel_dim(&Matrix::zeros(3, 2)), 3);
        assert_eq!(cokernel_dim(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(format_scalar(&parse_scalar("4/6").unwrap()), "2/3");
        assert_eq!(format_scalar(&parse_scalar("3/-6").unwrap()), "-1/2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
