//! Univariate polynomials over the rationals, coefficients stored low degree
//! first. Just enough to split modules by Fitting decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `t - root`
    pub fn linear(root: &Scalar) -> Self {
        Poly::new(vec![-root.clone(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.0
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        Poly::new(self.0.iter().map(|c| c * &l).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(vec![]);
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = d.0.len() - 1;
        if rem.len() < d.0.len() {
            return (Poly(vec![]), self.clone());
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        let inv = d.lead().recip();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Characteristic polynomial `det(t I - m)` by Faddeev–LeVerrier.
    pub fn characteristic(m: &Matrix) -> Poly {
        assert!(m.is_square());
        let n = m.rows();
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            mk = m
                .mul(&mk)
                .add(&Matrix::identity(n).scale(&coeffs[n + 1 - k]));
            let t = m.mul(&mk).trace();
            coeffs[n - k] = -t / int(k as i64);
        }
        Poly::new(coeffs)
    }

    /// The product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::constant(Scalar::one());
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Groups of factors by multiplicity: entry `k` is the product of the
    /// irreducible factors occurring exactly `k + 1` times (Yun).
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let mut a = f.gcd(&f.derivative());
        let mut b = f.div_rem(&a).0;
        let mut c = f.derivative().div_rem(&a).0;
        let mut d = c.add_scaled(&b.derivative(), &int(-1));
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = c.add_scaled(&b.derivative(), &int(-1));
            a = a.div_rem(&g).0;
        }
        let _ = a;
        out
    }

    fn add_scaled(&self, other: &Poly, c: &Scalar) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |v: &Vec<Scalar>, i: usize| v.get(i).cloned().unwrap_or_else(Scalar::zero);
        Poly::new(
            (0..n)
                .map(|i| get(&self.0, i) + get(&other.0, i) * c)
                .collect(),
        )
    }

    /// Distinct rational roots, ascending. Candidates come from the rational
    /// root theorem; coefficients whose magnitude exceeds 10^12 are not
    /// factored and yield no candidates beyond zero.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        if ints[0].is_zero() {
            roots.push(Scalar::zero());
            while ints.first().is_some_and(Zero::is_zero) {
                ints.remove(0);
            }
        }
        if ints.len() >= 2 {
            let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
                return roots;
            };
            let reduced = Poly::new(
                ints.iter()
                    .cloned()
                    .map(BigRational::from_integer)
                    .collect(),
            );
            for p in &ps {
                for q in &qs {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                        if !roots.contains(&cand) && reduced.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Irreducibility over Q up to degree three, where it means having no
    /// rational root. `None` when the degree is higher or the coefficients
    /// are too large to search.
    pub fn irreducible(&self) -> Option<bool> {
        match self.degree()? {
            0 => Some(false),
            1 => Some(true),
            2 | 3 => {
                if self.0[0].is_zero() {
                    return Some(false);
                }
                let lcm = self
                    .0
                    .iter()
                    .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                let scaled = |c: &Scalar| (c * BigRational::from_integer(lcm.clone())).to_integer();
                divisors(&scaled(&self.0[0]))?;
                divisors(&scaled(self.0.last().unwrap()))?;
                Some(self.rational_roots().is_empty())
            }
            _ => None,
        }
    }
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}
