//! Tilting and cotilting axioms, and the compatibility sets `F(i)` between
//! the summands of two tilting modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modrep::{ext_dim, idim, is_isomorphic, pdim, DimBound, Representation};

/// Homological dimensions are resolved up to this bound.
pub const DIM_BOUND: usize = 4;
pub const HALL_MAX: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Tilting,
    Cotilting,
    PartialTilting,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingReport {
    pub pdims: Vec<DimBound>,
    pub idims: Vec<DimBound>,
    /// pdim of every summand is at most one.
    pub pdim_ok: bool,
    /// idim of every summand is at most one.
    pub idim_ok: bool,
    /// First ordered pair `(i, j)` with `Ext^1(T_i, T_j) != 0`.
    pub ext_offending: Option<(usize, usize)>,
    pub ext_self_vanishing: bool,
    pub summand_count: usize,
    pub simple_count: usize,
    pub count_ok: bool,
    pub tilting: bool,
    pub cotilting: bool,
    pub verdict: Verdict,
}

/// Checks multiplicity freeness first, then every axiom on every summand.
pub fn check_tilting(summands: &[Representation]) -> Result<TiltingReport> {
    let Some(first) = summands.first() else {
        return Err(Error::ZeroModule);
    };
    for (i, a) in summands.iter().enumerate() {
        a.check_same_algebra(first)?;
        for (j, b) in summands.iter().enumerate().skip(i + 1) {
            if is_isomorphic(a, b)? {
                return Err(Error::NotMultiplicityFree(i, j));
            }
        }
    }
    let pdims = summands
        .iter()
        .map(|t| pdim(t, DIM_BOUND))
        .collect::<Result<Vec<_>>>()?;
    let idims = summands
        .iter()
        .map(|t| idim(t, DIM_BOUND))
        .collect::<Result<Vec<_>>>()?;
    let mut ext_offending = None;
    'outer: for (i, a) in summands.iter().enumerate() {
        for (j, b) in summands.iter().enumerate() {
            if ext_dim(a, b)? != 0 {
                ext_offending = Some((i, j));
                break 'outer;
            }
        }
    }
    let pdim_ok = pdims.iter().all(|d| d.at_most(1));
    let idim_ok = idims.iter().all(|d| d.at_most(1));
    let ext_self_vanishing = ext_offending.is_none();
    let simple_count = first.algebra().vertex_count();
    let count_ok = summands.len() == simple_count;
    let tilting = pdim_ok && ext_self_vanishing && count_ok;
    let cotilting = idim_ok && ext_self_vanishing && count_ok;
    let verdict = if tilting {
        Verdict::Tilting
    } else if cotilting {
        Verdict::Cotilting
    } else if pdim_ok && ext_self_vanishing {
        Verdict::PartialTilting
    } else {
        Verdict::Neither
    };
    Ok(TiltingReport {
        pdims,
        idims,
        pdim_ok,
        idim_ok,
        ext_offending,
        ext_self_vanishing,
        summand_count: summands.len(),
        simple_count,
        count_ok,
        tilting,
        cotilting,
        verdict,
    })
}

/// Why `j` belongs to `F(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub iso: bool,
    /// `dim Ext^1(X_i, Y_j)`
    pub ext_xy: usize,
    /// `dim Ext^1(Y_j, X_i)`
    pub ext_yx: usize,
}

impl Evidence {
    pub fn relates(&self) -> bool {
        self.iso || self.ext_xy > 0 || self.ext_yx > 0
    }
}

/// Sets `F(0..n)` over `0..n`, optionally with the evidence table for
/// every pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
    evidence: Option<Vec<Vec<Evidence>>>,
}

impl CompatibilityFamily {
    /// A bare family; every member must be below the number of sets.
    pub fn from_sets(sets: Vec<Vec<usize>>) -> Result<Self> {
        let n = sets.len();
        let mut clean = Vec::with_capacity(n);
        for (i, s) in sets.into_iter().enumerate() {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&j| j >= n) {
                return Err(Error::Parse(format!(
                    "set {} contains {} outside 1..{}",
                    i + 1,
                    bad + 1,
                    n
                )));
            }
            clean.push(s);
        }
        Ok(CompatibilityFamily {
            n,
            sets: clean,
            evidence: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.sets[i].binary_search(&j).is_ok()
    }

    pub fn evidence(&self, i: usize, j: usize) -> Option<&Evidence> {
        self.evidence.as_ref().map(|e| &e[i][j])
    }

    fn masks(&self) -> Vec<u64> {
        self.sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect()
    }
}

/// `F(i) = { j : X_i = Y_j or Ext^1(X_i, Y_j) + Ext^1(Y_j, X_i) != 0 }`.
pub fn compute_f_sets(xs: &[Representation], ys: &[Representation]) -> Result<CompatibilityFamily> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(format!(
            "{} summands against {}",
            xs.len(),
            ys.len()
        )));
    }
    let mut evidence = Vec::with_capacity(xs.len());
    let mut sets = Vec::with_capacity(xs.len());
    for x in xs {
        let mut row = Vec::with_capacity(ys.len());
        let mut set = Vec::new();
        for (j, y) in ys.iter().enumerate() {
            let e = Evidence {
                iso: is_isomorphic(x, y)?,
                ext_xy: ext_dim(x, y)?,
                ext_yx: ext_dim(y, x)?,
            };
            if e.relates() {
                set.push(j);
            }
            row.push(e);
        }
        evidence.push(row);
        sets.push(set);
    }
    Ok(CompatibilityFamily {
        n: xs.len(),
        sets,
        evidence: Some(evidence),
    })
}

/// The violating index set with fewest elements (ties: smallest bitmask),
/// or `None` when Hall's condition holds.
pub fn hall_violation(f: &CompatibilityFamily) -> Result<Option<Vec<usize>>> {
    let n = f.n;
    if n > HALL_MAX {
        return Err(Error::TooLarge(n, HALL_MAX));
    }
    let masks = f.masks();
    let mut union = vec![0u64; 1 << n];
    let mut best: Option<(u32, usize)> = None;
    for s in 1usize..(1 << n) {
        let low = s.trailing_zeros() as usize;
        union[s] = union[s & (s - 1)] | masks[low];
        let k = s.count_ones();
        if union[s].count_ones() < k && best.is_none_or(|(bk, bs)| (k, s) < (bk, bs)) {
            best = Some((k, s));
        }
    }
    Ok(best.map(|(_, s)| (0..n).filter(|i| s >> i & 1 == 1).collect()))
}

pub fn check_hall(f: &CompatibilityFamily) -> Result<()> {
    match hall_violation(f)? {
        None => Ok(()),
        Some(v) => Err(Error::HallViolation(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> CompatibilityFamily {
        CompatibilityFamily::from_sets(
            sets.iter()
                .map(|s| s.iter().map(|x| x - 1).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn hall_examples() {
        assert_eq!(
            hall_violation(&fam(&[&[1, 2], &[2, 3], &[3, 4], &[1]])).unwrap(),
            None
        );
        assert_eq!(
            hall_violation(&fam(&[&[1], &[], &[3]])).unwrap(),
            Some(vec![1])
        );
        assert_eq!(
            hall_violation(&fam(&[&[1], &[1]])).unwrap(),
            Some(vec![0, 1])
        );
        assert!(matches!(
            check_hall(&fam(&[&[1], &[1]])),
            Err(Error::HallViolation(_))
        ));
        assert!(CompatibilityFamily::from_sets(vec![vec![3]]).is_err());
    }

    #[test]
    fn hall_prefers_small_subsets() {
        // {1,2,3} all map into {1,2}; the pair {3,4} -> {3} is smaller.
        let f = fam(&[&[1, 2], &[1, 2], &[1, 2, 3], &[3], &[3]]);
        assert_eq!(hall_violation(&f).unwrap(), Some(vec![3, 4]));
    }
}
