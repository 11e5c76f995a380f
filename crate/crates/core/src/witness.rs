//! Explicit non-split extensions between matched summands, their middle
//! terms, and the projective/injective direction rules for a bijection.

use serde::{Deserialize, Serialize};

use crate::bijection::SummandBijection;
use crate::error::{Error, Result};
use crate::exactlin::{int, Scalar};
use crate::modrep::{
    ar_translate, decompose, ext1, is_indecomposable, is_injective, is_isomorphic, is_projective,
    push_out_extension, ExtSpace, Representation, ShortExactSequence,
};

pub const DEFAULT_SWEEP_BOUND: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArStatus {
    Ar,
    NotAr,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandInfo {
    pub dims: Vec<usize>,
    pub projective: bool,
    pub injective: bool,
    /// Index of the first isomorphic candidate, when candidates were given.
    pub matches: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct MiddleReport {
    pub summands: Vec<Representation>,
    pub info: Vec<SummandInfo>,
}

impl MiddleReport {
    pub fn all_projective(&self) -> bool {
        self.info.iter().all(|s| s.projective)
    }
}

/// `0 -> u -> v -> w -> 0` from the first cocycle of `Ext^1(w, u)`.
#[derive(Clone, Debug)]
pub struct ExtensionWitness {
    pub sequence: ShortExactSequence,
    pub ext_dim: usize,
    pub middle: MiddleReport,
    pub ar_status: ArStatus,
}

pub fn build_witness(u: &Representation, w: &Representation) -> Result<ExtensionWitness> {
    let ext = ext1(w, u)?;
    if ext.dim() == 0 {
        return Err(Error::NoExtension);
    }
    let sequence = push_out_extension(&ext, &ext.cocycle_basis[0])?;
    let middle = analyze_middle(&sequence.v, None)?;
    let ar_status = ar_classify(&sequence, ext.dim())?;
    Ok(ExtensionWitness {
        sequence,
        ext_dim: ext.dim(),
        middle,
        ar_status,
    })
}

/// Decomposes `v` and matches each summand against `candidates`.
pub fn analyze_middle(
    v: &Representation,
    candidates: Option<&[Representation]>,
) -> Result<MiddleReport> {
    let summands = decompose(v)?;
    let mut info = Vec::with_capacity(summands.len());
    for s in &summands {
        let mut matches = None;
        if let Some(cands) = candidates {
            for (k, c) in cands.iter().enumerate() {
                if is_isomorphic(s, c)? {
                    matches = Some(k);
                    break;
                }
            }
        }
        info.push(SummandInfo {
            dims: s.dims().to_vec(),
            projective: is_projective(s)?,
            injective: is_injective(s)?,
            matches,
        });
    }
    Ok(MiddleReport { summands, info })
}

/// `not_ar` for split sequences, projective `w`, or `u` not isomorphic to
/// `tau w`; `ar` when additionally `Ext^1(w, u)` is a line and `w` is
/// indecomposable; `indeterminate` otherwise.
pub fn ar_classify(seq: &ShortExactSequence, ext_dim: usize) -> Result<ArStatus> {
    if !seq.non_split || is_projective(&seq.w)? {
        return Ok(ArStatus::NotAr);
    }
    let tau = ar_translate(&seq.w)?;
    if !is_isomorphic(&seq.u, &tau)? {
        return Ok(ArStatus::NotAr);
    }
    if ext_dim == 1 && is_indecomposable(&seq.w)?.is_indecomposable() {
        Ok(ArStatus::Ar)
    } else {
        Ok(ArStatus::Indeterminate)
    }
}

/// One isomorphism class of middle terms met during a sweep.
#[derive(Clone, Debug)]
pub struct SweepClass {
    /// Coefficient vectors (over the cocycle basis) giving this middle, in
    /// lexicographic order.
    pub coefficients: Vec<Vec<i64>>,
    pub middle: Representation,
    pub split: bool,
}

/// Pushouts along every nonzero integer combination of the cocycle basis
/// with entries in `[-bound, bound]`, grouped by isomorphism class of the
/// middle term. Classes appear in order of their first coefficient vector.
pub fn sweep_ext_classes(
    u: &Representation,
    w: &Representation,
    bound: i64,
) -> Result<Vec<SweepClass>> {
    let ext = ext1(w, u)?;
    sweep_space(&ext, bound)
}

pub fn sweep_space(ext: &ExtSpace, bound: i64) -> Result<Vec<SweepClass>> {
    let d = ext.dim();
    let mut classes: Vec<SweepClass> = Vec::new();
    if d == 0 || bound <= 0 {
        return Ok(classes);
    }
    let mut c = vec![-bound; d];
    loop {
        if c.iter().any(|&x| x != 0) {
            let coeffs: Vec<Scalar> = c.iter().map(|&x| int(x)).collect();
            let seq = push_out_extension(ext, &ext.cocycle(&coeffs))?;
            let mut placed = false;
            for class in classes.iter_mut() {
                if is_isomorphic(&class.middle, &seq.v)? {
                    class.coefficients.push(c.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(SweepClass {
                    coefficients: vec![c.clone()],
                    middle: seq.v,
                    split: !seq.non_split,
                });
            }
        }
        // Odometer with the last coordinate fastest gives lexicographic order.
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(classes);
            }
            k -= 1;
            if c[k] < bound {
                c[k] += 1;
                break;
            }
            c[k] = -bound;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTag {
    Common,
    XProjectiveCase,
    XInjectiveCase,
    Generic,
}

/// Which sequences exist between `X_i` and `Y_{s(i)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `0 -> X_i -> V -> Y_{s(i)} -> 0`, from `Ext^1(Y_{s(i)}, X_i) != 0`.
    XToY,
    /// `0 -> Y_{s(i)} -> V -> X_i -> 0`, from `Ext^1(X_i, Y_{s(i)}) != 0`.
    YToX,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub tag: PairTag,
    pub directions: Vec<Direction>,
    /// The direction rule for this tag fails.
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub entries: Vec<PairEntry>,
}

impl PairClassification {
    pub fn violations(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.violation)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Projective `X_i` not matched isomorphically needs `XToY`; injective
/// `X_i` needs `YToX`; projective-injective `X_i` must be matched
/// isomorphically.
pub fn classify_summand_pairs(
    xs: &[Representation],
    ys: &[Representation],
    s: &SummandBijection,
) -> Result<PairClassification> {
    if xs.len() != ys.len() || s.permutation.len() != xs.len() {
        return Err(Error::LengthMismatch(format!(
            "{} and {} summands with a permutation of {} points",
            xs.len(),
            ys.len(),
            s.permutation.len()
        )));
    }
    let mut entries = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let y = &ys[s.permutation[i]];
        let mut directions = Vec::new();
        if ext1(y, x)?.dim() > 0 {
            directions.push(Direction::XToY);
        }
        if ext1(x, y)?.dim() > 0 {
            directions.push(Direction::YToX);
        }
        let (proj, inj) = (is_projective(x)?, is_injective(x)?);
        let entry = if is_isomorphic(x, y)? {
            PairEntry {
                tag: PairTag::Common,
                directions,
                violation: false,
            }
        } else if proj && inj {
            PairEntry {
                tag: PairTag::XProjectiveCase,
                directions,
                violation: true,
            }
        } else if proj {
            let ok = directions.contains(&Direction::XToY);
            PairEntry {
                tag: PairTag::XProjectiveCase,
                directions,
                violation: !ok,
            }
        } else if inj {
            let ok = directions.contains(&Direction::YToX);
            PairEntry {
                tag: PairTag::XInjectiveCase,
                directions,
                violation: !ok,
            }
        } else {
            let ok = !directions.is_empty();
            PairEntry {
                tag: PairTag::Generic,
                directions,
                violation: !ok,
            }
        };
        entries.push(entry);
    }
    Ok(PairClassification { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver};

    #[test]
    fn a2_witness_is_ar() {
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
        let w = build_witness(&a.simple(1), &a.simple(0)).unwrap();
        assert_eq!(w.ar_status, ArStatus::Ar);
        assert!(is_isomorphic(&w.sequence.v, &a.projective(0)).unwrap());
        assert!(w.sequence.check_exact().is_exact());
        assert!(matches!(
            build_witness(&a.simple(0), &a.simple(1)),
            Err(Error::NoExtension)
        ));
        let classes = sweep_ext_classes(&a.simple(1), &a.simple(0), 2).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].coefficients.len(), 4);
    }
}
