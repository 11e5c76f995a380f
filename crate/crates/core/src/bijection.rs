//! Systems of distinct representatives for a compatibility family, built one
//! index at a time by augmenting chains, and permutations in cycle notation.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiltcheck::CompatibilityFamily;

pub const ENUMERATION_MAX: usize = 10;

/// An injective choice `i -> assignment[i] in F(i)` on the first `m` indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSdr {
    pub n: usize,
    pub assignment: Vec<usize>,
}

impl PartialSdr {
    pub fn empty(n: usize) -> Self {
        PartialSdr {
            n,
            assignment: Vec::new(),
        }
    }

    pub fn domain(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_valid(&self, f: &CompatibilityFamily) -> bool {
        let mut used = vec![false; self.n];
        self.assignment.iter().enumerate().all(|(i, &j)| {
            let fresh = j < self.n && !used[j] && f.contains(i, j);
            if fresh {
                used[j] = true;
            }
            fresh
        })
    }
}

/// Extends `h` to the next index. When no element of `F(m)` is free, the
/// chain `m -> l1 -> owner(l1) -> l2 -> ...` is searched breadth first,
/// smallest indices first, and reassigned along the first free end found.
/// On failure the error carries the indices reached, whose sets are too
/// small to cover them.
pub fn extend_sdr(f: &CompatibilityFamily, h: &PartialSdr) -> Result<PartialSdr> {
    let n = f.n();
    let m = h.domain();
    if m >= n {
        return Err(Error::LengthMismatch(format!(
            "assignment already covers all {n} indices"
        )));
    }
    let mut owner = vec![None; n];
    for (i, &j) in h.assignment.iter().enumerate() {
        owner[j] = Some(i);
    }
    let mut reached = vec![false; m + 1];
    let mut seen = vec![false; n];
    // For a target: the domain index that reached it.
    let mut via = vec![usize::MAX; n];
    let mut queue = VecDeque::from([m]);
    reached[m] = true;
    while let Some(i) = queue.pop_front() {
        if let Some(&free) = f.set(i).iter().find(|&&j| !seen[j] && owner[j].is_none()) {
            let mut assignment = h.assignment.clone();
            assignment.push(usize::MAX);
            let (mut idx, mut target) = (i, free);
            loop {
                let previous = assignment[idx];
                assignment[idx] = target;
                if idx == m {
                    break;
                }
                target = previous;
                idx = via[target];
            }
            return Ok(PartialSdr { n, assignment });
        }
        for &j in f.set(i) {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            via[j] = i;
            let o = owner[j].expect("free targets were handled above");
            if !reached[o] {
                reached[o] = true;
                queue.push_back(o);
            }
        }
    }
    Err(Error::HallViolation(
        (0..=m).filter(|&i| reached[i]).collect(),
    ))
}

/// Full SDR by repeated extension from the empty assignment.
pub fn find_sdr(f: &CompatibilityFamily) -> Result<PartialSdr> {
    let mut h = PartialSdr::empty(f.n());
    while h.domain() < f.n() {
        h = extend_sdr(f, &h)?;
    }
    Ok(h)
}

/// How `X_i` and `Y_{s(i)}` are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationTag {
    Iso,
    /// `Ext^1(X_i, Y_{s(i)}) != 0`
    ExtXy,
    /// `Ext^1(Y_{s(i)}, X_i) != 0`
    ExtYx,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandBijection {
    pub permutation: Vec<usize>,
    /// Empty when the family carries no evidence.
    pub tags: Vec<RelationTag>,
}

impl SummandBijection {
    pub fn cycles(&self) -> String {
        format_cycles(&self.permutation)
    }
}

fn tag(f: &CompatibilityFamily, permutation: Vec<usize>) -> SummandBijection {
    let tags = if f.evidence(0, 0).is_some() {
        permutation
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let e = f.evidence(i, j).expect("evidence table present");
                if e.iso {
                    RelationTag::Iso
                } else if e.ext_xy > 0 {
                    RelationTag::ExtXy
                } else {
                    RelationTag::ExtYx
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    SummandBijection { permutation, tags }
}

pub fn find_permutation(f: &CompatibilityFamily) -> Result<SummandBijection> {
    Ok(tag(f, find_sdr(f)?.assignment))
}

/// All permutations `s` with `s(i) in F(i)`, in lexicographic order.
pub fn enumerate_permutations(f: &CompatibilityFamily) -> Result<Vec<SummandBijection>> {
    let n = f.n();
    if n > ENUMERATION_MAX {
        return Err(Error::TooLarge(n, ENUMERATION_MAX));
    }
    fn go(
        f: &CompatibilityFamily,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i == f.n() {
            out.push(cur.clone());
            return;
        }
        for &j in f.set(i) {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(f, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(f, &mut Vec::new(), &mut vec![false; n], &mut out);
    Ok(out.into_iter().map(|p| tag(f, p)).collect())
}

/// Cycle notation with 1-based points, fixed points omitted, `id` for the
/// identity. Points are comma separated once any exceeds 9.
pub fn format_cycles(perm: &[usize]) -> String {
    let sep = if perm.len() > 9 { "," } else { "" };
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = perm[i];
        }
        out.push('(');
        out.push_str(&cycle.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}

/// Inverse of [`format_cycles`] on `n` points; also accepts `()` and
/// products of disjoint cycles.
pub fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>> {
    let bad = |msg: String| Error::Parse(format!("permutation {text:?}: {msg}"));
    let mut perm: Vec<usize> = (0..n).collect();
    let t = text.trim();
    if t == "id" {
        return Ok(perm);
    }
    let mut touched = vec![false; n];
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| bad("expected '('".into()))?;
        let close = open.find(')').ok_or_else(|| bad("missing ')'".into()))?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let points: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad point {p:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad(format!("bad point {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        for w in points.iter() {
            if *w == 0 || *w > n {
                return Err(bad(format!("point {w} outside 1..{n}")));
            }
            if touched[w - 1] {
                return Err(bad(format!("point {w} repeated")));
            }
            touched[w - 1] = true;
        }
        for k in 0..points.len() {
            perm[points[k] - 1] = points[(k + 1) % points.len()] - 1;
        }
    }
    Ok(perm)
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
    fn unique_chain_extension() {
        let f = fam(&[&[1, 2], &[2, 3], &[3, 4], &[1]]);
        let g = PartialSdr {
            n: 4,
            assignment: vec![0, 1, 2],
        };
        let s = extend_sdr(&f, &g).unwrap();
        // 4 -> 1, 1 -> 2, 2 -> 3, 3 -> 4
        assert_eq!(s.assignment, vec![1, 2, 3, 0]);
        assert_eq!(enumerate_permutations(&f).unwrap().len(), 1);
        assert_eq!(format_cycles(&s.assignment), "(1234)");
    }

    #[test]
    fn diagonal_and_blocked() {
        let f = fam(&[&[1], &[2], &[3]]);
        let g = PartialSdr {
            n: 3,
            assignment: vec![0, 1],
        };
        assert_eq!(extend_sdr(&f, &g).unwrap().assignment, vec![0, 1, 2]);
        let f = fam(&[&[1], &[1]]);
        let g = PartialSdr {
            n: 2,
            assignment: vec![0],
        };
        match extend_sdr(&f, &g) {
            Err(Error::HallViolation(s)) => assert_eq!(s, vec![0, 1]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            find_permutation(&fam(&[&[1]])).unwrap().permutation,
            vec![0]
        );
    }

    #[test]
    fn cycle_text() {
        assert_eq!(format_cycles(&[0, 2, 1, 3]), "(23)");
        assert_eq!(format_cycles(&[0, 1, 2]), "id");
        let t = parse_cycles("(162)(45)", 6).unwrap();
        assert_eq!(format_cycles(&t), "(162)(45)");
        assert_eq!(t, vec![5, 0, 2, 4, 3, 1]);
        assert_eq!(parse_cycles("(153246)", 6).unwrap()[0], 4);
        assert_eq!(parse_cycles("id", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_cycles("()", 2).unwrap(), vec![0, 1]);
        assert_eq!(parse_cycles("(1,10)", 10).unwrap()[0], 9);
        assert!(parse_cycles("(12", 3).is_err());
        assert!(parse_cycles("(14)", 3).is_err());
        assert!(parse_cycles("(121)", 3).is_err());
    }
}
