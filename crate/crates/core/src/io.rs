//! JSON file formats for algebras, modules and bare families. Vertices and
//! family members are 1-based in files; scalars are integers or `"p/q"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Arrow, BoundQuiverAlgebra, Quiver, Relation, DEFAULT_MAX_PATH_LEN};
use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, parse_scalar, Matrix, Scalar};
use crate::modrep::Representation;
use crate::tiltcheck::CompatibilityFamily;

/// A rational written as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn value(&self) -> Result<Scalar> {
        match self {
            ScalarText::Int(i) => Ok(crate::exactlin::int(*i)),
            ScalarText::Text(t) => parse_scalar(t),
        }
    }

    pub fn canonical(q: &Scalar) -> Self {
        ScalarText::Text(format_scalar(q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowFile {
    pub label: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: ScalarText,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: usize,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
}

impl AlgebraFile {
    pub fn build(&self, max_path_len: usize) -> Result<Arc<BoundQuiverAlgebra>> {
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            if a.from == 0 || a.to == 0 || a.from > self.vertices || a.to > self.vertices {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} joins {} and {}, outside 1..{}",
                    a.label, a.from, a.to, self.vertices
                )));
            }
            arrows.push(Arrow {
                label: a.label.clone(),
                source: a.from - 1,
                target: a.to - 1,
            });
        }
        let quiver = Quiver::new(self.vertices, arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (r, terms) in self.relations.iter().enumerate() {
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                let path = t
                    .path
                    .iter()
                    .map(|l| {
                        quiver.arrow_id(l).ok_or_else(|| {
                            Error::InvalidRelation(format!(
                                "relation {}: unknown arrow {l:?}",
                                r + 1
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push((t.coeff.value()?, path));
            }
            relations.push(Relation::new(out));
        }
        let alg = BoundQuiverAlgebra::build(quiver, relations, max_path_len)?;
        Ok(match &self.name {
            Some(n) => alg.with_name(n.clone()),
            None => alg,
        })
    }

    /// Canonical description of a built algebra.
    pub fn describe(alg: &BoundQuiverAlgebra) -> Self {
        let q = alg.quiver();
        AlgebraFile {
            name: alg.name().map(str::to_string),
            vertices: q.vertex_count(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowFile {
                    label: a.label.clone(),
                    from: a.source + 1,
                    to: a.target + 1,
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermFile {
                            coeff: ScalarText::canonical(c),
                            path: p.iter().map(|&i| q.arrow(i).label.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

pub type MatrixFile = Vec<Vec<ScalarText>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub dims: Vec<usize>,
    /// Arrows left out act by zero.
    #[serde(default)]
    pub maps: BTreeMap<String, MatrixFile>,
}

pub fn matrix_from_file(rows: usize, cols: usize, m: &MatrixFile, what: &str) -> Result<Matrix> {
    // An empty list stands for any matrix with no entries.
    if m.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    if m.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "{what}: expected {rows} rows, found {}",
            m.len()
        )));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: row {} has {} entries, expected {cols}",
                i + 1,
                row.len()
            )));
        }
        out.push(
            row.iter()
                .map(ScalarText::value)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out, cols))
}

pub fn matrix_to_file(m: &Matrix) -> MatrixFile {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ScalarText::canonical).collect())
        .collect()
}

impl ModuleFile {
    pub fn build(&self, alg: &Arc<BoundQuiverAlgebra>) -> Result<Representation> {
        let q = alg.quiver();
        if self.dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "dims has {} entries for {} vertices",
                self.dims.len(),
                q.vertex_count()
            )));
        }
        for label in self.maps.keys() {
            if q.arrow_id(label).is_none() {
                return Err(Error::Parse(format!("maps: unknown arrow {label:?}")));
            }
        }
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (self.dims[a.target], self.dims[a.source]);
                match self.maps.get(&a.label) {
                    Some(m) => matrix_from_file(r, c, m, &format!("maps.{}", a.label)),
                    None => Ok(Matrix::zeros(r, c)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(alg.clone(), self.dims.clone(), maps)
    }

    pub fn describe(m: &Representation) -> Self {
        let q = m.algebra().quiver();
        ModuleFile {
            algebra: m.algebra().name().map(str::to_string),
            dims: m.dims().to_vec(),
            maps: q
                .arrows()
                .iter()
                .zip(m.maps())
                .filter(|(_, mat)| !mat.is_zero())
                .map(|(a, mat)| (a.label.clone(), matrix_to_file(mat)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub n: usize,
    #[serde(rename = "F")]
    pub sets: Vec<Vec<usize>>,
}

impl FamilyFile {
    pub fn build(&self) -> Result<CompatibilityFamily> {
        if self.sets.len() != self.n {
            return Err(Error::LengthMismatch(format!(
                "n = {} but {} sets given",
                self.n,
                self.sets.len()
            )));
        }
        let mut sets = Vec::with_capacity(self.n);
        for (i, s) in self.sets.iter().enumerate() {
            let mut out = Vec::with_capacity(s.len());
            for &j in s {
                if j == 0 || j > self.n {
                    return Err(Error::Parse(format!(
                        "F[{}] contains {j}, outside 1..{}",
                        i + 1,
                        self.n
                    )));
                }
                out.push(j - 1);
            }
            sets.push(out);
        }
        CompatibilityFamily::from_sets(sets)
    }

    pub fn describe(f: &CompatibilityFamily) -> Self {
        FamilyFile {
            n: f.n(),
            sets: f
                .sets()
                .iter()
                .map(|s| s.iter().map(|j| j + 1).collect())
                .collect(),
        }
    }
}

/// Parses JSON, keeping serde's line and column in the message.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_algebra(text: &str, max_path_len: usize) -> Result<Arc<BoundQuiverAlgebra>> {
    from_json::<AlgebraFile>(text, "algebra")?.build(max_path_len)
}

pub fn parse_module(text: &str, alg: &Arc<BoundQuiverAlgebra>) -> Result<Representation> {
    from_json::<ModuleFile>(text, "module")?.build(alg)
}

pub fn parse_family(text: &str) -> Result<CompatibilityFamily> {
    from_json::<FamilyFile>(text, "family")?.build()
}

pub fn default_max_path_len() -> usize {
    DEFAULT_MAX_PATH_LEN
}
