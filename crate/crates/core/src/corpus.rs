//! Worked cases as data: an algebra, named modules, tilting families and
//! claims, each claim tagged with where its expected value comes from.
//! [`run_case`] checks every claim and returns a [`VerifyReport`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_PATH_LEN};
use crate::bijection::{
    enumerate_permutations, extend_sdr, find_permutation, format_cycles, parse_cycles, PartialSdr,
    RelationTag, SummandBijection,
};
use crate::error::{Error, Result};
use crate::exactlin::int;
use crate::io::{AlgebraFile, ModuleFile};
use crate::modrep::{
    ar_translate, cokernel, decompose, end_ring, ext_dim, hom, hom_dim, idim, is_cogenerated_by,
    is_generated_by, is_injective, is_isomorphic_seeded, is_projective, pdim, Representation,
};
use crate::tiltcheck::{
    check_tilting, compute_f_sets, hall_violation, CompatibilityFamily, DIM_BOUND,
};
use crate::witness::{build_witness, classify_summand_pairs, sweep_ext_classes, ArStatus, PairTag};

pub const SCHEMA_VERSION: u32 = 1;

const CASES: &[(&str, &str)] = &[
    ("a2-intro", include_str!("../corpus/a2-intro.json")),
    ("d4-star", include_str!("../corpus/d4-star.json")),
    ("a4-line", include_str!("../corpus/a4-line.json")),
    ("a3-line", include_str!("../corpus/a3-line.json")),
    ("kronecker", include_str!("../corpus/kronecker.json")),
    ("hr-tree", include_str!("../corpus/hr-tree.json")),
    ("hr-tree-inj", include_str!("../corpus/hr-tree-inj.json")),
    (
        "cyclic-relations",
        include_str!("../corpus/cyclic-relations.json"),
    ),
    ("sdr-unique", include_str!("../corpus/sdr-unique.json")),
];

pub fn case_ids() -> Vec<&'static str> {
    CASES.iter().map(|(id, _)| *id).collect()
}

pub fn case_text(id: &str) -> Result<&'static str> {
    CASES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            Error::Corpus(format!(
                "unknown case {id:?}; known: {}",
                case_ids().join(", ")
            ))
        })
}

pub fn load_case(id: &str) -> Result<CorpusCase> {
    load_case_from_str(case_text(id)?)
}

pub fn load_case_from_str(text: &str) -> Result<CorpusCase> {
    serde_json::from_str(text).map_err(|e| Error::Corpus(format!("case file: {e}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraFile>,
    #[serde(default)]
    pub modules: BTreeMap<String, NamedModule>,
    /// Ordered summand lists by name.
    #[serde(default)]
    pub families: BTreeMap<String, Vec<String>>,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedModule {
    /// Loewy picture, informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub picture: Option<String>,
    #[serde(flatten)]
    pub def: ModuleDef,
}

/// 1-based vertices throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleDef {
    Explicit(ModuleFile),
    Projective { projective: usize },
    Injective { injective: usize },
    Simple { simple: usize },
    Sum { sum: Vec<String> },
    Tau { tau: String },
}

/// A module name or the direct sum of several.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModRef {
    One(String),
    Sum(Vec<String>),
}

impl std::fmt::Display for ModRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModRef::One(s) => f.write_str(s),
            ModRef::Sum(v) => f.write_str(&v.join(" + ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySource {
    Pair { x: String, y: String },
    Sets(Vec<Vec<usize>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Stated in the source material; `location` says where.
    Published,
    /// Computed by an independent method; `oracle` names it.
    Derived,
    /// Immediate from definitions.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtSide {
    /// `Ext^1(X_i, Y_{s(i)})`
    Xy,
    /// `Ext^1(Y_{s(i)}, X_i)`
    Yx,
}

/// Membership of every middle summand in `add` of the named families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AddCheck {
    pub of: Vec<String>,
    /// Intersection of the families when set, union otherwise.
    #[serde(default)]
    pub every: bool,
    #[serde(default = "yes")]
    pub expected: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    AlgebraDim {
        total_dim: usize,
    },
    Dims {
        module: ModRef,
        dims: Vec<usize>,
    },
    Indecomposable {
        modules: Vec<String>,
        #[serde(default = "yes")]
        expected: bool,
    },
    Projective {
        modules: Vec<String>,
        #[serde(default = "yes")]
        expected: bool,
    },
    Injective {
        modules: Vec<String>,
        #[serde(default = "yes")]
        expected: bool,
    },
    Iso {
        a: ModRef,
        b: ModRef,
        #[serde(default = "yes")]
        expected: bool,
    },
    HomDim {
        from: ModRef,
        to: ModRef,
        dim: usize,
    },
    /// `dim Ext^1(w, u)`
    ExtDim {
        w: ModRef,
        u: ModRef,
        dim: usize,
    },
    TauDims {
        module: ModRef,
        dims: Vec<usize>,
    },
    TauIso {
        module: ModRef,
        expected: ModRef,
    },
    Tilting {
        family: String,
        tilting: bool,
        cotilting: bool,
    },
    Pdim {
        module: ModRef,
        value: String,
    },
    Idim {
        module: ModRef,
        value: String,
    },
    Fsets {
        x: String,
        y: String,
        sets: Vec<Vec<usize>>,
    },
    Hall {
        family: FamilySource,
        violation: Option<Vec<usize>>,
    },
    Permutations {
        family: FamilySource,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        contains: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    FindPermutation {
        family: FamilySource,
        perm: String,
    },
    SdrExtend {
        family: FamilySource,
        /// Images of `1..m`.
        partial: Vec<usize>,
        result: Vec<usize>,
    },
    PermutationRelations {
        x: String,
        y: String,
        perm: String,
        relations: Vec<RelationTag>,
    },
    /// `Ext^1` between `X_i` and `Y_{s(i)}` is nonzero for the listed
    /// indices (all when omitted).
    PairExt {
        x: String,
        y: String,
        perm: String,
        side: ExtSide,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        indices: Option<Vec<usize>>,
    },
    /// `0 -> u -> v -> w -> 0` from the first cocycle.
    Witness {
        u: ModRef,
        w: ModRef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ext_dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        middle: Option<ModRef>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        summands: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        all_projective: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ar: Option<ArStatus>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        add: Option<AddCheck>,
    },
    /// Pushouts over integer combinations of the cocycle basis.
    Sweep {
        u: ModRef,
        w: ModRef,
        bound: i64,
        #[serde(default)]
        realizes: Vec<ModRef>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        all_dims: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        all_indecomposable: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        all_tau_stable: Option<bool>,
    },
    /// Every witness of a permutation, in each direction with nonzero Ext.
    PermutationWitnesses {
        x: String,
        y: String,
        perm: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ar: Option<ArStatus>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        indecomposable_middles: Option<bool>,
    },
    Gen {
        module: ModRef,
        by: ModRef,
        #[serde(default = "yes")]
        expected: bool,
    },
    Cogen {
        module: ModRef,
        by: ModRef,
        #[serde(default = "yes")]
        expected: bool,
    },
    EndRing {
        module: ModRef,
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radical_dim: Option<usize>,
    },
    HomOffDiagonal {
        family: String,
        max: usize,
    },
    ClassifyPairs {
        x: String,
        y: String,
        perm: String,
        tags: Vec<PairTag>,
        #[serde(default)]
        violations: Vec<usize>,
    },
    /// Some injective map `sub -> whole` has the given cokernel.
    Embeds {
        sub: ModRef,
        whole: ModRef,
        cokernel: ModRef,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    #[serde(flatten)]
    pub check: Check,
    pub origin: Origin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The claim could not be evaluated.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub index: usize,
    pub kind: String,
    pub origin: Origin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub case: String,
    pub title: String,
    pub seed: u64,
    pub results: Vec<ClaimResult>,
    pub passed: usize,
    pub failed: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Resolves names against a case, caching built modules.
pub struct CaseContext<'a> {
    case: &'a CorpusCase,
    algebra: Option<Arc<BoundQuiverAlgebra>>,
    cache: RefCell<BTreeMap<String, Representation>>,
    resolving: RefCell<Vec<String>>,
    seed: u64,
}

impl<'a> CaseContext<'a> {
    pub fn new(case: &'a CorpusCase, seed: u64) -> Result<Self> {
        let algebra = match &case.algebra {
            Some(a) => Some(a.build(DEFAULT_MAX_PATH_LEN)?),
            None => None,
        };
        Ok(CaseContext {
            case,
            algebra,
            cache: RefCell::default(),
            resolving: RefCell::default(),
            seed,
        })
    }

    pub fn algebra(&self) -> Result<&Arc<BoundQuiverAlgebra>> {
        self.algebra
            .as_ref()
            .ok_or_else(|| Error::Corpus(format!("case {} has no algebra", self.case.id)))
    }

    fn vertex(&self, v: usize) -> Result<usize> {
        let n = self.algebra()?.vertex_count();
        if v == 0 || v > n {
            return Err(Error::Corpus(format!("vertex {v} outside 1..{n}")));
        }
        Ok(v - 1)
    }

    pub fn module(&self, name: &str) -> Result<Representation> {
        if let Some(m) = self.cache.borrow().get(name) {
            return Ok(m.clone());
        }
        if self.resolving.borrow().iter().any(|n| n == name) {
            return Err(Error::Corpus(format!(
                "module {name:?} is defined in terms of itself"
            )));
        }
        let def = &self
            .case
            .modules
            .get(name)
            .ok_or_else(|| Error::Corpus(format!("unknown module {name:?}")))?
            .def;
        self.resolving.borrow_mut().push(name.to_string());
        let built = self.build(def);
        self.resolving.borrow_mut().pop();
        let m = built.map_err(|e| Error::Corpus(format!("module {name:?}: {e}")))?;
        self.cache.borrow_mut().insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn build(&self, def: &ModuleDef) -> Result<Representation> {
        let alg = self.algebra()?;
        Ok(match def {
            ModuleDef::Explicit(f) => f.build(alg)?,
            ModuleDef::Projective { projective } => alg.projective(self.vertex(*projective)?),
            ModuleDef::Injective { injective } => alg.injective(self.vertex(*injective)?),
            ModuleDef::Simple { simple } => alg.simple(self.vertex(*simple)?),
            ModuleDef::Sum { sum } => self.sum(sum)?,
            ModuleDef::Tau { tau } => ar_translate(&self.module(tau)?)?,
        })
    }

    fn sum(&self, names: &[String]) -> Result<Representation> {
        let parts = names
            .iter()
            .map(|n| self.module(n))
            .collect::<Result<Vec<_>>>()?;
        Representation::direct_sum_all(self.algebra()?, &parts)
    }

    pub fn resolve(&self, r: &ModRef) -> Result<Representation> {
        match r {
            ModRef::One(n) => self.module(n),
            ModRef::Sum(v) => self.sum(v),
        }
    }

    pub fn family(&self, name: &str) -> Result<Vec<Representation>> {
        self.family_names(name)?
            .iter()
            .map(|n| self.module(n))
            .collect()
    }

    fn family_names(&self, name: &str) -> Result<&[String]> {
        self.case
            .families
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Corpus(format!("unknown family {name:?}")))
    }

    fn iso(&self, a: &Representation, b: &Representation) -> Result<bool> {
        is_isomorphic_seeded(a, b, self.seed)
    }

    fn compat(&self, src: &FamilySource) -> Result<CompatibilityFamily> {
        match src {
            FamilySource::Pair { x, y } => compute_f_sets(&self.family(x)?, &self.family(y)?),
            FamilySource::Sets(sets) => crate::io::FamilyFile {
                n: sets.len(),
                sets: sets.clone(),
            }
            .build(),
        }
    }

    fn bijection(
        &self,
        x: &str,
        y: &str,
        perm: &str,
    ) -> Result<(Vec<Representation>, Vec<Representation>, Vec<usize>)> {
        let xs = self.family(x)?;
        let ys = self.family(y)?;
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch(format!(
                "{x} has {} summands, {y} has {}",
                xs.len(),
                ys.len()
            )));
        }
        let p = parse_cycles(perm, xs.len())?;
        Ok((xs, ys, p))
    }

    /// Every summand of `v` lies in `add` of the named families.
    fn in_add(&self, v: &Representation, check: &AddCheck) -> Result<bool> {
        let fams = check
            .of
            .iter()
            .map(|f| self.family(f))
            .collect::<Result<Vec<_>>>()?;
        for s in decompose(v)? {
            let mut hits = Vec::with_capacity(fams.len());
            for fam in &fams {
                let mut hit = false;
                for m in fam {
                    if self.iso(&s, m)? {
                        hit = true;
                        break;
                    }
                }
                hits.push(hit);
            }
            let ok = if check.every {
                hits.iter().all(|&h| h)
            } else {
                hits.iter().any(|&h| h)
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct Outcome {
    pass: bool,
    expected: String,
    computed: String,
}

fn outcome(expected: impl ToString, computed: impl ToString) -> Outcome {
    let (expected, computed) = (expected.to_string(), computed.to_string());
    Outcome {
        pass: expected == computed,
        expected,
        computed,
    }
}

fn dims_text(d: &[usize]) -> String {
    format!("{d:?}")
}

fn canonical_perm(text: &str, n: usize) -> Result<String> {
    Ok(format_cycles(&parse_cycles(text, n)?))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn sets_text(f: &CompatibilityFamily) -> String {
    format!(
        "{:?}",
        f.sets().iter().map(|s| one_based(s)).collect::<Vec<_>>()
    )
}

/// Flags that only need to be reported when expected.
fn conjunction(parts: Vec<(String, String, String)>) -> Outcome {
    let pass = parts.iter().all(|(_, e, c)| e == c);
    let expected = parts
        .iter()
        .map(|(k, e, _)| format!("{k}={e}"))
        .collect::<Vec<_>>()
        .join("; ");
    let computed = parts
        .iter()
        .map(|(k, _, c)| format!("{k}={c}"))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome {
        pass,
        expected,
        computed,
    }
}

fn evaluate(ctx: &CaseContext, check: &Check) -> Result<Outcome> {
    Ok(match check {
        Check::AlgebraDim { total_dim } => outcome(total_dim, ctx.algebra()?.total_dim()),
        Check::Dims { module, dims } => {
            outcome(dims_text(dims), dims_text(ctx.resolve(module)?.dims()))
        }
        Check::Indecomposable { modules, expected } => {
            let mut computed = Vec::new();
            for n in modules {
                let d = crate::modrep::is_indecomposable(&ctx.module(n)?)?;
                computed.push(format!("{n}:{}", d.is_indecomposable()));
            }
            let want = modules
                .iter()
                .map(|n| format!("{n}:{expected}"))
                .collect::<Vec<_>>();
            outcome(want.join(" "), computed.join(" "))
        }
        Check::Projective { modules, expected } | Check::Injective { modules, expected } => {
            let proj = matches!(check, Check::Projective { .. });
            let mut computed = Vec::new();
            for n in modules {
                let m = ctx.module(n)?;
                let v = if proj {
                    is_projective(&m)?
                } else {
                    is_injective(&m)?
                };
                computed.push(format!("{n}:{v}"));
            }
            let want = modules
                .iter()
                .map(|n| format!("{n}:{expected}"))
                .collect::<Vec<_>>();
            outcome(want.join(" "), computed.join(" "))
        }
        Check::Iso { a, b, expected } => {
            outcome(expected, ctx.iso(&ctx.resolve(a)?, &ctx.resolve(b)?)?)
        }
        Check::HomDim { from, to, dim } => {
            outcome(dim, hom_dim(&ctx.resolve(from)?, &ctx.resolve(to)?)?)
        }
        Check::ExtDim { w, u, dim } => outcome(dim, ext_dim(&ctx.resolve(w)?, &ctx.resolve(u)?)?),
        Check::TauDims { module, dims } => outcome(
            dims_text(dims),
            dims_text(ar_translate(&ctx.resolve(module)?)?.dims()),
        ),
        Check::TauIso { module, expected } => {
            let t = ar_translate(&ctx.resolve(module)?)?;
            let iso = ctx.iso(&t, &ctx.resolve(expected)?)?;
            Outcome {
                pass: iso,
                expected: format!("tau {module} = {expected}"),
                computed: if iso {
                    format!("tau {module} = {expected}")
                } else {
                    format!("tau {module} has dims {:?}", t.dims())
                },
            }
        }
        Check::Tilting {
            family,
            tilting,
            cotilting,
        } => {
            let r = check_tilting(&ctx.family(family)?)?;
            conjunction(vec![
                ("tilting".into(), tilting.to_string(), r.tilting.to_string()),
                (
                    "cotilting".into(),
                    cotilting.to_string(),
                    r.cotilting.to_string(),
                ),
            ])
        }
        Check::Pdim { module, value } => outcome(value, pdim(&ctx.resolve(module)?, DIM_BOUND)?),
        Check::Idim { module, value } => outcome(value, idim(&ctx.resolve(module)?, DIM_BOUND)?),
        Check::Fsets { x, y, sets } => {
            let f = compute_f_sets(&ctx.family(x)?, &ctx.family(y)?)?;
            outcome(format!("{sets:?}"), sets_text(&f))
        }
        Check::Hall { family, violation } => {
            let v = hall_violation(&ctx.compat(family)?)?;
            outcome(
                format!("{violation:?}"),
                format!("{:?}", v.map(|s| one_based(&s))),
            )
        }
        Check::Permutations {
            family,
            exact,
            contains,
            count,
        } => {
            let f = ctx.compat(family)?;
            let all: Vec<String> = enumerate_permutations(&f)?
                .iter()
                .map(SummandBijection::cycles)
                .collect();
            let mut parts = Vec::new();
            if let Some(ex) = exact {
                let mut want = ex
                    .iter()
                    .map(|p| canonical_perm(p, f.n()))
                    .collect::<Result<Vec<_>>>()?;
                want.sort();
                let mut got = all.clone();
                got.sort();
                parts.push(("exactly".into(), want.join(" "), got.join(" ")));
            }
            if let Some(cs) = contains {
                for p in cs {
                    let p = canonical_perm(p, f.n())?;
                    parts.push((
                        format!("has {p}"),
                        "true".into(),
                        all.contains(&p).to_string(),
                    ));
                }
            }
            if let Some(c) = count {
                parts.push(("count".into(), c.to_string(), all.len().to_string()));
            }
            conjunction(parts)
        }
        Check::FindPermutation { family, perm } => {
            let f = ctx.compat(family)?;
            outcome(canonical_perm(perm, f.n())?, find_permutation(&f)?.cycles())
        }
        Check::SdrExtend {
            family,
            partial,
            result,
        } => {
            let f = ctx.compat(family)?;
            let assignment = partial
                .iter()
                .map(|&j| {
                    j.checked_sub(1)
                        .ok_or_else(|| Error::Corpus("partial images are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let h = PartialSdr {
                n: f.n(),
                assignment,
            };
            if !h.is_valid(&f) {
                return Err(Error::Corpus(format!(
                    "partial assignment {partial:?} is not valid for the family"
                )));
            }
            outcome(
                format!("{result:?}"),
                format!("{:?}", one_based(&extend_sdr(&f, &h)?.assignment)),
            )
        }
        Check::PermutationRelations {
            x,
            y,
            perm,
            relations,
        } => {
            let (xs, ys, p) = ctx.bijection(x, y, perm)?;
            let f = compute_f_sets(&xs, &ys)?;
            let mut got = Vec::with_capacity(p.len());
            for (i, &j) in p.iter().enumerate() {
                let e = f.evidence(i, j).expect("computed families carry evidence");
                got.push(if e.iso {
                    "iso"
                } else if e.ext_xy > 0 {
                    "ext_xy"
                } else if e.ext_yx > 0 {
                    "ext_yx"
                } else {
                    "none"
                });
            }
            let want: Vec<String> = relations
                .iter()
                .map(|r| {
                    serde_json::to_value(r)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default()
                })
                .collect();
            outcome(want.join(" "), got.join(" "))
        }
        Check::PairExt {
            x,
            y,
            perm,
            side,
            indices,
        } => {
            let (xs, ys, p) = ctx.bijection(x, y, perm)?;
            let idx: Vec<usize> = match indices {
                Some(v) => v.clone(),
                None => (1..=xs.len()).collect(),
            };
            let mut got = Vec::new();
            for &i in &idx {
                if i == 0 || i > xs.len() {
                    return Err(Error::Corpus(format!("index {i} outside 1..{}", xs.len())));
                }
                let (xi, yj) = (&xs[i - 1], &ys[p[i - 1]]);
                let d = match side {
                    ExtSide::Xy => ext_dim(xi, yj)?,
                    ExtSide::Yx => ext_dim(yj, xi)?,
                };
                got.push(format!("{i}:{}", d > 0));
            }
            let want = idx.iter().map(|i| format!("{i}:true")).collect::<Vec<_>>();
            outcome(want.join(" "), got.join(" "))
        }
        Check::Witness {
            u,
            w,
            ext_dim,
            middle,
            summands,
            all_projective,
            ar,
            add,
        } => {
            let wit = build_witness(&ctx.resolve(u)?, &ctx.resolve(w)?)?;
            let exact = wit.sequence.check_exact().is_exact() && wit.sequence.non_split;
            let mut parts = vec![(
                "exact non-split".to_string(),
                "true".to_string(),
                exact.to_string(),
            )];
            if let Some(d) = ext_dim {
                parts.push(("ext dim".into(), d.to_string(), wit.ext_dim.to_string()));
            }
            if let Some(m) = middle {
                let iso = ctx.iso(&wit.sequence.v, &ctx.resolve(m)?)?;
                parts.push((format!("middle = {m}"), "true".into(), iso.to_string()));
            }
            if let Some(k) = summands {
                parts.push((
                    "summands".into(),
                    k.to_string(),
                    wit.middle.summands.len().to_string(),
                ));
            }
            if let Some(p) = all_projective {
                parts.push((
                    "all projective".into(),
                    p.to_string(),
                    wit.middle.all_projective().to_string(),
                ));
            }
            if let Some(a) = ar {
                parts.push((
                    "ar".into(),
                    format!("{a:?}"),
                    format!("{:?}", wit.ar_status),
                ));
            }
            if let Some(c) = add {
                let label = format!(
                    "middle in add {}",
                    c.of.join(if c.every { " and " } else { " or " })
                );
                parts.push((
                    label,
                    c.expected.to_string(),
                    ctx.in_add(&wit.sequence.v, c)?.to_string(),
                ));
            }
            conjunction(parts)
        }
        Check::Sweep {
            u,
            w,
            bound,
            realizes,
            all_dims,
            all_indecomposable,
            all_tau_stable,
        } => {
            let classes = sweep_ext_classes(&ctx.resolve(u)?, &ctx.resolve(w)?, *bound)?;
            let mut parts = vec![(
                "all non-split".to_string(),
                "true".to_string(),
                classes.iter().all(|c| !c.split).to_string(),
            )];
            for target in realizes {
                let t = ctx.resolve(target)?;
                let mut hit = false;
                for c in &classes {
                    if ctx.iso(&c.middle, &t)? {
                        hit = true;
                        break;
                    }
                }
                parts.push((format!("realizes {target}"), "true".into(), hit.to_string()));
            }
            if let Some(d) = all_dims {
                let ok = classes.iter().all(|c| c.middle.dims() == d.as_slice());
                parts.push((format!("all dims {d:?}"), "true".into(), ok.to_string()));
            }
            if let Some(want) = all_indecomposable {
                let mut ok = true;
                for c in &classes {
                    ok &= crate::modrep::is_indecomposable(&c.middle)?.is_indecomposable();
                }
                parts.push((
                    "all indecomposable".into(),
                    want.to_string(),
                    ok.to_string(),
                ));
            }
            if let Some(want) = all_tau_stable {
                let mut ok = true;
                for c in &classes {
                    ok &= ctx.iso(&ar_translate(&c.middle)?, &c.middle)?;
                }
                parts.push(("all tau-stable".into(), want.to_string(), ok.to_string()));
            }
            parts.push((
                "classes".into(),
                "nonzero".into(),
                if classes.is_empty() { "0" } else { "nonzero" }.into(),
            ));
            conjunction(parts)
        }
        Check::PermutationWitnesses {
            x,
            y,
            perm,
            ar,
            indecomposable_middles,
        } => {
            let (xs, ys, p) = ctx.bijection(x, y, perm)?;
            let mut built = 0usize;
            let mut exact = true;
            let mut statuses = Vec::new();
            let mut indec = true;
            for (i, xi) in xs.iter().enumerate() {
                let yj = &ys[p[i]];
                if ctx.iso(xi, yj)? {
                    continue;
                }
                for (u, w) in [(xi, yj), (yj, xi)] {
                    if ext_dim(w, u)? == 0 {
                        continue;
                    }
                    let wit = build_witness(u, w)?;
                    built += 1;
                    exact &= wit.sequence.check_exact().is_exact() && wit.sequence.non_split;
                    statuses.push(wit.ar_status);
                    indec &= wit.middle.summands.len() == 1;
                }
            }
            let mut parts = vec![
                (
                    "witnesses".to_string(),
                    "nonzero".to_string(),
                    if built == 0 { "0" } else { "nonzero" }.to_string(),
                ),
                ("exact non-split".into(), "true".into(), exact.to_string()),
            ];
            if let Some(a) = ar {
                let all = statuses.iter().all(|s| s == a);
                parts.push((format!("all {a:?}"), "true".into(), all.to_string()));
            }
            if let Some(want) = indecomposable_middles {
                parts.push((
                    "indecomposable middles".into(),
                    want.to_string(),
                    indec.to_string(),
                ));
            }
            conjunction(parts)
        }
        Check::Gen {
            module,
            by,
            expected,
        } => outcome(
            expected,
            is_generated_by(&ctx.resolve(module)?, &ctx.resolve(by)?)?,
        ),
        Check::Cogen {
            module,
            by,
            expected,
        } => outcome(
            expected,
            is_cogenerated_by(&ctx.resolve(module)?, &ctx.resolve(by)?)?,
        ),
        Check::EndRing {
            module,
            dim,
            radical_dim,
        } => {
            let e = end_ring(&ctx.resolve(module)?)?;
            let mut parts = vec![("dim".to_string(), dim.to_string(), e.dim().to_string())];
            if let Some(r) = radical_dim {
                parts.push((
                    "radical dim".into(),
                    r.to_string(),
                    e.radical_dim().to_string(),
                ));
            }
            conjunction(parts)
        }
        Check::HomOffDiagonal { family, max } => {
            let ms = ctx.family(family)?;
            let names = ctx.family_names(family)?;
            let mut worst = (0usize, String::from("none"));
            for (i, a) in ms.iter().enumerate() {
                for (j, b) in ms.iter().enumerate() {
                    if i != j {
                        let d = hom_dim(a, b)?;
                        if d > worst.0 {
                            worst = (d, format!("Hom({}, {})", names[i], names[j]));
                        }
                    }
                }
            }
            Outcome {
                pass: worst.0 <= *max,
                expected: format!("max <= {max}"),
                computed: format!("max = {} at {}", worst.0, worst.1),
            }
        }
        Check::ClassifyPairs {
            x,
            y,
            perm,
            tags,
            violations,
        } => {
            let (xs, ys, p) = ctx.bijection(x, y, perm)?;
            let s = SummandBijection {
                permutation: p,
                tags: Vec::new(),
            };
            let c = classify_summand_pairs(&xs, &ys, &s)?;
            let got_tags: Vec<PairTag> = c.entries.iter().map(|e| e.tag).collect();
            conjunction(vec![
                ("tags".into(), format!("{tags:?}"), format!("{got_tags:?}")),
                (
                    "violations".into(),
                    format!("{violations:?}"),
                    format!("{:?}", one_based(&c.violations())),
                ),
            ])
        }
        Check::Embeds {
            sub,
            whole,
            cokernel: coker,
        } => {
            let (a, b, c) = (ctx.resolve(sub)?, ctx.resolve(whole)?, ctx.resolve(coker)?);
            match find_embedding(&a, &b, ctx.seed)? {
                None => Outcome {
                    pass: false,
                    expected: format!("{sub} embeds in {whole} with cokernel {coker}"),
                    computed: "no injective map found".into(),
                },
                Some(f) => {
                    let q = cokernel(&f, &b)?;
                    let iso = ctx.iso(&q.module, &c)?;
                    Outcome {
                        pass: iso,
                        expected: format!("cokernel = {coker}"),
                        computed: if iso {
                            format!("cokernel = {coker}")
                        } else {
                            format!("cokernel dims {:?}", q.module.dims())
                        },
                    }
                }
            }
        }
    })
}

/// Basis elements first, then seeded random combinations. A generic
/// element of `Hom(a, b)` is injective whenever any element is.
pub fn find_embedding(
    a: &Representation,
    b: &Representation,
    seed: u64,
) -> Result<Option<crate::modrep::Morphism>> {
    let h = hom(a, b)?;
    if let Some(f) = h.basis.iter().find(|f| f.is_injective()) {
        return Ok(Some(f.clone()));
    }
    if h.dim() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let coeffs: Vec<_> = (0..h.dim())
            .map(|_| int(rng.gen_range(-1000..=1000)))
            .collect();
        let f = h.combination(&coeffs);
        if f.is_injective() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn kind_name(check: &Check) -> String {
    serde_json::to_value(check)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(String::from))
        .unwrap_or_default()
}

/// Evaluates every claim. Failures to build a module or evaluate a claim
/// are recorded against that claim rather than aborting the run.
pub fn run_case(case: &CorpusCase, seed: u64) -> VerifyReport {
    let ctx = CaseContext::new(case, seed);
    let mut results = Vec::with_capacity(case.claims.len());
    for (k, claim) in case.claims.iter().enumerate() {
        let evaluated = match &ctx {
            Ok(c) => evaluate(c, &claim.check),
            Err(e) => Err(Error::Corpus(format!("algebra: {e}"))),
        };
        let (status, expected, computed) = match evaluated {
            Ok(o) => (
                if o.pass { Status::Pass } else { Status::Fail },
                o.expected,
                o.computed,
            ),
            Err(e) => (Status::Error, "evaluable claim".to_string(), e.to_string()),
        };
        results.push(ClaimResult {
            index: k + 1,
            kind: kind_name(&claim.check),
            origin: claim.origin,
            location: claim.location.clone(),
            oracle: claim.oracle.clone(),
            status,
            expected,
            computed,
        });
    }
    let passed = results.iter().filter(|r| r.status == Status::Pass).count();
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        case: case.id.clone(),
        title: case.title.clone(),
        seed,
        failed: results.len() - passed,
        passed,
        results,
        notes: case.notes.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_parses_and_claims_carry_provenance() {
        for id in case_ids() {
            let case = load_case(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(case.id, id);
            for (k, c) in case.claims.iter().enumerate() {
                match c.origin {
                    Origin::Published => assert!(c.location.is_some(), "{id} claim {}", k + 1),
                    _ => assert!(c.oracle.is_some(), "{id} claim {}", k + 1),
                }
            }
        }
        assert!(load_case("no-such-case").is_err());
    }

    #[test]
    fn case_round_trips() {
        let case = load_case("kronecker").unwrap();
        let text = serde_json::to_string(&case).unwrap();
        assert_eq!(load_case_from_str(&text).unwrap(), case);
    }
}
