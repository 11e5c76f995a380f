//! Quivers, admissible relations and the bound quiver algebra `KQ/I`.
//!
//! Paths are arrow sequences read from source to target. A representation
//! sends a path `a1 a2 ... ak` to the matrix product `M_ak ... M_a1`
//! (column vectors). Vertices are 0-based in the API and 1-based in files
//! and reports.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};
use crate::modrep::Representation;

pub const DEFAULT_MAX_PATH_LEN: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver(
                "a quiver needs at least one vertex".into(),
            ));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} leaves the vertex range",
                    a.label
                )));
            }
            if arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow label {:?}",
                    a.label
                )));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_id(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm; loops count as cycles.
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        Quiver {
            vertex_count: self.vertex_count,
            arrows,
        }
    }

    /// Source and target of a nonempty composable arrow sequence.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut t = first.target;
        for &id in &path[1..] {
            let a = self.arrows.get(id)?;
            if a.source != t {
                return None;
            }
            t = a.target;
        }
        Some((first.source, t))
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.iter().rev().copied().collect()))
                .collect(),
        }
    }
}

/// A normal-form path of the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
    /// Position inside the list of basis paths from `source` to `target`.
    pub position: usize,
}

/// All paths of one length, together with the ideal in that degree.
#[derive(Debug)]
struct Degree {
    paths: Vec<(usize, Vec<usize>)>,
    index: HashMap<Vec<usize>, usize>,
    /// Rows of the reduced echelon basis of the ideal in this degree.
    ideal: Matrix,
    /// For each path: the ideal row having it as pivot, if any.
    pivot_row: Vec<Option<usize>>,
    /// For each path that is not a pivot: its global basis id.
    basis_id: Vec<Option<usize>>,
}

/// `A = KQ/I` with its normal-form path basis.
pub struct BoundQuiverAlgebra {
    name: Option<String>,
    quiver: Quiver,
    relations: Vec<Relation>,
    max_path_len: usize,
    degrees: Vec<Degree>,
    basis: Vec<BasisPath>,
    between: Vec<Vec<Vec<usize>>>,
    hereditary: bool,
    opposite: OnceLock<Arc<BoundQuiverAlgebra>>,
}

impl std::fmt::Debug for BoundQuiverAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundQuiverAlgebra")
            .field("name", &self.name)
            .field("vertices", &self.quiver.vertex_count)
            .field("arrows", &self.quiver.arrows.len())
            .field("relations", &self.relations.len())
            .field("total_dim", &self.basis.len())
            .finish()
    }
}

/// Two algebras are equal when their presentations are.
impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for BoundQuiverAlgebra {}

impl BoundQuiverAlgebra {
    /// Computes the path basis of `KQ/I`, degree by degree, until a whole
    /// degree dies. On a cyclic quiver, survivors at `max_path_len` mean the
    /// ideal is not admissible within the bound.
    pub fn build(
        quiver: Quiver,
        relations: Vec<Relation>,
        max_path_len: usize,
    ) -> Result<Arc<Self>> {
        let relations = normalize_relations(&quiver, relations)?;
        let acyclic = quiver.is_acyclic();
        let n = quiver.vertex_count();

        let mut degrees: Vec<Degree> = Vec::new();
        let mut basis: Vec<BasisPath> = Vec::new();
        let mut between = vec![vec![Vec::new(); n]; n];

        let mut push_basis =
            |source: usize, target: usize, arrows: Vec<usize>, basis: &mut Vec<BasisPath>| {
                let id = basis.len();
                let position = between[source][target].len();
                between[source][target].push(id);
                basis.push(BasisPath {
                    source,
                    target,
                    arrows,
                    position,
                });
                id
            };

        // Degree 0: the trivial paths.
        let mut d0 = Degree {
            paths: (0..n).map(|v| (v, Vec::new())).collect(),
            index: HashMap::new(),
            ideal: Matrix::zeros(0, n),
            pivot_row: vec![None; n],
            basis_id: Vec::new(),
        };
        for v in 0..n {
            d0.basis_id
                .push(Some(push_basis(v, v, Vec::new(), &mut basis)));
        }
        degrees.push(d0);

        let mut len = 1;
        loop {
            let prev = &degrees[len - 1];
            let mut paths: Vec<(usize, Vec<usize>)> = Vec::new();
            for (src, p) in &prev.paths {
                let end = p.last().map_or(*src, |&a| quiver.arrow(a).target);
                for (id, a) in quiver.arrows().iter().enumerate() {
                    if a.source == end {
                        let mut q = p.clone();
                        q.push(id);
                        paths.push((*src, q));
                    }
                }
            }
            if paths.is_empty() {
                break;
            }
            let index: HashMap<Vec<usize>, usize> = paths
                .iter()
                .enumerate()
                .map(|(i, (_, p))| (p.clone(), i))
                .collect();

            let mut gens: Vec<Vec<Scalar>> = Vec::new();
            if len >= 2 {
                let prev_ideal = &prev.ideal;
                for r in 0..prev_ideal.rows() {
                    let row = prev_ideal.row(r);
                    for id in 0..quiver.arrows().len() {
                        for prepend in [false, true] {
                            let mut v = vec![Scalar::zero(); paths.len()];
                            let mut any = false;
                            for (j, c) in row.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let mut q = prev.paths[j].1.clone();
                                if prepend {
                                    q.insert(0, id);
                                } else {
                                    q.push(id);
                                }
                                if let Some(&k) = index.get(&q) {
                                    v[k] += c;
                                    any = true;
                                }
                            }
                            if any {
                                gens.push(v);
                            }
                        }
                    }
                }
                for rel in relations.iter().filter(|r| r.terms[0].1.len() == len) {
                    let mut v = vec![Scalar::zero(); paths.len()];
                    for (c, p) in &rel.terms {
                        v[index[p]] += c;
                    }
                    gens.push(v);
                }
            }
            let gen_matrix = Matrix::from_rows(gens, paths.len());
            let r = gen_matrix.rref();
            let ideal = r.reduced.select_rows(&(0..r.rank).collect::<Vec<_>>());
            let mut pivot_row = vec![None; paths.len()];
            for (i, &p) in r.pivot_columns.iter().enumerate() {
                pivot_row[p] = Some(i);
            }
            let mut basis_id = vec![None; paths.len()];
            let mut survivors = 0;
            for (k, (src, p)) in paths.iter().enumerate() {
                if pivot_row[k].is_none() {
                    let tgt = quiver.arrow(*p.last().unwrap()).target;
                    basis_id[k] = Some(push_basis(*src, tgt, p.clone(), &mut basis));
                    survivors += 1;
                }
            }
            degrees.push(Degree {
                paths,
                index,
                ideal,
                pivot_row,
                basis_id,
            });
            if survivors == 0 {
                break;
            }
            if !acyclic && len >= max_path_len {
                return Err(Error::NotAdmissible(len));
            }
            len += 1;
        }

        let hereditary = relations.is_empty() && acyclic;
        Ok(Arc::new(BoundQuiverAlgebra {
            name: None,
            quiver,
            relations,
            max_path_len,
            degrees,
            basis,
            between,
            hereditary,
            opposite: OnceLock::new(),
        }))
    }

    pub fn with_name(self: Arc<Self>, name: impl Into<String>) -> Arc<Self> {
        let mut inner = Arc::try_unwrap(self).unwrap_or_else(|a| a.rebuild());
        inner.name = Some(name.into());
        Arc::new(inner)
    }

    fn rebuild(&self) -> BoundQuiverAlgebra {
        let a = Self::build(
            self.quiver.clone(),
            self.relations.clone(),
            self.max_path_len,
        )
        .expect("rebuilding a valid algebra");
        Arc::try_unwrap(a).expect("fresh Arc")
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn max_path_len(&self) -> usize {
        self.max_path_len
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    /// Basis ids of the normal-form paths from `source` to `target`.
    pub fn paths_between(&self, source: usize, target: usize) -> &[usize] {
        &self.between[source][target]
    }

    /// Length after which every path lies in the ideal.
    pub fn nilpotency_length(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Normal form of the path `arrows` (starting at `source` when empty), as
    /// a combination of basis paths.
    pub fn reduce(&self, source: usize, arrows: &[usize]) -> Vec<(usize, Scalar)> {
        if arrows.is_empty() {
            return vec![(self.degrees[0].basis_id[source].unwrap(), Scalar::one())];
        }
        let Some(deg) = self.degrees.get(arrows.len()) else {
            return Vec::new();
        };
        let Some(&k) = deg.index.get(arrows) else {
            return Vec::new();
        };
        match deg.pivot_row[k] {
            None => vec![(deg.basis_id[k].unwrap(), Scalar::one())],
            Some(r) => deg
                .ideal
                .row(r)
                .iter()
                .enumerate()
                .filter(|(j, c)| *j != k && !c.is_zero())
                .map(|(j, c)| {
                    (
                        deg.basis_id[j].expect("reduced rows only hit non-pivots"),
                        -c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// The opposite algebra, built once and cached.
    pub fn opposite(&self) -> Arc<BoundQuiverAlgebra> {
        self.opposite
            .get_or_init(|| {
                let rels = self.relations.iter().map(Relation::reversed).collect();
                let op = Self::build(self.quiver.opposite(), rels, self.max_path_len)
                    .expect("the opposite of an admissible presentation is admissible");
                match &self.name {
                    Some(n) => op.with_name(format!("{n}^op")),
                    None => op,
                }
            })
            .clone()
    }

    /// Indecomposable projective `P(v)`: paths out of `v`, arrows acting by
    /// extension.
    pub fn projective(self: &Arc<Self>, v: usize) -> Representation {
        let n = self.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| self.between[v][w].len()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
                for (j, &b) in self.between[v][a.source].iter().enumerate() {
                    let mut p = self.basis[b].arrows.clone();
                    p.push(id);
                    for (k, c) in self.reduce(v, &p) {
                        m[(self.basis[k].position, j)] = c;
                    }
                }
                m
            })
            .collect();
        Representation::new_unchecked(self.clone(), dims, maps)
    }

    /// Indecomposable injective `I(v) = D P_op(v)`.
    pub fn injective(self: &Arc<Self>, v: usize) -> Representation {
        let op = self.opposite();
        dualize_onto(&op.projective(v), self).expect("op of op is the algebra itself")
    }

    pub fn simple(self: &Arc<Self>, v: usize) -> Representation {
        let mut dims = vec![0; self.vertex_count()];
        dims[v] = 1;
        Representation::zero_maps(self.clone(), dims)
    }
}

fn normalize_relations(quiver: &Quiver, relations: Vec<Relation>) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (i, rel) in relations.into_iter().enumerate() {
        let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
        for (c, p) in rel.terms {
            if let Some(t) = terms.iter_mut().find(|(_, q)| *q == p) {
                t.0 += c;
            } else {
                terms.push((c, p));
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        let bad = |msg: &str| Error::InvalidRelation(format!("relation {}: {msg}", i + 1));
        if terms.is_empty() {
            return Err(bad("no nonzero coefficient"));
        }
        let mut ends = None;
        let mut length = None;
        for (_, p) in &terms {
            if p.len() < 2 {
                return Err(bad("paths must have length at least 2"));
            }
            let e = quiver
                .path_ends(p)
                .ok_or_else(|| bad("path is not composable"))?;
            if *ends.get_or_insert(e) != e {
                return Err(bad("paths are not parallel"));
            }
            if *length.get_or_insert(p.len()) != p.len() {
                return Err(bad("paths must all have the same length"));
            }
        }
        out.push(Relation { terms });
    }
    Ok(out)
}

/// The standard duality `D`: a module over `A` becomes a module over the
/// opposite algebra, with transposed arrow matrices.
pub fn dualize(m: &Representation) -> Representation {
    let op = m.algebra().opposite();
    dualize_onto(m, &op).expect("cached opposite matches")
}

/// `D m` placed over `target`, which must present the opposite of
/// `m`'s algebra.
pub fn dualize_onto(
    m: &Representation,
    target: &Arc<BoundQuiverAlgebra>,
) -> Result<Representation> {
    let q = m.algebra().quiver();
    let tq = target.quiver();
    if tq != &q.opposite() {
        return Err(Error::AlgebraMismatch);
    }
    let maps = m.maps().iter().map(Matrix::transpose).collect();
    Ok(Representation::new_unchecked(
        target.clone(),
        m.dims().to_vec(),
        maps,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    pub(crate) fn linear(n: usize) -> Arc<BoundQuiverAlgebra> {
        let arrows = (0..n - 1)
            .map(|i| Arrow {
                label: format!("a{}", i + 1),
                source: i,
                target: i + 1,
            })
            .collect();
        BoundQuiverAlgebra::build(
            Quiver::new(n, arrows).unwrap(),
            vec![],
            DEFAULT_MAX_PATH_LEN,
        )
        .unwrap()
    }

    fn kronecker() -> Arc<BoundQuiverAlgebra> {
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
        BoundQuiverAlgebra::build(
            Quiver::new(2, arrows).unwrap(),
            vec![],
            DEFAULT_MAX_PATH_LEN,
        )
        .unwrap()
    }

    fn cyclic() -> Arc<BoundQuiverAlgebra> {
        let edges = [
            ("a", 0, 1),
            ("b", 1, 2),
            ("c", 2, 3),
            ("d", 3, 0),
            ("e", 3, 4),
            ("f", 4, 1),
        ];
        let arrows = edges
            .iter()
            .map(|&(l, s, t)| Arrow {
                label: l.into(),
                source: s,
                target: t,
            })
            .collect();
        let q = Quiver::new(5, arrows).unwrap();
        let id = |l: &str| q.arrow_id(l).unwrap();
        let rels = vec![
            Relation::new(vec![
                (int(1), vec![id("d"), id("a")]),
                (int(-1), vec![id("e"), id("f")]),
            ]),
            Relation::new(vec![(int(1), vec![id("f"), id("b")])]),
            Relation::new(vec![(int(1), vec![id("c"), id("e")])]),
        ];
        BoundQuiverAlgebra::build(q, rels, DEFAULT_MAX_PATH_LEN).unwrap()
    }

    #[test]
    fn linear_a3_has_six_paths() {
        let a = linear(3);
        assert_eq!(a.total_dim(), 6);
        assert!(a.is_hereditary());
        assert_eq!(a.opposite().total_dim(), 6);
        assert_eq!(a.opposite().opposite().total_dim(), 6);
    }

    #[test]
    fn kronecker_has_four_paths() {
        let k = kronecker();
        assert_eq!(k.total_dim(), 4);
        assert_eq!(k.opposite().quiver().arrow(0).source, 1);
        assert_eq!(k.injective(1).dims(), &[2, 1]);
        assert_eq!(k.injective(0).dims(), &[1, 0]);
    }

    #[test]
    fn cyclic_example_reproduces_projectives_and_injectives() {
        let a = cyclic();
        assert_eq!(a.total_dim(), 18);
        assert!(!a.is_hereditary());
        let p: Vec<Vec<usize>> = (0..5).map(|v| a.projective(v).dims().to_vec()).collect();
        assert_eq!(
            p,
            vec![
                vec![2, 1, 1, 1, 0],
                vec![1, 1, 1, 1, 0],
                vec![1, 0, 1, 1, 0],
                vec![1, 1, 0, 1, 1],
                vec![0, 1, 0, 0, 1]
            ]
        );
        let i: Vec<Vec<usize>> = (0..5).map(|v| a.injective(v).dims().to_vec()).collect();
        assert_eq!(
            i,
            vec![
                vec![2, 1, 1, 1, 0],
                vec![1, 1, 0, 1, 1],
                vec![1, 1, 1, 0, 0],
                vec![1, 1, 1, 1, 0],
                vec![0, 0, 0, 1, 1]
            ]
        );
        for v in 0..5 {
            a.projective(v).validate().unwrap();
            a.injective(v).validate().unwrap();
        }
    }

    #[test]
    fn a_long_zero_relation_is_not_enough() {
        // Commutativity plus one length-5 zero relation leaves a much bigger algebra.
        let edges = [
            ("a", 0, 1),
            ("b", 1, 2),
            ("c", 2, 3),
            ("d", 3, 0),
            ("e", 3, 4),
            ("f", 4, 1),
        ];
        let arrows = edges
            .iter()
            .map(|&(l, s, t)| Arrow {
                label: l.into(),
                source: s,
                target: t,
            })
            .collect();
        let q = Quiver::new(5, arrows).unwrap();
        let rels = vec![
            Relation::new(vec![(int(1), vec![3, 0]), (int(-1), vec![4, 5])]),
            Relation::new(vec![(int(1), vec![0, 1, 2, 3, 0])]),
        ];
        let a = BoundQuiverAlgebra::build(q, rels, DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(a.total_dim(), 44);
        assert_ne!(a.projective(2).dims(), &[1, 0, 1, 1, 0]);
    }

    #[test]
    fn unbounded_cycle_is_rejected() {
        let arrows = vec![Arrow {
            label: "x".into(),
            source: 0,
            target: 0,
        }];
        let err =
            BoundQuiverAlgebra::build(Quiver::new(1, arrows).unwrap(), vec![], 6).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible(6)));
    }

    #[test]
    fn loop_with_square_zero() {
        let arrows = vec![Arrow {
            label: "x".into(),
            source: 0,
            target: 0,
        }];
        let rels = vec![Relation::new(vec![(int(1), vec![0, 0])])];
        let a = BoundQuiverAlgebra::build(Quiver::new(1, arrows).unwrap(), rels, 6).unwrap();
        assert_eq!(a.total_dim(), 2);
    }

    #[test]
    fn bad_relations_are_rejected() {
        let a = linear(3);
        let q = a.quiver().clone();
        let short = Relation::new(vec![(int(1), vec![0])]);
        assert!(BoundQuiverAlgebra::build(q.clone(), vec![short], 12).is_err());
        let broken = Relation::new(vec![(int(1), vec![1, 0])]);
        assert!(BoundQuiverAlgebra::build(q.clone(), vec![broken], 12).is_err());
        let cancels = Relation::new(vec![(int(1), vec![0, 1]), (int(-1), vec![0, 1])]);
        assert!(BoundQuiverAlgebra::build(q, vec![cancels], 12).is_err());
    }

    #[test]
    fn sink_projective_is_simple() {
        let a = linear(2);
        assert_eq!(a.projective(1).dims(), &[0, 1]);
        assert_eq!(a.projective(0).dims(), &[1, 1]);
        assert_eq!(a.injective(0).dims(), &[1, 0]);
    }

    #[test]
    fn dimension_sums_match() {
        for a in [linear(4), kronecker(), cyclic()] {
            let n = a.vertex_count();
            let p: usize = (0..n).map(|v| a.projective(v).total_dim()).sum();
            let i: usize = (0..n).map(|v| a.injective(v).total_dim()).sum();
            assert_eq!(p, a.total_dim());
            assert_eq!(i, a.total_dim());
        }
    }
}
