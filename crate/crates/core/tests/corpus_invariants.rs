//! Structural invariants checked on every algebra and module in the corpus.

use quiver_tilt::algebra::{dualize, dualize_onto};
use quiver_tilt::bijection::enumerate_permutations;
use quiver_tilt::corpus::{case_ids, load_case, CaseContext, CorpusCase};
use quiver_tilt::modrep::{
    ar_translate, ext_dim, hom_dim, idim, is_indecomposable, is_injective, is_isomorphic,
    is_projective, pdim, Representation, DEFAULT_SEED,
};
use quiver_tilt::tiltcheck::{check_hall, check_tilting, compute_f_sets};
use quiver_tilt::witness::{build_witness, sweep_ext_classes};

fn cases() -> Vec<&'static CorpusCase> {
    case_ids()
        .into_iter()
        .map(|id| &*Box::leak(Box::new(load_case(id).unwrap())))
        .filter(|c| c.algebra.is_some())
        .collect()
}

fn modules(case: &CorpusCase, ctx: &CaseContext) -> Vec<(String, Representation)> {
    case.modules
        .keys()
        .map(|k| (k.clone(), ctx.module(k).unwrap()))
        .collect()
}

fn indecomposable(m: &Representation) -> bool {
    is_indecomposable(m).unwrap().is_indecomposable()
}

fn iso(a: &Representation, b: &Representation) -> bool {
    is_isomorphic(a, b).unwrap()
}

#[test]
fn projectives_and_injectives_are_sound() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let alg = ctx.algebra().unwrap();
        let n = alg.vertex_count();
        let p_total: usize = (0..n).map(|v| alg.projective(v).total_dim()).sum();
        let i_total: usize = (0..n).map(|v| alg.injective(v).total_dim()).sum();
        assert_eq!(p_total, alg.total_dim(), "{}", case.id);
        assert_eq!(i_total, alg.total_dim(), "{}", case.id);
        for v in 0..n {
            for m in [alg.projective(v), alg.injective(v)] {
                m.validate().unwrap();
                assert!(indecomposable(&m), "{} vertex {}", case.id, v + 1);
            }
            assert!(is_projective(&alg.projective(v)).unwrap());
            assert!(is_injective(&alg.injective(v)).unwrap());
            assert!(
                ar_translate(&alg.projective(v)).unwrap().is_zero(),
                "{} tau P({})",
                case.id,
                v + 1
            );
        }
    }
}

#[test]
fn hereditary_bases_are_all_paths() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let alg = ctx.algebra().unwrap();
        if !alg.is_hereditary() {
            continue;
        }
        let q = alg.quiver();
        // Paths of every length, trivial ones included, by walking forward.
        let mut count = 0;
        let mut frontier: Vec<usize> = (0..q.vertex_count()).collect();
        while !frontier.is_empty() {
            count += frontier.len();
            frontier = frontier
                .iter()
                .flat_map(|&v| {
                    q.arrows()
                        .iter()
                        .filter(move |a| a.source == v)
                        .map(|a| a.target)
                })
                .collect();
        }
        assert_eq!(count, alg.total_dim(), "{}", case.id);
    }
}

#[test]
fn double_dual_is_the_identity() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let alg = ctx.algebra().unwrap();
        for (name, m) in modules(case, &ctx) {
            let back = dualize_onto(&dualize(&m), alg).unwrap();
            assert!(iso(&back, &m), "{} {name}", case.id);
        }
    }
}

#[test]
fn dual_swaps_projective_and_injective_dimension() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        for (name, m) in modules(case, &ctx) {
            assert_eq!(
                pdim(&dualize(&m), 4).unwrap(),
                idim(&m, 4).unwrap(),
                "{} {name}",
                case.id
            );
        }
    }
}

#[test]
fn euler_form_on_corpus_pairs() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let alg = ctx.algebra().unwrap();
        if !alg.is_hereditary() {
            continue;
        }
        let mods = modules(case, &ctx);
        for (a, m) in &mods {
            for (b, n) in &mods {
                let lhs = hom_dim(m, n).unwrap() as i64 - ext_dim(m, n).unwrap() as i64;
                let vertices: i64 = m
                    .dims()
                    .iter()
                    .zip(n.dims())
                    .map(|(x, y)| (x * y) as i64)
                    .sum();
                let arrows: i64 = alg
                    .quiver()
                    .arrows()
                    .iter()
                    .map(|e| (m.dims()[e.source] * n.dims()[e.target]) as i64)
                    .sum();
                assert_eq!(lhs, vertices - arrows, "{} ({a}, {b})", case.id);
            }
        }
    }
}

#[test]
fn tilting_pairs_satisfy_the_bijection_theorems() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let (xs, ys) = (ctx.family("X").unwrap(), ctx.family("Y").unwrap());
        assert!(
            check_tilting(&xs).unwrap().tilting && check_tilting(&ys).unwrap().tilting,
            "{}",
            case.id
        );
        let f = compute_f_sets(&xs, &ys).unwrap();
        check_hall(&f).unwrap();
        for (i, x) in xs.iter().enumerate() {
            if is_projective(x).unwrap() && is_injective(x).unwrap() {
                assert!(
                    ys.iter().any(|y| iso(x, y)),
                    "{} X_{} projective-injective",
                    case.id,
                    i + 1
                );
            }
        }
        let perms = enumerate_permutations(&f).unwrap();
        assert!(!perms.is_empty());
        for s in &perms {
            for (i, x) in xs.iter().enumerate() {
                let y = &ys[s.permutation[i]];
                let linked =
                    iso(x, y) || build_witness(x, y).is_ok() || build_witness(y, x).is_ok();
                assert!(linked, "{} {} at {}", case.id, s.cycles(), i + 1);
            }
        }
    }
}

#[test]
fn tilting_modules_admit_no_new_summand() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let ys = ctx.family("Y").unwrap();
        for (name, s) in modules(case, &ctx) {
            if !indecomposable(&s) || !pdim(&s, 4).unwrap().at_most(1) {
                continue;
            }
            if ys.iter().any(|y| iso(&s, y)) {
                continue;
            }
            let self_ext = ext_dim(&s, &s).unwrap() > 0;
            let mixed = ys
                .iter()
                .any(|y| ext_dim(&s, y).unwrap() > 0 || ext_dim(y, &s).unwrap() > 0);
            assert!(
                self_ext || mixed,
                "{} {name} extends a tilting module",
                case.id
            );
        }
    }
}

#[test]
fn swept_middles_have_summed_dims() {
    for case in cases() {
        let ctx = CaseContext::new(case, DEFAULT_SEED).unwrap();
        let (xs, ys) = (ctx.family("X").unwrap(), ctx.family("Y").unwrap());
        for x in &xs {
            for y in &ys {
                for (u, w) in [(x, y), (y, x)] {
                    if ext_dim(w, u).unwrap() > 2 {
                        continue;
                    }
                    let want: Vec<usize> =
                        u.dims().iter().zip(w.dims()).map(|(a, b)| a + b).collect();
                    for class in sweep_ext_classes(u, w, 1).unwrap() {
                        assert_eq!(class.middle.dims(), want.as_slice(), "{}", case.id);
                    }
                }
            }
        }
    }
}
