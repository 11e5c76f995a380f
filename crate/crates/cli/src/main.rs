use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quiver_tilt::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_PATH_LEN};
use quiver_tilt::bijection::{enumerate_permutations, find_permutation, SummandBijection};
use quiver_tilt::corpus::{case_ids, load_case, run_case, Status, VerifyReport};
use quiver_tilt::io::{from_json, AlgebraFile, FamilyFile, ModuleFile};
use quiver_tilt::modrep::{
    ar_translate, ext_dim, hom_dim, idim, is_indecomposable, is_injective, is_projective, pdim,
    Decomposability, Representation, DEFAULT_SEED,
};
use quiver_tilt::tiltcheck::{check_tilting, compute_f_sets, DIM_BOUND};
use quiver_tilt::witness::{analyze_middle, build_witness, sweep_ext_classes};
use quiver_tilt::Error;

#[derive(Parser)]
#[command(
    name = "qtilt",
    version,
    about = "Tilting modules over bound quiver algebras, checked in exact arithmetic"
)]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Longest path kept when building the path basis of a cyclic quiver.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PATH_LEN)]
    max_path_len: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra summaries.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Module checks.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// dim Hom(M, N).
    Hom {
        alg: PathBuf,
        m: PathBuf,
        n: PathBuf,
    },
    /// dim Ext^1(W, U), the extensions 0 -> U -> ? -> W -> 0.
    Ext {
        alg: PathBuf,
        w: PathBuf,
        u: PathBuf,
    },
    /// Auslander-Reiten translate of M.
    Tau { alg: PathBuf, m: PathBuf },
    /// Tilting and cotilting axioms.
    #[command(subcommand)]
    Tilting(TiltingCmd),
    /// Compatibility sets F(i) between two summand lists.
    Fsets(FsetsArgs),
    /// Permutations compatible with a family file {n, F}.
    #[command(subcommand)]
    Bijection(BijectionCmd),
    /// A non-split sequence 0 -> U -> V -> W -> 0 and its middle term.
    Witness {
        alg: PathBuf,
        w: PathBuf,
        u: PathBuf,
        /// Also push out along every integer cocycle combination with
        /// coefficients in [-B, B].
        #[arg(long, value_name = "B")]
        sweep: Option<i64>,
    },
    /// Check the claims of built-in cases.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Info { alg: PathBuf },
}

#[derive(Subcommand)]
enum ModuleCmd {
    Check { alg: PathBuf, module: PathBuf },
}

#[derive(Subcommand)]
enum TiltingCmd {
    Check {
        alg: PathBuf,
        #[arg(required = true)]
        summands: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct FsetsArgs {
    alg: PathBuf,
    #[arg(long, num_args = 1.., required = true)]
    x: Vec<PathBuf>,
    #[arg(long, num_args = 1.., required = true)]
    y: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum BijectionCmd {
    /// One permutation built by repeated augmenting-chain extension.
    Find { family: PathBuf },
    /// Every compatible permutation.
    Enumerate { family: PathBuf },
}

/// Whether the checked property held.
enum Verdict {
    Pass,
    Fail,
}

struct Ctx {
    json: bool,
    seed: u64,
    max_path_len: usize,
}

impl Ctx {
    fn read(&self, path: &Path) -> Result<String> {
        std::fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))
    }

    fn algebra(&self, path: &Path) -> Result<Arc<BoundQuiverAlgebra>> {
        let text = self.read(path)?;
        let file: AlgebraFile = from_json(&text, &path.display().to_string())?;
        file.build(self.max_path_len)
            .with_context(|| format!("{}: invalid algebra", path.display()))
    }

    fn module_file(&self, path: &Path) -> Result<ModuleFile> {
        Ok(from_json(&self.read(path)?, &path.display().to_string())?)
    }

    fn module(&self, alg: &Arc<BoundQuiverAlgebra>, path: &Path) -> Result<Representation> {
        self.module_file(path)?
            .build(alg)
            .with_context(|| format!("{}: invalid module", path.display()))
    }

    fn emit(&self, value: Value, human: impl FnOnce() -> String) {
        if self.json {
            say(serde_json::to_string_pretty(&value).expect("json values serialize"));
        } else {
            say(human());
        }
    }
}

/// Writes a line to standard output. A closed pipe ends the process quietly.
fn say(text: impl std::fmt::Display) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn dims(d: &[usize]) -> String {
    format!(
        "({})",
        d.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    )
}

fn bijection_json(b: &SummandBijection) -> Value {
    json!({
        "cycles": b.cycles(),
        "images": b.permutation.iter().map(|j| j + 1).collect::<Vec<_>>(),
        "tags": b.tags,
    })
}

fn run(cli: Cli) -> Result<Verdict> {
    let ctx = Ctx {
        json: cli.json,
        seed: cli.seed,
        max_path_len: cli.max_path_len,
    };
    match cli.command {
        Command::Algebra(AlgebraCmd::Info { alg }) => {
            let a = ctx.algebra(&alg)?;
            let n = a.vertex_count();
            let proj: Vec<Vec<usize>> = (0..n).map(|v| a.projective(v).dims().to_vec()).collect();
            let inj: Vec<Vec<usize>> = (0..n).map(|v| a.injective(v).dims().to_vec()).collect();
            ctx.emit(
                json!({
                    "algebra": AlgebraFile::describe(&a),
                    "total_dim": a.total_dim(),
                    "hereditary": a.is_hereditary(),
                    "nilpotency_length": a.nilpotency_length(),
                    "projective_dims": proj,
                    "injective_dims": inj,
                }),
                || {
                    let mut out = format!(
                        "{}: {} vertices, {} arrows, {} relations\ndimension {}, {}hereditary, radical nilpotent of index {}\n",
                        a.name().unwrap_or("algebra"),
                        n,
                        a.quiver().arrows().len(),
                        a.relations().len(),
                        a.total_dim(),
                        if a.is_hereditary() { "" } else { "not " },
                        a.nilpotency_length()
                    );
                    for v in 0..n {
                        out.push_str(&format!("  P({}) {}  I({}) {}\n", v + 1, dims(&proj[v]), v + 1, dims(&inj[v])));
                    }
                    out.trim_end().to_string()
                },
            );
            Ok(Verdict::Pass)
        }
        Command::Module(ModuleCmd::Check { alg, module }) => {
            let a = ctx.algebra(&alg)?;
            let file = ctx.module_file(&module)?;
            let m = match file.build(&a) {
                Ok(m) => m,
                Err(e @ Error::RelationViolated { .. }) => {
                    ctx.emit(json!({"valid": false, "reason": e.to_string()}), || {
                        format!("invalid: {e}")
                    });
                    return Ok(Verdict::Fail);
                }
                Err(e) => {
                    return Err(anyhow::Error::new(e)
                        .context(format!("{}: invalid module", module.display())))
                }
            };
            let indec = match is_indecomposable(&m) {
                Ok(Decomposability::Indecomposable) => json!(true),
                Ok(Decomposability::Decomposable(_)) => json!(false),
                Ok(Decomposability::UndecidableOverQ) => json!("undecidable over Q"),
                Err(Error::ZeroModule) => json!(false),
                Err(e) => return Err(e.into()),
            };
            let (p, i) = (pdim(&m, DIM_BOUND)?, idim(&m, DIM_BOUND)?);
            let (proj, inj) = (is_projective(&m)?, is_injective(&m)?);
            ctx.emit(
                json!({
                    "valid": true, "dims": m.dims(), "total_dim": m.total_dim(), "indecomposable": indec,
                    "projective": proj, "injective": inj, "pdim": p.to_string(), "idim": i.to_string(),
                }),
                || {
                    format!(
                        "valid module, dims {}\nindecomposable: {}\nprojective: {proj}, injective: {inj}\npdim {p}, idim {i}",
                        dims(m.dims()),
                        indec.as_bool().map(|b| b.to_string()).unwrap_or_else(|| indec.to_string())
                    )
                },
            );
            Ok(Verdict::Pass)
        }
        Command::Hom { alg, m, n } => {
            let a = ctx.algebra(&alg)?;
            let d = hom_dim(&ctx.module(&a, &m)?, &ctx.module(&a, &n)?)?;
            ctx.emit(json!({"hom_dim": d}), || format!("dim Hom = {d}"));
            Ok(Verdict::Pass)
        }
        Command::Ext { alg, w, u } => {
            let a = ctx.algebra(&alg)?;
            let d = ext_dim(&ctx.module(&a, &w)?, &ctx.module(&a, &u)?)?;
            ctx.emit(json!({"ext1_dim": d}), || format!("dim Ext^1(W, U) = {d}"));
            Ok(Verdict::Pass)
        }
        Command::Tau { alg, m } => {
            let a = ctx.algebra(&alg)?;
            let t = ar_translate(&ctx.module(&a, &m)?)?;
            ctx.emit(
                json!({"dims": t.dims(), "module": ModuleFile::describe(&t)}),
                || {
                    format!(
                        "tau M has dims {}\n{}",
                        dims(t.dims()),
                        serde_json::to_string(&ModuleFile::describe(&t))
                            .expect("modules serialize")
                    )
                },
            );
            Ok(Verdict::Pass)
        }
        Command::Tilting(TiltingCmd::Check { alg, summands }) => {
            let a = ctx.algebra(&alg)?;
            let ms = summands
                .iter()
                .map(|p| ctx.module(&a, p))
                .collect::<Result<Vec<_>>>()?;
            let r = match check_tilting(&ms) {
                Ok(r) => r,
                Err(Error::NotMultiplicityFree(i, j)) => {
                    let msg = format!("summands {} and {} are isomorphic", i + 1, j + 1);
                    ctx.emit(json!({"multiplicity_free": false, "reason": msg}), || {
                        format!("not multiplicity free: {msg}")
                    });
                    return Ok(Verdict::Fail);
                }
                Err(e) => return Err(e.into()),
            };
            let ok = r.tilting || r.cotilting;
            ctx.emit(serde_json::to_value(&r)?, || {
                let pd: Vec<String> = r.pdims.iter().map(ToString::to_string).collect();
                let id: Vec<String> = r.idims.iter().map(ToString::to_string).collect();
                let ext = match r.ext_offending {
                    None => "Ext^1(T, T) = 0".to_string(),
                    Some((i, j)) => format!("Ext^1(T{}, T{}) != 0", i + 1, j + 1),
                };
                format!(
                    "pdims [{}], idims [{}]\n{ext}\n{} summands for {} simples\nverdict: {:?}",
                    pd.join(", "),
                    id.join(", "),
                    r.summand_count,
                    r.simple_count,
                    r.verdict
                )
            });
            Ok(if ok { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Fsets(FsetsArgs { alg, x, y }) => {
            let a = ctx.algebra(&alg)?;
            let xs = x
                .iter()
                .map(|p| ctx.module(&a, p))
                .collect::<Result<Vec<_>>>()?;
            let ys = y
                .iter()
                .map(|p| ctx.module(&a, p))
                .collect::<Result<Vec<_>>>()?;
            let f = compute_f_sets(&xs, &ys)?;
            let file = FamilyFile::describe(&f);
            let evidence: Vec<Vec<Value>> = (0..f.n())
                .map(|i| {
                    (0..f.n())
                        .map(|j| {
                            serde_json::to_value(f.evidence(i, j)).expect("evidence serializes")
                        })
                        .collect()
                })
                .collect();
            ctx.emit(
                json!({"n": file.n, "F": file.sets, "evidence": evidence}),
                || {
                    file.sets
                        .iter()
                        .enumerate()
                        .map(|(i, s)| {
                            let items: Vec<String> = s.iter().map(usize::to_string).collect();
                            format!("F({}) = {{{}}}", i + 1, items.join(","))
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(Verdict::Pass)
        }
        Command::Bijection(cmd) => {
            let (path, all) = match &cmd {
                BijectionCmd::Find { family } => (family, false),
                BijectionCmd::Enumerate { family } => (family, true),
            };
            let f = from_json::<FamilyFile>(&ctx.read(path)?, &path.display().to_string())?
                .build()
                .with_context(|| format!("{}: invalid family", path.display()))?;
            if all {
                let perms = enumerate_permutations(&f)?;
                ctx.emit(
                    json!({"count": perms.len(), "permutations": perms.iter().map(bijection_json).collect::<Vec<_>>()}),
                    || {
                        let mut lines: Vec<String> = perms.iter().map(SummandBijection::cycles).collect();
                        lines.push(format!("{} permutation(s)", perms.len()));
                        lines.join("\n")
                    },
                );
                return Ok(if perms.is_empty() {
                    Verdict::Fail
                } else {
                    Verdict::Pass
                });
            }
            match find_permutation(&f) {
                Ok(b) => {
                    ctx.emit(bijection_json(&b), || b.cycles());
                    Ok(Verdict::Pass)
                }
                Err(Error::HallViolation(s)) => {
                    let blocking: Vec<usize> = s.iter().map(|i| i + 1).collect();
                    ctx.emit(json!({"hall_violation": blocking}), || {
                        format!("no permutation: Hall condition fails on {blocking:?}")
                    });
                    Ok(Verdict::Fail)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Witness { alg, w, u, sweep } => {
            let a = ctx.algebra(&alg)?;
            let (wm, um) = (ctx.module(&a, &w)?, ctx.module(&a, &u)?);
            let wit = match build_witness(&um, &wm) {
                Ok(x) => x,
                Err(Error::NoExtension) => {
                    ctx.emit(json!({"ext1_dim": 0}), || {
                        "Ext^1(W, U) = 0: every sequence splits".into()
                    });
                    return Ok(Verdict::Fail);
                }
                Err(e) => return Err(e.into()),
            };
            let exact = wit.sequence.check_exact();
            let mut classes = Vec::new();
            if let Some(b) = sweep {
                for c in sweep_ext_classes(&um, &wm, b)? {
                    let report = analyze_middle(&c.middle, None)?;
                    classes.push(json!({
                        "split": c.split,
                        "dims": c.middle.dims(),
                        "summand_dims": report.info.iter().map(|s| s.dims.clone()).collect::<Vec<_>>(),
                        "coefficients": c.coefficients,
                    }));
                }
            }
            let summands: Vec<Value> = wit
                .middle
                .info
                .iter()
                .map(|s| serde_json::to_value(s).expect("serializes"))
                .collect();
            ctx.emit(
                json!({
                    "ext1_dim": wit.ext_dim,
                    "non_split": wit.sequence.non_split,
                    "exactness": {
                        "valid_middle": exact.valid_middle,
                        "maps_are_homomorphisms": exact.maps_are_homomorphisms,
                        "dims_add": exact.dims_add,
                        "composite_zero": exact.composite_zero,
                        "inclusion_injective": exact.inclusion_injective,
                        "projection_surjective": exact.projection_surjective,
                    },
                    "middle": ModuleFile::describe(&wit.sequence.v),
                    "middle_summands": summands,
                    "ar_status": wit.ar_status,
                    "sweep": sweep.map(|_| classes.clone()),
                }),
                || {
                    let mut out = format!(
                        "dim Ext^1(W, U) = {}\n0 -> U {} -> V {} -> W {} -> 0, exact: {}, non-split: {}\nV decomposes as:",
                        wit.ext_dim,
                        dims(um.dims()),
                        dims(wit.sequence.v.dims()),
                        dims(wm.dims()),
                        exact.is_exact(),
                        wit.sequence.non_split
                    );
                    for s in &wit.middle.info {
                        out.push_str(&format!(
                            "\n  {}{}{}",
                            dims(&s.dims),
                            if s.projective { " projective" } else { "" },
                            if s.injective { " injective" } else { "" }
                        ));
                    }
                    out.push_str(&format!("\nAR status: {}", json!(wit.ar_status).as_str().unwrap_or_default()));
                    for c in &classes {
                        let parts: Vec<String> = c["summand_dims"]
                            .as_array()
                            .into_iter()
                            .flatten()
                            .map(|d| d.to_string().replace('[', "(").replace(']', ")"))
                            .collect();
                        out.push_str(&format!(
                            "\nsweep class from {}: {}{}",
                            c["coefficients"][0],
                            parts.join(" + "),
                            if c["split"] == json!(true) { " (split)" } else { "" }
                        ));
                    }
                    out
                },
            );
            Ok(if exact.is_exact() && wit.sequence.non_split {
                Verdict::Pass
            } else {
                Verdict::Fail
            })
        }
        Command::Verify { case, all } => {
            let ids: Vec<String> = if all {
                case_ids().iter().map(|s| s.to_string()).collect()
            } else {
                case.into_iter().collect()
            };
            let mut reports = Vec::new();
            for id in &ids {
                reports.push(run_case(&load_case(id)?, ctx.seed));
            }
            let ok = reports.iter().all(VerifyReport::all_passed);
            if ctx.json {
                let v = if all {
                    serde_json::to_value(&reports)?
                } else {
                    serde_json::to_value(&reports[0])?
                };
                say(serde_json::to_string_pretty(&v)?);
            } else {
                for r in &reports {
                    say(format!(
                        "{}: {} ({} passed, {} failed)",
                        r.case, r.title, r.passed, r.failed
                    ));
                    for c in &r.results {
                        let mark = match c.status {
                            Status::Pass => "ok  ",
                            Status::Fail => "FAIL",
                            Status::Error => "ERR ",
                        };
                        let src = c.location.as_deref().or(c.oracle.as_deref()).unwrap_or("");
                        say(format!("  {mark} #{:<3} {:<22} [{src}]", c.index, c.kind));
                        if c.status != Status::Pass {
                            say(format!(
                                "         expected: {}\n         computed: {}",
                                c.expected, c.computed
                            ));
                        }
                    }
                    for n in &r.notes {
                        say(format!("  note: {n}"));
                    }
                }
            }
            Ok(if ok { Verdict::Pass } else { Verdict::Fail })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
