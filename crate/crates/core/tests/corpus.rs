use std::time::Instant;

use quiver_tilt::corpus::{
    case_ids, load_case, load_case_from_str, run_case, ModuleDef, Status, VerifyReport,
};
use quiver_tilt::modrep::DEFAULT_SEED;

fn report_failures(r: &VerifyReport) -> Vec<String> {
    r.results
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| {
            format!(
                "{} #{} {}: expected {} / computed {}",
                r.case, c.index, c.kind, c.expected, c.computed
            )
        })
        .collect()
}

#[test]
fn every_case_passes() {
    let mut failures = Vec::new();
    for id in case_ids() {
        let t = Instant::now();
        let r = run_case(&load_case(id).unwrap(), DEFAULT_SEED);
        println!(
            "{id}: {} passed, {} failed in {:.2?}",
            r.passed,
            r.failed,
            t.elapsed()
        );
        failures.extend(report_failures(&r));
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reports_round_trip_through_json() {
    for id in ["a3-line", "sdr-unique"] {
        let r = run_case(&load_case(id).unwrap(), DEFAULT_SEED);
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: VerifyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.schema_version, 1);
        assert_eq!(
            r.results.iter().map(|c| c.index).collect::<Vec<_>>(),
            (1..=r.results.len()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn runs_are_deterministic() {
    let case = load_case("d4-star").unwrap();
    assert_eq!(run_case(&case, 7), run_case(&case, 7));
}

/// Names whose definition depends on `name`, including `name`.
fn dependents(case: &quiver_tilt::corpus::CorpusCase, name: &str) -> Vec<String> {
    let mut out = vec![name.to_string()];
    loop {
        let before = out.len();
        for (k, m) in &case.modules {
            let uses = match &m.def {
                ModuleDef::Sum { sum } => sum.iter().any(|s| out.contains(s)),
                ModuleDef::Tau { tau } => out.contains(tau),
                _ => false,
            };
            if uses && !out.contains(k) {
                out.push(k.clone());
            }
        }
        if out.len() == before {
            return out;
        }
    }
}

/// Zeroing any nonzero matrix of any explicit module makes some claim
/// about that module fail. Only claims that mention the module (directly,
/// through a family, or through a derived module) are rerun, which keeps
/// this fast; each claim is evaluated independently, so a failure here is
/// a failure of the full run.
#[test]
fn every_corrupted_matrix_is_reported() {
    let mut silent = Vec::new();
    let mut checked = 0;
    for id in case_ids() {
        let case = load_case(id).unwrap();
        for (name, m) in &case.modules {
            let ModuleDef::Explicit(file) = &m.def else {
                continue;
            };
            let deps = dependents(&case, name);
            let families: Vec<&String> = case
                .families
                .iter()
                .filter(|(_, v)| v.iter().any(|n| deps.contains(n)))
                .map(|(k, _)| k)
                .collect();
            for (label, mat) in &file.maps {
                let nonzero = mat
                    .iter()
                    .flatten()
                    .any(|e| serde_json::to_string(e).unwrap().trim_matches('"') != "0");
                if !nonzero {
                    continue;
                }
                let mut bad = case.clone();
                let ModuleDef::Explicit(f) = &mut bad.modules.get_mut(name).unwrap().def else {
                    unreachable!()
                };
                for row in f.maps.get_mut(label).unwrap() {
                    for e in row {
                        *e = quiver_tilt::io::ScalarText::Int(0);
                    }
                }
                bad.claims.retain(|c| {
                    let text = serde_json::to_string(&c.check).unwrap();
                    deps.iter()
                        .chain(families.iter().copied())
                        .any(|n| text.contains(&format!("\"{n}\"")))
                });
                let r = run_case(&bad, DEFAULT_SEED);
                checked += 1;
                if r.failed == 0 {
                    silent.push(format!("{id}: {name}.{label}"));
                }
            }
        }
    }
    assert!(checked > 50, "only {checked} corruptions tried");
    assert!(silent.is_empty(), "corruptions not reported: {silent:?}");
}

#[test]
fn corrupted_case_text_is_rejected_or_reported() {
    let text = quiver_tilt::corpus::case_text("a3-line").unwrap();
    assert!(load_case_from_str(&text.replace("\"claims\"", "\"claimz\"")).is_err());
    let broken = text.replace("\"maps\": {\"b\": [[1]]}}", "\"maps\": {\"b\": [[1, 0]]}}");
    assert_ne!(broken, text);
    let r = run_case(&load_case_from_str(&broken).unwrap(), DEFAULT_SEED);
    assert!(r.results.iter().any(|c| c.status == Status::Error), "{r:?}");
}
