//! Acceptance run: one PASS or FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Child, Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use oak_core::assessment::{foca_score, grade, logistic, FocaGoals, FocaInput};
use oak_core::browser::{access_record, generate_sparql, parse_search, AccessMatrix};
use oak_core::fixtures::{
    classifier_010, desk_repository, CLASSIFIER_010_TTL, FOCA_TABLE_JSON, NITROGEN_MODELS_RQ, SAMPLE_QUERIES,
};
use oak_core::kmap::{builtin_ontology, StateScalar, Suffix, TransformationId};
use oak_core::rdf::{parse_turtle, serialize_turtle, Term};
use oak_core::repository::{import_kr, new_repository};
use oak_core::sparql::{evaluate, parse_query};
use oak_core::vocab::agrikmaps;
use oak_core::wrapper::{wrap, wrap_json, WrapError};

use common::{arb_case, arb_store, core_triples, multiset, oracle, pattern_cases, table_multiset, Short};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn turtle_round_trip() -> Outcome {
    let start = Instant::now();
    let doc = parse_turtle(CLASSIFIER_010_TTL).map_err(|e| e.to_string())?;
    check(doc.triples.len() == 20, || {
        format!("fixture has {} triples", doc.triples.len())
    })?;
    let store = doc.into_store();
    let text = serialize_turtle(&store);
    let again = parse_turtle(&text).map_err(|e| e.to_string())?.into_store();
    check(
        store.iter().collect::<BTreeSet<_>>() == again.iter().collect::<BTreeSet<_>>(),
        || "fixture changed on round trip".into(),
    )?;
    run_cases(200, arb_store(500), |s| {
        let once = serialize_turtle(&s);
        let back = parse_turtle(&once)
            .map_err(|e| TestCaseError::fail(e.to_string()))?
            .into_store();
        if back.len() != s.len() || serialize_turtle(&back) != once {
            return Err(TestCaseError::fail("not byte-stable"));
        }
        Ok(())
    })?;
    let secs = start.elapsed().as_secs_f64();
    check(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("20 fixture triples, 200 random stores, {secs:.2} s"))
}

fn transformation_table() -> Outcome {
    let o = builtin_ontology();
    let id = TransformationId::new("Transformation_SoilPH_Tier5").map_err(|e| e.to_string())?;
    let t = o.transformation(&id).ok_or("Transformation_SoilPH_Tier5 missing")?;
    let expected = [
        (4.5, "Strongly acidic"),
        (5.0, "Strongly acidic"),
        (6.0, "Acidic"),
        (7.0, "Neutral"),
        (8.0, "Alkaline"),
        (12.0, "Strongly alkaline"),
    ];
    for (x, label) in expected {
        let got = t.apply(x).map_err(|e| e.to_string())?;
        check(got == StateScalar::label(label), || format!("pH {x} gave {got}"))?;
    }
    Ok("6/6 pH values".into())
}

fn sparql_oracle() -> Outcome {
    let start = Instant::now();
    run_cases(1000, arb_case(), |(store, q)| {
        if table_multiset(&evaluate(&store, &q)) != multiset(&oracle(&store, &q)) {
            return Err(TestCaseError::fail("solutions differ from brute force"));
        }
        Ok(())
    })?;
    let (_, desk) = desk_repository();
    let table = evaluate(&desk, &parse_query(NITROGEN_MODELS_RQ).map_err(|e| e.to_string())?);
    let want = Term::named(agrikmaps("Classifier_010"));
    check(table.values("subject") == vec![&want], || {
        format!("nitrogen query gave {:?}", table.rows)
    })?;
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, || format!("took {secs:.2} s"))?;
    Ok(format!("1000 cases, nitrogen query -> Classifier_010, {secs:.2} s"))
}

fn wrapper_conformance() -> Outcome {
    let o = builtin_ontology();
    for (task, json, expected) in pattern_cases() {
        let kr = wrap_json(json, &o, Suffix::new(1)).map_err(|e| format!("{task}: {e}"))?;
        let expected: BTreeSet<Short> = expected.into_iter().collect();
        let got = core_triples(&kr);
        check(got == expected, || format!("{task}: {got:?}"))?;
    }
    let d = classifier_010();
    let kr = wrap(&d, &o).map_err(|e| e.to_string())?;
    check(kr.grade == 60 && grade(&d).total == 60, || {
        format!("grade {}", kr.grade)
    })?;
    let mut store = new_repository(&o);
    import_kr(&mut store, &kr).map_err(|e| e.to_string())?;
    let mut thin = d.clone();
    thin.conditions.clear();
    thin.targets.clear();
    thin.evaluation.clear();
    let why = match wrap(&thin, &o) {
        Err(e @ (WrapError::BelowThreshold(_) | WrapError::InvalidDescriptor(_))) => e.to_string(),
        Err(e) => return Err(format!("thin descriptor failed for another reason: {e}")),
        Ok(_) => return Err("descriptor without principal data was accepted".into()),
    };
    Ok(format!(
        "4 tasks conform, Classifier_010 grade 60 imported, thin descriptor rejected ({why})"
    ))
}

fn foca() -> Outcome {
    let full = |n| vec![Some(100.0); n];
    let perfect = FocaGoals {
        g1: full(3),
        g2: full(3),
        g3: full(2),
        g4: full(2),
        g5: full(3),
    };
    let s = foca_score(&FocaInput::new(perfect.clone())).map_err(|e| e.to_string())?;
    let want = 1.0 / (1.0 + (-6.90f64).exp());
    check((s.mu - want).abs() < 1e-9, || format!("mu {}", s.mu))?;

    let mut base = FocaInput::new(perfect);
    base.sb = 0;
    let reference = foca_score(&base).map_err(|e| e.to_string())?.mu;
    run_cases(
        200,
        proptest::collection::vec(proptest::option::of(0.0f64..=100.0), 0..6),
        |g1| {
            let mut p = base.clone();
            p.goals.g1 = g1;
            let mu = foca_score(&p).map_err(|e| TestCaseError::fail(e.to_string()))?.mu;
            if mu.to_bits() != reference.to_bits() {
                return Err(TestCaseError::fail("Sb = 0 but G1 changed mu"));
            }
            Ok(())
        },
    )?;

    let goals: FocaGoals = serde_json::from_str(FOCA_TABLE_JSON).map_err(|e| e.to_string())?;
    let t = foca_score(&FocaInput::new(goals)).map_err(|e| e.to_string())?;
    check((t.mu - logistic(5.65)).abs() < 1e-9, || format!("table mu {}", t.mu))?;
    Ok(format!(
        "perfect mu {:.9}, Sb=0 invariant, table mu {:.9}",
        s.mu, t.mu
    ))
}

fn access_matrix() -> Outcome {
    let (o, store) = desk_repository();
    let start = Instant::now();
    let mut m = AccessMatrix::default();
    for (i, q) in SAMPLE_QUERIES.iter().enumerate() {
        let intent = parse_search(q, &o).map_err(|e| format!("Q{}: {e}", i + 1))?;
        let (_, text) = generate_sparql(&intent).map_err(|e| format!("Q{}: {e}", i + 1))?;
        let parsed = parse_query(&text).map_err(|e| format!("Q{}: {e}", i + 1))?;
        m.queries
            .push((format!("Q{}", i + 1), access_record(&store, &o, &parsed)));
    }
    let secs = start.elapsed().as_secs_f64();
    check(m.is_complete(), || {
        format!("missing {:?} {:?}", m.missing_elements(), m.missing_roles())
    })?;
    check(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("5 elements and 8 roles covered, {secs:.3} s"))
}

struct Server(Child);

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

fn oak(store: &Path) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_oak"));
    c.arg("--store").arg(store);
    c
}

fn end_to_end() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = dir.path().join("oak-store.ttl");
    let descriptor = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/classifier_010.json");

    let out = oak(&store)
        .args(["wrap", "--import"])
        .arg(&descriptor)
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;

    let child = oak(&store)
        .args(["serve", "--port", "0"])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| e.to_string())?;
    let mut server = Server(child);
    let mut line = String::new();
    BufReader::new(server.0.stdout.take().ok_or("no stdout")?)
        .read_line(&mut line)
        .map_err(|e| e.to_string())?;
    let url = line
        .trim()
        .strip_prefix("listening on ")
        .ok_or_else(|| format!("unexpected banner {line:?}"))?
        .to_string();

    let deadline = Instant::now() + Duration::from_secs(10);
    let out = loop {
        let out = oak(&store)
            .args(["search", "--json", "--server", &url, "predict based on Nitrogen"])
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.success() || Instant::now() > deadline {
            break out;
        }
        std::thread::sleep(Duration::from_millis(100));
    };
    check(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let ids: Vec<&str> = v["cards"]
        .as_array()
        .ok_or("no cards")?
        .iter()
        .filter_map(|c| c["id"].as_str())
        .collect();
    check(ids == ["Classifier_010"], || format!("cards {ids:?}"))?;
    drop(server);
    Ok(format!("wrap --import, serve, search --server {url} -> Classifier_010"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("turtle round-trip", turtle_round_trip),
        ("transformation table", transformation_table),
        ("sparql oracle equivalence", sparql_oracle),
        ("wrapper pattern conformance", wrapper_conformance),
        ("foca formula", foca),
        ("access matrix", access_matrix),
        ("end-to-end", end_to_end),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
