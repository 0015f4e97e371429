use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn fruiter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fruiter")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_ok_and_broken() {
    let out = fruiter(&["validate", p(&fixture("signin"))]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).starts_with("ok: 2 apps"));

    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("apps")).unwrap();
    std::fs::write(
        dir.path().join("apps/x.model.json"),
        r#"{"app_id":"x","main_activity":"M","activities":["M"],"events_by_activity":{"M":[]}}"#,
    )
    .unwrap();
    let out = fruiter(&["validate", p(dir.path())]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("x"), "{out:?}");

    assert_eq!(code(&fruiter(&["validate", "/no/such/corpus"])), 2);
}

#[test]
fn extract_prints_events() {
    let out = fruiter(&["extract", p(&fixture("news-mini/tests/dailynews/search.script"))]);
    assert_eq!(code(&out), 0, "{out:?}");
    let events: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(events.as_array().unwrap().len(), 4);
    assert_eq!(events[1]["input"], "election");

    let out = fruiter(&[
        "extract",
        p(&fixture("news-mini/tests/dailynews/search.script")),
        "--app-id",
        "dailynews",
        "--test-id",
        "search",
    ]);
    let test: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(test["role"], "source");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.script");
    std::fs::write(&bad, "let e = findElementById(\"x\")\ne.click(\n").unwrap();
    let out = fruiter(&["extract", p(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:9"), "{out:?}");
}

#[test]
fn extract_with_alternate_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sigs.json");
    std::fs::write(
        &table,
        r#"{"finder_apis":{"byId":"id"},"action_apis":{"tap":"click","type":"send_keys"},"input_bearing":["type"]}"#,
    )
    .unwrap();
    let script = dir.path().join("t.script");
    std::fs::write(&script, "let q = byId(\"query\")\nq.type(\"shoes\")\nbyId(\"go\").tap()\n").unwrap();
    let out = fruiter(&["extract", p(&script), "--table", p(&table)]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("\"shoes\""));
    // The default table does not know these names.
    assert_eq!(code(&fruiter(&["extract", p(&script)])), 1);
}

#[test]
fn map_then_evaluate_fidelity() {
    let corpus = fixture("signin");
    let out = fruiter(&[
        "map", "--technique", "perfect", "--threshold", "0.5", "--seed", "1", "--corpus", p(&corpus), "--source",
        "wish", "--target", "etsy", "--test", "signin",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("m.guimap.json");
    std::fs::write(&map, stdout(&out)).unwrap();
    let out = fruiter(&["evaluate", "fidelity", "--corpus", p(&corpus), "--guimap", p(&map)]);
    assert_eq!(code(&out), 0, "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["metrics"]["tp"], 3);
    assert_eq!(v["metrics"]["precision"], 1.0);

    let naive = |seed: &str| {
        stdout(&fruiter(&[
            "map", "--technique", "naive", "--threshold", "0.3", "--seed", seed, "--corpus", p(&corpus), "--source",
            "etsy", "--target", "wish", "--test", "signin",
        ]))
    };
    assert_eq!(naive("42"), naive("42"));

    let out = fruiter(&[
        "map", "--technique", "naive", "--threshold", "1.5", "--corpus", p(&corpus), "--source", "wish",
        "--target", "etsy", "--test", "signin",
    ]);
    assert_eq!(code(&out), 1);
    let out = fruiter(&["map", "--technique", "atm", "--corpus", p(&corpus)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn evaluate_utility_reports_effort() {
    let out = fruiter(&[
        "evaluate",
        "utility",
        "--transferred",
        p(&fixture("signin/tests/wish/signin.events.json")),
        "--ground-truth",
        p(&fixture("signin/tests/etsy/signin.events.json")),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // Different locators throughout: 3 substitutions and 2 insertions.
    assert_eq!(v["effort"], 5);
    assert_eq!(v["reduction"], 0.0);
}

#[test]
fn run_is_reproducible_and_reportable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let plan = fixture("news-mini/plan.json");
    assert_eq!(code(&fruiter(&["run", "--plan", p(&plan), "--out", p(&a), "--workers", "1"])), 0);
    assert_eq!(code(&fruiter(&["run", "--plan", p(&plan), "--out", p(&b), "--workers", "3"])), 0);
    for f in ["results.csv", "results.jsonl", "skipped.csv", "manifest.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let csv = std::fs::read_to_string(a.join("results.csv")).unwrap();
    assert!(csv.starts_with(
        "source_app,target_app,test_id,technique,n_src_events,n_trans_events,n_gt_events,correct,incorrect,missed,non_exist,tp,fp,tn,fn,accuracy,precision,recall,effort,reduction\n"
    ));

    let out = fruiter(&["report", "--results", p(&a.join("results.csv")), "--aggregate"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("perfect,9,precision,1.0,9,0"), "{}", stdout(&out));
    let out = fruiter(&["report", "--results", p(&a.join("results.csv")), "--correlate"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).lines().any(|l| l.starts_with('#')));
    let out = fruiter(&["report", "--results", p(&a.join("results.csv")), "--correlate", "--per-technique"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(code(&fruiter(&["report", "--results", p(&a.join("results.csv"))])), 1);
}

#[test]
fn run_from_a_manifest_of_a_synthetic_plan() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    std::fs::write(
        &plan,
        r#"{"corpus":{"synthetic":[{"category":"shop","spec":{"n_apps":3,"activities_per_app":3,
            "events_per_activity":4,"n_canonical":8,"tests_per_app":2,"test_length_range":[2,5],
            "canonical_coverage":0.8,"seed":5}}]},
            "techniques":[{"technique":"naive","seed":2},{"technique":"perfect"}]}"#,
    )
    .unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(code(&fruiter(&["run", "--plan", p(&plan), "--out", p(&a)])), 0);
    let manifest = a.join("manifest.json");
    assert_eq!(code(&fruiter(&["run", "--plan", p(&manifest), "--out", p(&b)])), 0);
    assert_eq!(
        std::fs::read(a.join("results.csv")).unwrap(),
        std::fs::read(b.join("results.csv")).unwrap()
    );
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["planned"], 3 * 3 * 2 * 2);
    assert_eq!(m["corpus_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn plan_and_io_failures_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    std::fs::write(&plan, r#"{"corpus":{"dir":"corpus"},"techniques":[]}"#).unwrap();
    // Corpus directory is missing: I/O.
    assert_eq!(code(&fruiter(&["run", "--plan", p(&plan), "--out", p(&dir.path().join("o"))])), 2);
    let signin = fixture("signin");
    std::fs::write(
        &plan,
        format!(r#"{{"corpus":{{"dir":"{}"}},"categories":[{{"name":"x","app_ids":["wish"]}}],"techniques":[]}}"#, p(&signin)),
    )
    .unwrap();
    let out = fruiter(&["run", "--plan", p(&plan), "--out", p(&dir.path().join("o"))]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no techniques"), "{out:?}");
    std::fs::write(&plan, r#"{"techniques": 3}"#).unwrap();
    assert_eq!(code(&fruiter(&["run", "--plan", p(&plan), "--out", "o"])), 1);
    assert_eq!(code(&fruiter(&["run", "--plan", "/no/plan.json", "--out", "o"])), 2);
    assert_eq!(code(&fruiter(&["frobnicate"])), 1);
    assert_eq!(code(&fruiter(&["--help"])), 0);
}

#[test]
fn gen_corpus_writes_a_valid_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"n_apps":3,"activities_per_app":3,"events_per_activity":4,"n_canonical":10,"tests_per_app":2,
            "test_length_range":[2,5],"canonical_coverage":0.5,"seed":1}"#,
    )
    .unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert_eq!(code(&fruiter(&["gen-corpus", "--spec", p(&spec), "--out", p(&a)])), 0);
    assert_eq!(code(&fruiter(&["gen-corpus", "--spec", p(&spec), "--out", p(&b)])), 0);
    assert_eq!(code(&fruiter(&["gen-corpus", "--spec", p(&spec), "--out", p(&c), "--seed", "2"])), 0);
    assert_eq!(code(&fruiter(&["validate", p(&a)])), 0);
    let read = |d: &Path| std::fs::read(d.join("tests/app00/t00.events.json")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));

    std::fs::write(&spec, r#"{"n_apps":0}"#).unwrap();
    assert_eq!(code(&fruiter(&["gen-corpus", "--spec", p(&spec), "--out", p(&a)])), 1);
}
