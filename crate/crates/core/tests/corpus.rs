mod common;

use std::fs;
use std::path::Path;

use uireuse::corpus::{guimap_key, validate_corpus, Corpus, Violation};
use uireuse::Error;

use common::*;

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let dest = to.join(entry.file_name());
        if entry.path().is_dir() {
            copy_dir(&entry.path(), &dest);
        } else {
            fs::copy(entry.path(), dest).unwrap();
        }
    }
}

fn broken_copy(name: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&fixture(name), dir.path());
    dir
}

#[test]
fn fixtures_are_valid() {
    for name in FIXTURES {
        let corpus = Corpus::load(&fixture(name)).unwrap();
        let report = validate_corpus(&corpus);
        assert!(report.is_ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn script_tests_are_extracted_on_load() {
    let corpus = Corpus::load(&fixture("news-mini")).unwrap();
    let search = corpus.test("dailynews", "search").unwrap();
    let locators: Vec<&str> = search.events().iter().map(|e| e.locator()).collect();
    assert_eq!(locators, ["menu_search", "search_box", "search_go", "//results/item[1]"]);
    assert_eq!(search.events()[1].input(), Some("election"));
    assert_eq!(corpus.test_ids("newsly").collect::<Vec<_>>(), ["browse", "search"]);
    assert!(corpus.guimap("manual", "dailynews", "newsly", "search").is_some());
}

#[test]
fn save_then_load_is_lossless() {
    let corpus = Corpus::load(&fixture("news-mini")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    corpus.save(dir.path()).unwrap();
    let again = Corpus::load(dir.path()).unwrap();
    assert_eq!(again, corpus);
    assert_eq!(again.digest(), corpus.digest());
}

#[test]
fn missing_directory_is_an_io_error() {
    let err = Corpus::load(Path::new("/nonexistent/corpus")).unwrap_err();
    assert!(err.is_io(), "{err}");
}

#[test]
fn malformed_json_names_the_field() {
    let dir = broken_copy("signin");
    let path = dir.path().join("tests/wish/signin.events.json");
    let text = fs::read_to_string(&path).unwrap().replace("\"send_keys\",\n      \"input\": \"hunter2\"", "\"send_keys\"");
    fs::write(&path, text).unwrap();
    let err = Corpus::load(dir.path()).unwrap_err();
    assert!(matches!(err, Error::Schema { .. }), "{err}");
    assert!(err.to_string().contains("events[1]"), "{err}");
}

#[test]
fn cross_file_violations_are_reported() {
    let dir = broken_copy("signin");
    let canmap = dir.path().join("canonical/etsy.canmap.json");
    let text = fs::read_to_string(&canmap).unwrap().replace("\"b2-1\": \"choose_email_sign_in\",", "");
    fs::write(&canmap, text).unwrap();
    let model = dir.path().join("apps/wish.model.json");
    let text = fs::read_to_string(&model).unwrap().replace("\"next_activity\": \"home\"", "\"next_activity\": \"nowhere\"");
    fs::write(&model, text).unwrap();
    fs::rename(
        dir.path().join("tests/wish/signin.events.json"),
        dir.path().join("tests/wish/login.events.json"),
    )
    .unwrap();

    let report = validate_corpus(&Corpus::load(dir.path()).unwrap());
    let kinds: Vec<String> = report
        .violations
        .iter()
        .map(|v| serde_json::to_value(v).unwrap()["kind"].as_str().unwrap().to_string())
        .collect();
    assert!(!report.is_ok());
    for kind in ["uncanonicalized_event", "unknown_activity", "file_id_mismatch"] {
        assert!(kinds.iter().any(|k| k == kind), "{kind} missing from {kinds:?}");
    }
    assert!(report.violations.iter().any(|v| v.to_string().contains("b2-1")));
}

#[test]
fn duplicate_canonical_keys_fail_to_load() {
    let dir = broken_copy("signin");
    let canmap = dir.path().join("canonical/wish.canmap.json");
    fs::write(&canmap, r#"{"app_id":"wish","entries":{"a1-1":"email","a1-1":"password"}}"#).unwrap();
    let err = Corpus::load(dir.path()).unwrap_err();
    assert!(err.to_string().contains("duplicate locator"), "{err}");
    assert!(!err.is_io());
}

#[test]
fn tests_of_unknown_apps_are_reported() {
    let dir = broken_copy("signin");
    fs::create_dir_all(dir.path().join("tests/ghost")).unwrap();
    fs::write(dir.path().join("tests/ghost/t.script"), "findElementById(\"x\").click()\n").unwrap();
    let report = validate_corpus(&Corpus::load(dir.path()).unwrap());
    assert!(
        report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::UnknownApp { app_id, .. } if app_id == "ghost")),
        "{:?}",
        report.violations
    );
    assert_eq!(guimap_key("a", "b", "t1"), "a__b__t1");
}
