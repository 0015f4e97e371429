use std::path::Path;

use crate::error::{from_json_str, Error};
use crate::model::TestCase;

/// Reads a test in the events JSON form:
/// `{"app_id", "test_id", "role", "events": [{"locator", "action", "input"?}]}`.
pub fn ingest_events_json(path: &Path) -> Result<TestCase, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_events_json(&text, path)
}

/// Parses events JSON text; `origin` names the source in diagnostics.
pub fn parse_events_json(text: &str, origin: &Path) -> Result<TestCase, Error> {
    from_json_str(text, origin)
}

/// Serializes a test in the events JSON form (pretty-printed, trailing newline).
pub fn events_json(test: &TestCase) -> String {
    let mut out = serde_json::to_string_pretty(test).expect("test case serializes");
    out.push('\n');
    out
}
