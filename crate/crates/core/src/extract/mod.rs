//! Event extraction: turns test scripts into GUI event sequences.
//!
//! Scripts are parsed into statements, then a def-use pass resolves each
//! action's receiver to the finder call that defined it. Scripts are
//! straight-line code, so the reaching definition of a variable at a use is
//! simply its most recent preceding assignment.

mod ingest;
mod lexer;
mod parser;
mod signatures;

use std::collections::HashMap;

use thiserror::Error;

use crate::model::{GuiEvent, ModelError};

pub use ingest::{events_json, ingest_events_json, parse_events_json};
pub use parser::{parse_script, FinderCall, Receiver, Statement, StatementKind};
pub use signatures::{ApiSignatureTable, LocatorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("line {line}: variable `{var}` is used before any assignment")]
    UnresolvedDefinition { var: String, line: usize },
    #[error("line {line}: unknown {role} API `{name}`")]
    UnknownApi {
        name: String,
        role: &'static str,
        line: usize,
    },
    #[error("line {line}: `{name}` expects {expected}")]
    Arity {
        name: String,
        expected: &'static str,
        line: usize,
    },
    #[error("line {line}: {source}")]
    Event { line: usize, source: ModelError },
    #[error("invalid API signature table: {message}")]
    InvalidTable { message: String },
}

/// An extracted event with the def-use link that produced its locator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedEvent {
    pub event: GuiEvent,
    pub kind: LocatorKind,
    /// Line of the action invocation (the use).
    pub use_line: usize,
    /// Line of the assignment that reached the use; `None` for inline finders.
    pub def_line: Option<usize>,
}

#[derive(Clone)]
struct Definition<'a> {
    line: usize,
    kind: LocatorKind,
    locator: &'a str,
}

/// One GUI event per action invocation, in program order.
pub fn extract_events(
    statements: &[Statement],
    table: &ApiSignatureTable,
) -> Result<Vec<GuiEvent>, ExtractError> {
    Ok(extract_traced(statements, table)?
        .into_iter()
        .map(|t| t.event)
        .collect())
}

/// Like [`extract_events`], also reporting the def-use link behind each event.
pub fn extract_traced(
    statements: &[Statement],
    table: &ApiSignatureTable,
) -> Result<Vec<TracedEvent>, ExtractError> {
    let mut defs: HashMap<&str, Definition> = HashMap::new();
    let mut out = Vec::new();
    for stmt in statements {
        let line = stmt.line;
        match &stmt.kind {
            StatementKind::Assign { var, finder } => {
                let kind = finder_kind(finder, table, line)?;
                defs.insert(
                    var,
                    Definition {
                        line,
                        kind,
                        locator: &finder.arg,
                    },
                );
            }
            StatementKind::Invoke {
                receiver,
                action,
                arg,
            } => {
                let (def, def_line) = match receiver {
                    Receiver::Var(var) => {
                        let def = defs.get(var.as_str()).cloned().ok_or_else(|| {
                            ExtractError::UnresolvedDefinition {
                                var: var.clone(),
                                line,
                            }
                        })?;
                        let def_line = def.line;
                        (def, Some(def_line))
                    }
                    Receiver::Inline(finder) => (
                        Definition {
                            line,
                            kind: finder_kind(finder, table, line)?,
                            locator: &finder.arg,
                        },
                        None,
                    ),
                };
                let act = table
                    .action_apis
                    .get(action)
                    .ok_or_else(|| ExtractError::UnknownApi {
                        name: action.clone(),
                        role: "action",
                        line,
                    })?;
                let input = if table.input_bearing.contains(action) {
                    Some(arg.clone().ok_or_else(|| ExtractError::Arity {
                        name: action.clone(),
                        expected: "one string argument",
                        line,
                    })?)
                } else if table.argument_apis.contains(action) {
                    if arg.is_none() {
                        return Err(ExtractError::Arity {
                            name: action.clone(),
                            expected: "one string argument",
                            line,
                        });
                    }
                    None
                } else {
                    if arg.is_some() {
                        return Err(ExtractError::Arity {
                            name: action.clone(),
                            expected: "no arguments",
                            line,
                        });
                    }
                    None
                };
                let event = GuiEvent::new(def.locator, act.clone(), input)
                    .map_err(|source| ExtractError::Event { line, source })?;
                out.push(TracedEvent {
                    event,
                    kind: def.kind,
                    use_line: line,
                    def_line,
                });
            }
        }
    }
    Ok(out)
}

fn finder_kind(
    finder: &FinderCall,
    table: &ApiSignatureTable,
    line: usize,
) -> Result<LocatorKind, ExtractError> {
    table
        .finder_apis
        .get(&finder.api)
        .copied()
        .ok_or_else(|| ExtractError::UnknownApi {
            name: finder.api.clone(),
            role: "finder",
            line,
        })
}

/// Parses and extracts in one step with the given table.
pub fn extract_script(source: &str, table: &ApiSignatureTable) -> Result<Vec<GuiEvent>, crate::Error> {
    let statements = parse_script(source)?;
    Ok(extract_events(&statements, table)?)
}
