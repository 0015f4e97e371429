//! Recursive-descent parser for the test script mini-language.
//!
//! ```text
//! file      := (line NEWLINE)*
//! line      := comment | assign | invoke | ε
//! comment   := "#" any-text
//! assign    := "let" IDENT "=" finder
//! finder    := IDENT "(" STRING ")"
//! invoke    := (IDENT | finder) "." IDENT "(" STRING? ")"
//! ```
//!
//! The parser accepts any API name in finder and action position; which names
//! are finders or actions, and how many arguments they take, is decided by the
//! [`ApiSignatureTable`](super::ApiSignatureTable) during extraction.

use serde::{Deserialize, Serialize};

use super::lexer::{tokenize_line, Token, TokenKind};
use super::ParseError;

/// A finder call such as `findElementById("email")`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinderCall {
    pub api: String,
    pub arg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Receiver {
    Var(String),
    Inline(FinderCall),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementKind {
    Assign {
        var: String,
        finder: FinderCall,
    },
    Invoke {
        receiver: Receiver,
        action: String,
        arg: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    /// 1-based source line.
    pub line: usize,
    pub kind: StatementKind,
}

/// Parses a whole script into its statements, dropping comments and blank lines.
pub fn parse_script(source: &str) -> Result<Vec<Statement>, ParseError> {
    let mut statements = Vec::new();
    for (idx, raw) in source.split('\n').enumerate() {
        let line = idx + 1;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = text.trim_start_matches([' ', '\t']);
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens = tokenize_line(text, line)?;
        let kind = LineParser { tokens: &tokens, pos: 0 }.statement()?;
        statements.push(Statement { line, kind });
    }
    Ok(statements)
}

struct LineParser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl LineParser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error(&self, expected: &str) -> ParseError {
        let token = self.peek();
        ParseError {
            line: token.line,
            column: token.column,
            found: token.kind.to_string(),
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<(), ParseError> {
        if self.peek().kind == kind {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String, ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                let name = name.clone();
                self.bump();
                Ok(name)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        match &self.peek().kind {
            TokenKind::Str(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("a string literal")),
        }
    }

    fn statement(mut self) -> Result<StatementKind, ParseError> {
        let kind = if self.peek().kind == TokenKind::Let {
            self.bump();
            self.assign()?
        } else {
            self.invoke()?
        };
        if self.peek().kind != TokenKind::End {
            return Err(self.error("end of line"));
        }
        Ok(kind)
    }

    fn assign(&mut self) -> Result<StatementKind, ParseError> {
        let var = self.ident("a variable name")?;
        self.expect(TokenKind::Eq, "`=`")?;
        let api = self.ident("a finder call")?;
        let finder = self.finder_args(api)?;
        Ok(StatementKind::Assign { var, finder })
    }

    fn finder_args(&mut self, api: String) -> Result<FinderCall, ParseError> {
        self.expect(TokenKind::LParen, "`(`")?;
        let arg = self.string()?;
        self.expect(TokenKind::RParen, "`)`")?;
        Ok(FinderCall { api, arg })
    }

    fn invoke(&mut self) -> Result<StatementKind, ParseError> {
        let head = self.ident("`let`, a variable or a finder call")?;
        let receiver = if self.peek().kind == TokenKind::LParen {
            Receiver::Inline(self.finder_args(head)?)
        } else {
            Receiver::Var(head)
        };
        self.expect(TokenKind::Dot, "`.`")?;
        let action = self.ident("an action name")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let arg = match self.peek().kind {
            TokenKind::Str(_) => Some(self.string()?),
            _ => None,
        };
        self.expect(TokenKind::RParen, "`)` or a string literal")?;
        Ok(StatementKind::Invoke {
            receiver,
            action,
            arg,
        })
    }
}
