use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Let,
    Ident(String),
    Str(String),
    Eq,
    LParen,
    RParen,
    Dot,
    /// End of the current line.
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Let => f.write_str("`let`"),
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::Eq => f.write_str("`=`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::End => f.write_str("end of line"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Tokenizes one source line. Columns are 1-based character offsets.
/// The returned list always ends with an `End` token.
pub(crate) fn tokenize_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = |kind| Token { kind, line, column };
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '=' => {
                tokens.push(simple(TokenKind::Eq));
                i += 1;
            }
            '(' => {
                tokens.push(simple(TokenKind::LParen));
                i += 1;
            }
            ')' => {
                tokens.push(simple(TokenKind::RParen));
                i += 1;
            }
            '.' => {
                tokens.push(simple(TokenKind::Dot));
                i += 1;
            }
            '"' => {
                let (value, next) = read_string(&chars, i, line)?;
                tokens.push(simple(TokenKind::Str(value)));
                i = next;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let kind = if word == "let" {
                    TokenKind::Let
                } else {
                    TokenKind::Ident(word)
                };
                tokens.push(simple(kind));
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    found: format!("character {other:?}"),
                    expected: "a statement token".into(),
                })
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::End,
        line,
        column: chars.len() + 1,
    });
    Ok(tokens)
}

/// Reads a double-quoted string starting at `start`; supports `\"` and `\\`.
fn read_string(chars: &[char], start: usize, line: usize) -> Result<(String, usize), ParseError> {
    let mut out = String::new();
    let mut i = start + 1;
    while i < chars.len() {
        match chars[i] {
            '"' => return Ok((out, i + 1)),
            '\\' => match chars.get(i + 1) {
                Some('"') => {
                    out.push('"');
                    i += 2;
                }
                Some('\\') => {
                    out.push('\\');
                    i += 2;
                }
                Some(other) => {
                    return Err(ParseError {
                        line,
                        column: i + 1,
                        found: format!("escape \\{other}"),
                        expected: r#"`\"` or `\\`"#.into(),
                    })
                }
                None => break,
            },
            c => {
                out.push(c);
                i += 1;
            }
        }
    }
    Err(ParseError {
        line,
        column: start + 1,
        found: "unterminated string".into(),
        expected: "closing `\"`".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize_line(text, 1).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn tokens_of_an_assignment() {
        assert_eq!(
            kinds(r#"let e = findElementById("email")"#),
            vec![
                TokenKind::Let,
                TokenKind::Ident("e".into()),
                TokenKind::Eq,
                TokenKind::Ident("findElementById".into()),
                TokenKind::LParen,
                TokenKind::Str("email".into()),
                TokenKind::RParen,
                TokenKind::End,
            ]
        );
    }

    #[test]
    fn string_escapes() {
        assert_eq!(
            kinds(r#""a\"b\\c""#),
            vec![TokenKind::Str(r#"a"b\c"#.into()), TokenKind::End]
        );
        let err = tokenize_line(r#"x.sendKeys("abc"#, 3).unwrap_err();
        assert_eq!((err.line, err.column), (3, 12));
        assert!(tokenize_line(r#""\n""#, 1).is_err());
    }

    #[test]
    fn letters_prefixed_by_let_are_identifiers() {
        assert_eq!(kinds("letter"), vec![TokenKind::Ident("letter".into()), TokenKind::End]);
    }

    #[test]
    fn stray_characters_rejected_with_column() {
        let err = tokenize_line("e.click() # trailing", 2).unwrap_err();
        assert_eq!(err.column, 11);
    }
}
