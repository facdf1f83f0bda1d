//! Line-oriented source format shared by presentation and representation
//! files. A source is a sequence of statements, one per line or separated by
//! `;`, each starting with a keyword. `#` starts a comment.

use std::fmt;

use super::{FreeWord, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGenerator(String),
    ZeroExponent(String),
    DuplicateGenerator(String),
    UnknownKeyword(String),
    Duplicate(String),
    Missing(String),
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Self { line, column, kind }
    }

    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self::new(line, column, ParseErrorKind::Syntax(message.into()))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            ParseErrorKind::ZeroExponent(token) => write!(f, "zero exponent in token `{token}`"),
            ParseErrorKind::DuplicateGenerator(name) => write!(f, "generator `{name}` declared twice"),
            ParseErrorKind::UnknownKeyword(kw) => write!(f, "unknown statement `{kw}`"),
            ParseErrorKind::Duplicate(what) => write!(f, "duplicate {what}"),
            ParseErrorKind::Missing(what) => write!(f, "missing {what}"),
        }
    }
}

/// A whitespace-delimited token with its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

/// One statement: a keyword followed by the rest of the statement text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement<'a> {
    pub keyword: Token<'a>,
    pub rest: Token<'a>,
}

impl<'a> Statement<'a> {
    /// Splits the statement body on whitespace.
    pub fn tokens(&self) -> Vec<Token<'a>> {
        split_tokens(self.rest.text, self.rest.line, self.rest.column)
    }
}

fn split_tokens(text: &str, line: usize, column: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (idx, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &text[s..idx], line, column: column + s });
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &text[s..], line, column: column + s });
    }
    out
}

/// Splits source text into statements, dropping comments and blank lines.
pub fn statements(source: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (line_idx, raw_line) in source.lines().enumerate() {
        let line = line_idx + 1;
        let code = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let mut offset = 0;
        for piece in code.split(';') {
            let piece_col = offset + 1;
            offset += piece.len() + 1;
            let lead = piece.len() - piece.trim_start().len();
            let body = piece.trim();
            if body.is_empty() {
                continue;
            }
            let kw_end = body.find(char::is_whitespace).unwrap_or(body.len());
            let rest_raw = &body[kw_end..];
            let rest_lead = rest_raw.len() - rest_raw.trim_start().len();
            out.push(Statement {
                keyword: Token { text: &body[..kw_end], line, column: piece_col + lead },
                rest: Token {
                    text: rest_raw.trim(),
                    line,
                    column: piece_col + lead + kw_end + rest_lead,
                },
            });
        }
    }
    out
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Parses the generator names of a `gens` statement.
pub fn parse_generators(stmt: &Statement<'_>) -> Result<Vec<String>, ParseError> {
    let tokens = stmt.tokens();
    if tokens.is_empty() {
        return Err(ParseError::syntax(stmt.rest.line, stmt.rest.column, "`gens` needs at least one name"));
    }
    let mut names: Vec<String> = Vec::with_capacity(tokens.len());
    for tok in tokens {
        if !is_identifier(tok.text) {
            return Err(ParseError::syntax(tok.line, tok.column, format!("invalid generator name `{}`", tok.text)));
        }
        if names.iter().any(|n| n == tok.text) {
            return Err(ParseError::new(tok.line, tok.column, ParseErrorKind::DuplicateGenerator(tok.text.to_string())));
        }
        names.push(tok.text.to_string());
    }
    Ok(names)
}

/// Parses one `<name>` or `<name>^<int>` token into a syllable.
pub fn parse_word_token(tok: &Token<'_>, names: &[String]) -> Result<(usize, i32), ParseError> {
    let (name, exponent) = match tok.text.split_once('^') {
        Some((name, exp)) => {
            let exponent: i32 = exp.parse().map_err(|_| {
                ParseError::syntax(tok.line, tok.column + name.len() + 1, format!("bad exponent in token `{}`", tok.text))
            })?;
            if exponent == 0 {
                return Err(ParseError::new(tok.line, tok.column, ParseErrorKind::ZeroExponent(tok.text.to_string())));
            }
            (name, exponent)
        }
        None => (tok.text, 1),
    };
    if !is_identifier(name) {
        return Err(ParseError::syntax(tok.line, tok.column, format!("malformed word token `{}`", tok.text)));
    }
    let index = names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| ParseError::new(tok.line, tok.column, ParseErrorKind::UnknownGenerator(name.to_string())))?;
    Ok((index, exponent))
}

/// Parses a whitespace-separated word; the body must not be empty.
pub fn parse_word(body: &Token<'_>, names: &[String]) -> Result<FreeWord, ParseError> {
    let tokens = split_tokens(body.text, body.line, body.column);
    if tokens.is_empty() {
        return Err(ParseError::syntax(body.line, body.column, "expected a word"));
    }
    // `1` alone spells the identity word.
    if tokens.len() == 1 && tokens[0].text == "1" {
        return Ok(FreeWord::identity());
    }
    let syllables = tokens
        .iter()
        .map(|tok| parse_word_token(tok, names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FreeWord::from_syllables(syllables))
}

/// Builds a presentation from already-split statements. Statements other
/// than `gens` and `rel` are left to the caller.
pub(crate) fn presentation_from_statements(
    stmts: &[Statement<'_>],
) -> Result<Presentation, ParseError> {
    let mut gens: Option<(Vec<String>, &Statement<'_>)> = None;
    for stmt in stmts.iter().filter(|s| s.keyword.text == "gens") {
        if gens.is_some() {
            return Err(ParseError::new(stmt.keyword.line, stmt.keyword.column, ParseErrorKind::Duplicate("`gens` statement".into())));
        }
        gens = Some((parse_generators(stmt)?, stmt));
    }
    let Some((names, _)) = gens else {
        let (line, column) = stmts.first().map(|s| (s.keyword.line, s.keyword.column)).unwrap_or((1, 1));
        return Err(ParseError::new(line, column, ParseErrorKind::Missing("`gens` statement".into())));
    };
    let relators = stmts
        .iter()
        .filter(|s| s.keyword.text == "rel")
        .map(|s| parse_word(&s.rest, &names))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation::new(names, relators).expect("parsed relators only use declared generators"))
}

/// Parses a presentation source containing only `gens` and `rel`
/// statements. Relators come back freely reduced, generators in source order.
pub fn parse_presentation(source: &str) -> Result<Presentation, ParseError> {
    let stmts = statements(source);
    if let Some(bad) = stmts.iter().find(|s| !matches!(s.keyword.text, "gens" | "rel")) {
        return Err(ParseError::new(
            bad.keyword.line,
            bad.keyword.column,
            ParseErrorKind::UnknownKeyword(bad.keyword.text.to_string()),
        ));
    }
    presentation_from_statements(&stmts)
}
