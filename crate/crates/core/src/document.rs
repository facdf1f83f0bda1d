//! Input files: a presentation plus `group`, `mat`, `param`, `cocycle` and
//! `embed` statements, in any order.
//!
//! ```text
//! group SL(2,C)
//! gens x1 xm1 x2 xm2
//! rel x1^2 xm1^2 x2^2 xm2^2
//! mat x1 = [[0, 1i], [1i, 0]]
//! mat x2 = EXPI pi*t [[0, -1i], [1i, 0]]
//! mat x3 = CONST [[0, 1], [-1, 0]] * EXPI -0.5*pi*t [[1, 0], [0, -1]]
//! param t values -0.2 0 0.25 0.5 0.7      # or: param t from 0 to 1 steps 11
//! cocycle alpha x1 = [[0, -1i], [1i, 0]]  # unlisted generators take 0
//! embed a1 = x1 x2                        # cover generator words, in order
//! ```

use crate::presentation::{
    is_identifier, parse_word, presentation_from_statements, statements, FreeWord, ParseError, ParseErrorKind,
    Presentation, Statement, Token,
};
use crate::rep::{parse_matrix, CMatrix, Cocycle, GroupSpec, RepError, Representation};
use crate::smoothness::{Factor, FamilySpec, MatrixTemplate, SmoothnessError};

const KEYWORDS: [&str; 7] = ["gens", "rel", "group", "mat", "param", "cocycle", "embed"];

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Smoothness(#[from] SmoothnessError),
}

#[derive(Clone, Debug)]
pub struct NamedCocycle {
    pub name: String,
    /// Lie-algebra matrices per generator; `None` means zero.
    pub values: Vec<Option<CMatrix>>,
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub presentation: Presentation,
    pub spec: Option<GroupSpec>,
    pub templates: Vec<Option<MatrixTemplate>>,
    pub grid: Option<Vec<f64>>,
    pub cocycles: Vec<NamedCocycle>,
    pub embedding: Vec<(String, FreeWord)>,
    /// Position of the `gens` statement, for diagnostics about the whole file.
    anchor: (usize, usize),
}

fn err(tok: &Token<'_>, offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError::syntax(tok.line, tok.column + offset, msg)
}

fn sub<'a>(tok: &Token<'a>, offset: usize) -> Token<'a> {
    Token { text: &tok.text[offset..], line: tok.line, column: tok.column + offset }
}

fn skip_ws(text: &str, mut pos: usize) -> usize {
    while text[pos..].starts_with(char::is_whitespace) {
        pos += text[pos..].chars().next().map_or(1, char::len_utf8);
    }
    pos
}

/// Splits `<name> = <body>`.
fn split_assignment<'a>(rest: &Token<'a>) -> Result<(Token<'a>, Token<'a>), ParseError> {
    let eq = rest.text.find('=').ok_or_else(|| err(rest, 0, "expected `<name> = ...`"))?;
    let lhs = rest.text[..eq].trim_end();
    let body_start = skip_ws(rest.text, eq + 1);
    if body_start >= rest.text.len() {
        return Err(err(rest, eq, "nothing after `=`"));
    }
    Ok((Token { text: lhs, line: rest.line, column: rest.column }, sub(rest, body_start)))
}

/// Parses the `EXPI` coefficient: `pi*t`, `-pi*t`, `<c>*pi*t`.
fn parse_coefficient(text: &str) -> Option<f64> {
    let (sign, body) = match text.strip_prefix('-') {
        Some(b) => (-1.0, b),
        None => (1.0, text),
    };
    let scale = match body.strip_suffix("pi*t")? {
        "" => 1.0,
        prefix => prefix.strip_suffix('*')?.parse::<f64>().ok().filter(|v| v.is_finite())?,
    };
    Some(sign * scale)
}

fn parse_template(body: &Token<'_>, n: Option<usize>) -> Result<MatrixTemplate, ParseError> {
    let text = body.text;
    let mut pos = 0;
    let mut factors = Vec::new();
    loop {
        pos = skip_ws(text, pos);
        let factor_at = pos;
        let factor = if let Some(after) = text[pos..].strip_prefix("CONST") {
            pos = text.len() - after.len();
            let (m, used) = parse_matrix(&sub(body, pos))?;
            pos += used;
            Factor::Const(m)
        } else if let Some(after) = text[pos..].strip_prefix("EXPI") {
            pos = skip_ws(text, text.len() - after.len());
            let end = text[pos..].find(char::is_whitespace).map_or(text.len(), |k| pos + k);
            let coefficient = parse_coefficient(&text[pos..end])
                .ok_or_else(|| err(body, pos, format!("bad EXPI coefficient `{}`; expected pi*t or <c>*pi*t", &text[pos..end])))?;
            pos = end;
            let (m, used) = parse_matrix(&sub(body, pos))?;
            pos += used;
            Factor::ExpI { coefficient, generator: m }
        } else if text[pos..].starts_with('[') {
            let (m, used) = parse_matrix(&sub(body, pos))?;
            pos += used;
            Factor::Const(m)
        } else {
            return Err(err(body, pos, "expected a matrix, CONST or EXPI"));
        };
        let size = factor.size();
        if let Some(n) = n.filter(|&n| n != size) {
            return Err(err(body, factor_at, format!("expected a {n}x{n} matrix, found {size}x{size}")));
        }
        if factors.first().is_some_and(|f: &Factor| f.size() != size) {
            return Err(err(body, factor_at, "factors have different sizes"));
        }
        factors.push(factor);
        pos = skip_ws(text, pos);
        if pos >= text.len() {
            break;
        }
        if !text[pos..].starts_with('*') {
            return Err(err(body, pos, "expected `*` between factors"));
        }
        pos += 1;
    }
    Ok(MatrixTemplate { factors })
}

fn parse_number(tok: &Token<'_>) -> Result<f64, ParseError> {
    tok.text
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| err(tok, 0, format!("expected a number, found `{}`", tok.text)))
}

fn parse_grid(stmt: &Statement<'_>) -> Result<Vec<f64>, ParseError> {
    let toks = stmt.tokens();
    let Some(name) = toks.first() else {
        return Err(err(&stmt.rest, 0, "expected `param t ...`"));
    };
    if name.text != "t" {
        return Err(err(name, 0, format!("the family parameter must be named `t`, found `{}`", name.text)));
    }
    match toks.get(1).map(|t| t.text) {
        Some("values") => {
            let values = toks[2..].iter().map(parse_number).collect::<Result<Vec<_>, _>>()?;
            if values.is_empty() {
                return Err(err(&toks[1], 0, "`values` needs at least one number"));
            }
            Ok(values)
        }
        Some("from") => {
            let [_, _, from, to_kw, to, steps_kw, steps] = toks.as_slice() else {
                return Err(err(&stmt.rest, 0, "expected `param t from <a> to <b> steps <n>`"));
            };
            if to_kw.text != "to" || steps_kw.text != "steps" {
                return Err(err(&stmt.rest, 0, "expected `param t from <a> to <b> steps <n>`"));
            }
            let (a, b) = (parse_number(from)?, parse_number(to)?);
            let n: usize = steps.text.parse().ok().filter(|&n| n >= 1).ok_or_else(|| err(steps, 0, "steps must be a positive integer"))?;
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n).map(|k| if k == n - 1 { b } else { a + (b - a) * k as f64 / (n - 1) as f64 }).collect())
        }
        _ => Err(err(&stmt.rest, 0, "expected `values` or `from` after `param t`")),
    }
}

impl InputDocument {
    pub fn parse(source: &str) -> Result<Self, ParseError> {
        let stmts = statements(source);
        if let Some(bad) = stmts.iter().find(|s| !KEYWORDS.contains(&s.keyword.text)) {
            return Err(ParseError::new(
                bad.keyword.line,
                bad.keyword.column,
                ParseErrorKind::UnknownKeyword(bad.keyword.text.to_string()),
            ));
        }
        let presentation = presentation_from_statements(&stmts)?;
        let anchor = stmts
            .iter()
            .find(|s| s.keyword.text == "gens")
            .map(|s| (s.keyword.line, s.keyword.column))
            .unwrap_or((1, 1));
        let names = presentation.generator_names().to_vec();
        let lookup = |tok: &Token<'_>| -> Result<usize, ParseError> {
            names
                .iter()
                .position(|n| n == tok.text)
                .ok_or_else(|| ParseError::new(tok.line, tok.column, ParseErrorKind::UnknownGenerator(tok.text.to_string())))
        };
        let duplicate = |s: &Statement<'_>, what: String| ParseError::new(s.keyword.line, s.keyword.column, ParseErrorKind::Duplicate(what));

        let mut spec = None;
        for s in stmts.iter().filter(|s| s.keyword.text == "group") {
            if spec.is_some() {
                return Err(duplicate(s, "`group` statement".into()));
            }
            spec = Some(s.rest.text.parse::<GroupSpec>().map_err(|e| err(&s.rest, 0, e.to_string()))?);
        }
        let n = spec.map(|g: GroupSpec| g.n);

        let mut templates: Vec<Option<MatrixTemplate>> = vec![None; names.len()];
        let mut grid = None;
        let mut cocycles: Vec<NamedCocycle> = Vec::new();
        let mut embedding: Vec<(String, FreeWord)> = Vec::new();
        for s in &stmts {
            match s.keyword.text {
                "mat" => {
                    let (lhs, body) = split_assignment(&s.rest)?;
                    let g = lookup(&lhs)?;
                    if templates[g].is_some() {
                        return Err(duplicate(s, format!("matrix for `{}`", lhs.text)));
                    }
                    templates[g] = Some(parse_template(&body, n)?);
                }
                "param" => {
                    if grid.is_some() {
                        return Err(duplicate(s, "`param` statement".into()));
                    }
                    grid = Some(parse_grid(s)?);
                }
                "cocycle" => {
                    let (lhs, body) = split_assignment(&s.rest)?;
                    let parts: Vec<&str> = lhs.text.split_whitespace().collect();
                    let [name, gen] = parts.as_slice() else {
                        return Err(err(&lhs, 0, "expected `cocycle <name> <generator> = <matrix>`"));
                    };
                    if !is_identifier(name) {
                        return Err(err(&lhs, 0, format!("invalid cocycle name `{name}`")));
                    }
                    let gen_offset = lhs.text.rfind(gen).unwrap_or(0);
                    let g = lookup(&sub(&lhs, gen_offset))?;
                    let (m, used) = parse_matrix(&body)?;
                    if skip_ws(body.text, used) < body.text.len() {
                        return Err(err(&body, used, "unexpected text after the matrix"));
                    }
                    if let Some(n) = n.filter(|&n| n != m.nrows()) {
                        return Err(err(&body, 0, format!("expected a {n}x{n} matrix")));
                    }
                    if spec.is_some_and(|g| g.kind != crate::rep::GroupKind::GL) && m.trace().norm() > 1e-9 * m.norm().max(1.0) {
                        return Err(err(&body, 0, "cocycle values must be traceless for SL and PSL"));
                    }
                    let idx = match cocycles.iter().position(|c| c.name == *name) {
                        Some(i) => i,
                        None => {
                            cocycles.push(NamedCocycle { name: name.to_string(), values: vec![None; names.len()] });
                            cocycles.len() - 1
                        }
                    };
                    if cocycles[idx].values[g].is_some() {
                        return Err(duplicate(s, format!("value of cocycle `{name}` on `{gen}`")));
                    }
                    cocycles[idx].values[g] = Some(m);
                }
                "embed" => {
                    let (lhs, body) = split_assignment(&s.rest)?;
                    if !is_identifier(lhs.text) {
                        return Err(err(&lhs, 0, format!("invalid subgroup generator name `{}`", lhs.text)));
                    }
                    if embedding.iter().any(|(n, _)| n == lhs.text) {
                        return Err(duplicate(s, format!("embedding of `{}`", lhs.text)));
                    }
                    embedding.push((lhs.text.to_string(), parse_word(&body, &names)?));
                }
                _ => {}
            }
        }
        Ok(Self { presentation, spec, templates, grid, cocycles, embedding, anchor })
    }

    fn missing(&self, what: &str) -> ParseError {
        ParseError::new(self.anchor.0, self.anchor.1, ParseErrorKind::Missing(what.to_string()))
    }

    pub fn group(&self) -> Result<GroupSpec, ParseError> {
        self.spec.ok_or_else(|| self.missing("`group` statement"))
    }

    fn all_templates(&self) -> Result<Vec<MatrixTemplate>, ParseError> {
        self.templates
            .iter()
            .zip(self.presentation.generator_names())
            .map(|(t, name)| t.clone().ok_or_else(|| self.missing(&format!("`mat` for generator `{name}`"))))
            .collect()
    }

    pub fn is_family(&self) -> bool {
        self.templates.iter().flatten().any(|t| !t.is_constant())
    }

    /// The representation; every `mat` must be constant.
    pub fn representation(&self) -> Result<Representation, DocumentError> {
        let spec = self.group()?;
        let templates = self.all_templates()?;
        if self.is_family() {
            return Err(self.missing("constant matrices (this file defines a family; use a scan)").into());
        }
        let images = templates.iter().map(|t| t.at(0.0)).collect();
        Ok(Representation::new(self.presentation.clone(), spec, images)?)
    }

    pub fn family(&self) -> Result<FamilySpec, DocumentError> {
        let spec = self.group()?;
        let templates = self.all_templates()?;
        let grid = self.grid.clone().ok_or_else(|| self.missing("`param t ...` statement"))?;
        Ok(FamilySpec::new(self.presentation.clone(), spec, templates, grid)?)
    }

    pub fn cocycle_names(&self) -> Vec<&str> {
        self.cocycles.iter().map(|c| c.name.as_str()).collect()
    }

    /// Lie-algebra coordinates of a named cocycle. Values outside the Lie
    /// algebra are rejected.
    pub fn cocycle(&self, name: &str, rep: &Representation) -> Result<Cocycle, DocumentError> {
        let named = self
            .cocycles
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| self.missing(&format!("cocycle `{name}`")))?;
        let basis = rep.basis();
        let values = named
            .values
            .iter()
            .map(|v| match v {
                None => Ok(crate::rep::CVector::zeros(basis.dim())),
                Some(m) => {
                    let coords = basis.coordinates(m);
                    let residual = (basis.matrix(&coords) - m).norm();
                    if residual > 1e-9 * m.norm().max(1.0) {
                        Err(ParseError::syntax(self.anchor.0, self.anchor.1, format!("cocycle `{name}` has a value outside the Lie algebra")))
                    } else {
                        Ok(coords)
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cocycle::new(values))
    }

    pub fn embedding_words(&self) -> Vec<FreeWord> {
        self.embedding.iter().map(|(_, w)| w.clone()).collect()
    }
}
