//! Plain-text formats for quantales and Q-sets.
//!
//! Quantale files:
//!
//! ```text
//! quantale luk3
//! elements: 0 h 1
//! order: 0<=h
//! order: h<=1
//! unit: 1
//! tensor:
//! 0 0 0
//! 0 0 h
//! 0 h 1
//! ```
//!
//! An optional `residual:` matrix may follow the tensor; it is cross-checked
//! against the derived residual. Q-set files:
//!
//! ```text
//! qset z over luk3
//! elements: p q
//! hom:
//! h 0
//! 0 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

fn lines(source: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let content = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (k, c) in content.char_indices() {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token { text: &content[s..k], column: content[..s].chars().count() + 1 });
                }
            } else if start.is_none() {
                start = Some(k);
            }
        }
        if let Some(s) = start {
            tokens.push(Token { text: &content[s..], column: content[..s].chars().count() + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens, end_column: content.chars().count() + 1 });
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(source: &'a str) -> Self {
        let lines = lines(source);
        let last_line = source.lines().count().max(1);
        Cursor { lines, pos: 0, last_line }
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<&Line<'a>> {
        let l = self.lines.get(self.pos);
        self.pos += 1;
        l
    }

    fn expect(&mut self, what: &str) -> std::result::Result<&Line<'a>, ParseError> {
        if self.pos >= self.lines.len() {
            return Err(self.eof(what));
        }
        self.pos += 1;
        Ok(&self.lines[self.pos - 1])
    }

    fn eof(&self, what: &str) -> ParseError {
        err(self.last_line, 1, format!("unexpected end of input, expected {what}"))
    }
}

/// Splits a `key:` header. Accepts `key: a b`, `key:a b` and `key : a b`.
fn keyed<'a>(line: &Line<'a>, key: &str) -> Option<Vec<Token<'a>>> {
    let first = line.tokens[0];
    let mut rest: Vec<Token<'a>> = line.tokens[1..].to_vec();
    if first.text == format!("{key}:") {
        return Some(rest);
    }
    if first.text == key && rest.first().is_some_and(|t| t.text.starts_with(':')) {
        let colon = rest.remove(0);
        if colon.text.len() > 1 {
            rest.insert(0, Token { text: &colon.text[1..], column: colon.column + 1 });
        }
        return Some(rest);
    }
    if let Some(tail) = first.text.strip_prefix(key).and_then(|t| t.strip_prefix(':')) {
        rest.insert(0, Token { text: tail, column: first.column + key.len() + 1 });
        return Some(rest);
    }
    None
}

/// A parsed quantale definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleFile {
    pub quantale: Quantale,
    pub supplied_residual: Option<Vec<Elem>>,
}

fn read_matrix<'a>(
    cur: &mut Cursor<'a>,
    names: &[String],
    what: &str,
    rows: usize,
) -> std::result::Result<Vec<(Token<'a>, usize)>, ParseError> {
    let n = names.len();
    let mut out = Vec::with_capacity(rows * n);
    for i in 0..rows {
        let line = cur.expect(&format!("{what} row {}", i + 1))?;
        if line.tokens.len() != n {
            let col = line.tokens.get(n).map_or(line.end_column, |t| t.column);
            return Err(err(line.number, col, format!("{what} row has {} entries, expected {n}", line.tokens.len())));
        }
        for t in &line.tokens {
            let idx = names
                .iter()
                .position(|s| s == t.text)
                .ok_or_else(|| err(line.number, t.column, format!("unknown element `{}`", t.text)))?;
            out.push((*t, idx));
        }
    }
    Ok(out)
}

fn header_name(cur: &mut Cursor<'_>, keyword: &str) -> std::result::Result<(String, Vec<String>), ParseError> {
    let line = cur.expect(&format!("`{keyword} <name>`"))?;
    let first = line.tokens[0];
    if first.text != keyword {
        return Err(err(line.number, first.column, format!("expected `{keyword}`, found `{}`", first.text)));
    }
    let name = line
        .tokens
        .get(1)
        .ok_or_else(|| err(line.number, line.end_column, format!("missing {keyword} name")))?;
    let rest = line.tokens[2..].iter().map(|t| t.text.to_string()).collect();
    Ok((name.text.to_string(), rest))
}

fn elements_line(cur: &mut Cursor<'_>) -> std::result::Result<Vec<String>, ParseError> {
    let line = cur.expect("`elements:`")?;
    let toks = keyed(line, "elements")
        .ok_or_else(|| err(line.number, line.tokens[0].column, "expected `elements:`"))?;
    let mut names: Vec<String> = Vec::new();
    for t in toks {
        if names.iter().any(|s| s == t.text) {
            return Err(err(line.number, t.column, format!("duplicate element `{}`", t.text)));
        }
        names.push(t.text.to_string());
    }
    Ok(names)
}

/// Parses a quantale definition. Syntax errors carry line and column; order
/// relations that do not generate a lattice are reported as lattice errors.
pub fn parse_quantale(source: &str) -> Result<QuantaleFile> {
    let mut cur = Cursor::new(source);
    let (name, extra) = header_name(&mut cur, "quantale")?;
    if !extra.is_empty() {
        let l = &cur.lines[cur.pos - 1];
        return Err(err(l.number, l.tokens[2].column, "unexpected text after quantale name").into());
    }
    let names = elements_line(&mut cur)?;
    if names.is_empty() {
        let l = &cur.lines[cur.pos - 1];
        return Err(err(l.number, l.end_column, "a quantale needs at least one element").into());
    }
    let lookup = |line: usize, t: Token<'_>, text: &str, col: usize| {
        names
            .iter()
            .position(|s| s == text)
            .ok_or_else(|| err(line, col, format!("unknown element `{text}` in `{}`", t.text)))
    };

    let mut pairs = Vec::new();
    let mut unit: Option<usize> = None;
    loop {
        let line = cur.peek().ok_or_else(|| cur.eof("`tensor:`"))?;
        let number = line.number;
        if let Some(toks) = keyed(line, "order") {
            // rejoin so that `a <= b` and `a<=b` both work
            let joined: String = toks.iter().map(|t| t.text).collect();
            let col = toks.first().map_or(line.end_column, |t| t.column);
            let t0 = toks.first().copied().unwrap_or(line.tokens[0]);
            let (a, b) = joined
                .split_once("<=")
                .ok_or_else(|| err(number, col, "expected `<a><=<b>`"))?;
            let ia = lookup(number, t0, a, col)?;
            let ib = lookup(number, t0, b, col)?;
            pairs.push((ia, ib));
            cur.next();
        } else if let Some(toks) = keyed(line, "unit") {
            if toks.len() != 1 {
                let col = toks.get(1).map_or(line.end_column, |t| t.column);
                return Err(err(number, col, "expected exactly one unit element").into());
            }
            if unit.is_some() {
                return Err(err(number, line.tokens[0].column, "unit declared twice").into());
            }
            unit = Some(lookup(number, toks[0], toks[0].text, toks[0].column)?);
            cur.next();
        } else if let Some(toks) = keyed(line, "tensor") {
            if let Some(t) = toks.first() {
                return Err(err(number, t.column, "tensor rows start on the next line").into());
            }
            cur.next();
            break;
        } else {
            let t = line.tokens[0];
            return Err(err(number, t.column, format!("expected `order:`, `unit:` or `tensor:`, found `{}`", t.text)).into());
        }
    }
    let unit_line = cur.lines.get(cur.pos.saturating_sub(1)).map_or(1, |l| l.number);
    let unit = unit.ok_or_else(|| err(unit_line, 1, "missing `unit:` before `tensor:`"))?;
    let n = names.len();
    let tensor: Vec<Elem> = read_matrix(&mut cur, &names, "tensor", n)?.into_iter().map(|(_, i)| Elem::new(i)).collect();

    let mut supplied_residual = None;
    if let Some(line) = cur.next() {
        let number = line.number;
        let t0 = line.tokens[0];
        match keyed(line, "residual") {
            Some(toks) if toks.is_empty() => {
                let r = read_matrix(&mut cur, &names, "residual", n)?;
                supplied_residual = Some(r.into_iter().map(|(_, i)| Elem::new(i)).collect());
            }
            _ => return Err(err(number, t0.column, format!("unexpected `{}` after tensor", t0.text)).into()),
        }
    }
    if let Some(line) = cur.next() {
        return Err(err(line.number, line.tokens[0].column, "unexpected trailing content").into());
    }

    let lattice = FiniteLattice::from_generators(n, &pairs)?;
    let quantale = Quantale::new(name, names, lattice, tensor, Elem::new(unit))?;
    Ok(QuantaleFile { quantale, supplied_residual })
}

/// Serializes a quantale; `parse_quantale(to_text(q))` reproduces `q`.
pub fn quantale_to_text(q: &Quantale) -> String {
    let mut s = String::new();
    writeln!(s, "quantale {}", q.name()).unwrap();
    writeln!(s, "elements: {}", q.names().join(" ")).unwrap();
    for (a, b) in q.lattice().covers() {
        writeln!(s, "order: {}<={}", q.show(a), q.show(b)).unwrap();
    }
    writeln!(s, "unit: {}", q.show(q.unit())).unwrap();
    writeln!(s, "tensor:").unwrap();
    write_matrix(&mut s, q.len(), |i, j| q.show(q.tensor(Elem::new(i), Elem::new(j))).to_string());
    s
}

fn write_matrix(s: &mut String, n: usize, cell: impl Fn(usize, usize) -> String) {
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| cell(i, j)).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
}

/// A Q-set definition before it is resolved against its quantale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSetFile {
    pub name: String,
    pub over: String,
    pub elements: Vec<String>,
    pub hom: Vec<String>,
    /// `(line, column)` of each hom entry, for error reporting.
    positions: Vec<(usize, usize)>,
}

impl QSetFile {
    /// Resolves hom entries to quantale elements.
    pub fn resolve(&self, q: &Quantale) -> Result<Vec<Elem>> {
        self.hom
            .iter()
            .zip(&self.positions)
            .map(|(s, &(line, column))| {
                q.lookup(s).map_err(|_| {
                    Error::Parse(err(line, column, format!("`{s}` is not an element of {}", q.name())))
                })
            })
            .collect()
    }
}

pub fn parse_qset(source: &str) -> Result<QSetFile> {
    let mut cur = Cursor::new(source);
    let (name, rest) = header_name(&mut cur, "qset")?;
    let hl = &cur.lines[cur.pos - 1];
    if rest.len() != 2 || rest[0] != "over" {
        return Err(err(hl.number, hl.tokens.get(2).map_or(hl.end_column, |t| t.column), "expected `qset <name> over <quantale>`").into());
    }
    let over = rest[1].clone();
    let elements = elements_line(&mut cur)?;
    let line = cur.expect("`hom:`")?;
    match keyed(line, "hom") {
        Some(t) if t.is_empty() => {}
        _ => return Err(err(line.number, line.tokens[0].column, "expected `hom:`").into()),
    }
    let n = elements.len();
    let mut hom = Vec::with_capacity(n * n);
    let mut positions = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = cur.expect(&format!("hom row {}", i + 1))?;
        if line.tokens.len() != n {
            let col = line.tokens.get(n).map_or(line.end_column, |t| t.column);
            return Err(err(line.number, col, format!("hom row has {} entries, expected {n}", line.tokens.len())).into());
        }
        for t in &line.tokens {
            hom.push(t.text.to_string());
            positions.push((line.number, t.column));
        }
    }
    if let Some(line) = cur.next() {
        return Err(err(line.number, line.tokens[0].column, "unexpected trailing content").into());
    }
    Ok(QSetFile { name, over, elements, hom, positions })
}

/// Serializes a Q-set given by element names and a hom matrix.
pub fn qset_to_text(name: &str, q: &Quantale, elements: &[String], hom: &[Elem]) -> String {
    let mut s = String::new();
    writeln!(s, "qset {} over {}", name, q.name()).unwrap();
    writeln!(s, "elements: {}", elements.join(" ")).unwrap();
    writeln!(s, "hom:").unwrap();
    let n = elements.len();
    write_matrix(&mut s, n, |i, j| q.show(hom[i * n + j]).to_string());
    s
}

/// Kind of a text definition, from its first keyword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefinitionKind {
    Quantale,
    QSet,
}

impl fmt::Display for DefinitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefinitionKind::Quantale => "quantale",
            DefinitionKind::QSet => "qset",
        })
    }
}

pub fn definition_kind(source: &str) -> Option<DefinitionKind> {
    let first = lines(source).into_iter().next()?;
    match first.tokens[0].text {
        "quantale" => Some(DefinitionKind::Quantale),
        "qset" => Some(DefinitionKind::QSet),
        _ => None,
    }
}
