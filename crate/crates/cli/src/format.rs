//! Line-oriented text formats for words and messages.
//!
//! A word file starts with
//! `CODE kind=<mult|frs> p=<p> n=<n> s=<s> d=<d> gamma=<g>` followed by one
//! line per column, `alpha v0 v1 ... v{s-1}`. A message file is
//! `MSG p=<p> d=<d>` followed by one line of `d + 1` coefficients, low degree
//! first. Blank lines are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use mercode::algebra::{Fe, FieldConfig, Poly};
use mercode::codes::{CodeKind, CodeParams};
use mercode::interpolation::ReceivedWord;

use crate::CliError;

/// A parsed word file: the code it belongs to and its columns.
#[derive(Clone, Debug)]
pub struct WordFile {
    pub code: CodeParams,
    pub columns: Vec<Vec<Fe>>,
}

impl WordFile {
    pub fn received(&self) -> Result<ReceivedWord, CliError> {
        Ok(self.code.received(self.columns.clone())?)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

/// `TAG key=value ...` into a map, checking the tag and required keys.
fn parse_header<'a>(
    line: usize,
    text: &'a str,
    tag: &str,
    keys: &[&str],
) -> Result<HashMap<&'a str, &'a str>, CliError> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(parse_err(line, format!("expected a {tag} header")));
    }
    let mut map = HashMap::new();
    for part in parts {
        let (k, v) = part.split_once('=').ok_or_else(|| parse_err(line, format!("malformed field {part:?}")))?;
        if map.insert(k, v).is_some() {
            return Err(parse_err(line, format!("duplicate field {k:?}")));
        }
    }
    if let Some(missing) = keys.iter().find(|k| !map.contains_key(*k)) {
        return Err(parse_err(line, format!("missing field {missing:?}")));
    }
    Ok(map)
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| parse_err(line, format!("{key} is not a number: {value:?}")))
}

/// A residue below `p`.
fn parse_elem(f: &FieldConfig, line: usize, value: &str) -> Result<Fe, CliError> {
    let v: u64 = parse_num(line, "entry", value)?;
    if v >= f.p() {
        return Err(parse_err(line, format!("entry {v} is not reduced modulo {}", f.p())));
    }
    Ok(f.elem(v))
}

fn field_at(line: usize, p: u64) -> Result<FieldConfig, CliError> {
    FieldConfig::new(p).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_word(text: &str) -> Result<WordFile, CliError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let h = parse_header(hline, header, "CODE", &["kind", "p", "n", "s", "d", "gamma"])?;
    let kind: CodeKind = h["kind"].parse().map_err(|e: mercode::Error| parse_err(hline, e.to_string()))?;
    let f = field_at(hline, parse_num(hline, "p", h["p"])?)?;
    let n: usize = parse_num(hline, "n", h["n"])?;
    let s: usize = parse_num(hline, "s", h["s"])?;
    let d: usize = parse_num(hline, "d", h["d"])?;
    let gamma = parse_elem(&f, hline, h["gamma"])?;
    let mut alphas = Vec::with_capacity(n);
    let mut columns = Vec::with_capacity(n);
    let mut last = hline;
    for (line, text) in lines {
        last = line;
        let values = text.split_whitespace().map(|v| parse_elem(&f, line, v)).collect::<Result<Vec<_>, _>>()?;
        if values.len() != s + 1 {
            return Err(parse_err(line, format!("expected alpha and {s} values, found {} entries", values.len())));
        }
        if columns.len() == n {
            return Err(parse_err(line, format!("more than n = {n} columns")));
        }
        alphas.push(values[0]);
        columns.push(values[1..].to_vec());
    }
    if columns.len() != n {
        return Err(parse_err(last + 1, format!("expected {n} columns, found {}", columns.len())));
    }
    let code = match kind {
        CodeKind::Mult => CodeParams::mult_with_points(f, alphas, s, d)?,
        CodeKind::Frs => {
            let code = CodeParams::frs_with_gamma(f, n, s, d, gamma)?;
            if code.alphas() != alphas.as_slice() {
                return Err(CliError::Invalid("folded code points must be gamma^(s i) in order".into()));
            }
            code
        }
    };
    Ok(WordFile { code, columns })
}

pub fn write_word(code: &CodeParams, columns: &[Vec<Fe>]) -> String {
    let mut out = format!(
        "CODE kind={} p={} n={} s={} d={} gamma={}\n",
        code.kind().name(),
        code.field().p(),
        code.n(),
        code.s(),
        code.d(),
        code.gamma()
    );
    for (a, col) in code.alphas().iter().zip(columns) {
        let _ = write!(out, "{a}");
        for v in col {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// A message polynomial with its field and degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageFile {
    pub p: u64,
    pub d: usize,
    pub message: Poly,
}

pub fn parse_message(text: &str) -> Result<MessageFile, CliError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let h = parse_header(hline, header, "MSG", &["p", "d"])?;
    let p: u64 = parse_num(hline, "p", h["p"])?;
    let f = field_at(hline, p)?;
    let d: usize = parse_num(hline, "d", h["d"])?;
    let (line, text) = lines.next().ok_or_else(|| parse_err(hline + 1, "missing coefficient line"))?;
    let coeffs = text.split_whitespace().map(|v| parse_elem(&f, line, v)).collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != d + 1 {
        return Err(parse_err(line, format!("expected {} coefficients, found {}", d + 1, coeffs.len())));
    }
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "unexpected content after the coefficients"));
    }
    Ok(MessageFile { p, d, message: Poly::from_coeffs(coeffs) })
}

/// Coefficients `0..=d`, zero padded.
pub fn coefficient_line(message: &Poly, d: usize) -> String {
    (0..=d).map(|i| message.coeff(i).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_message(p: u64, d: usize, message: &Poly) -> String {
    format!("MSG p={p} d={d}\n{}\n", coefficient_line(message, d))
}
