//! The plain-text ideal format.
//!
//! ```text
//! # comment
//! ring n=4
//! field q            # optional: q or gf:<p>
//! name J1            # optional
//! assert gcm         # optional, any number: key or key=value
//! gens
//! x1*x3
//! x1^2*x4
//! ```
//!
//! `gens: x1*x3, x1^2*x4` on one line is accepted as well. Variables are
//! 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::{Monomial, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDocument {
    pub n: usize,
    /// Generators as written, before minimalization.
    pub generators: Vec<Monomial>,
    pub field: Option<FieldSpec>,
    pub name: Option<String>,
    pub asserts: BTreeMap<String, Option<String>>,
    pub ideal: MonomialIdeal,
}

impl IdealDocument {
    pub fn from_ideal(ideal: &MonomialIdeal) -> Self {
        IdealDocument {
            n: ideal.nvars(),
            generators: ideal.gens().to_vec(),
            field: None,
            name: None,
            asserts: BTreeMap::new(),
            ideal: ideal.clone(),
        }
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Strips a trailing `#` comment.
fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("")
}

/// Column (1-based) of `part` in `line`, given `part` is a subslice of it.
fn column_of(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_monomial(line_no: usize, line: &str, text: &str, n: usize) -> Result<Monomial> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_error(line_no, column_of(line, text), "empty monomial"));
    }
    let mut exps = vec![0u32; n];
    if trimmed == "1" {
        return Ok(Monomial::new(exps));
    }
    for factor in trimmed.split('*') {
        let f = factor.trim();
        let col = column_of(line, factor) + (factor.len() - factor.trim_start().len());
        let Some(rest) = f.strip_prefix('x') else {
            return Err(parse_error(line_no, col, format!("expected a factor like x1 or x1^2, found `{f}`")));
        };
        let (idx_text, exp_text) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        let index: usize = idx_text
            .parse()
            .map_err(|_| parse_error(line_no, col + 1, format!("bad variable index `{idx_text}`")))?;
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange {
                line: line_no,
                index,
                n,
            });
        }
        let exp: u32 = match exp_text {
            None => 1,
            Some(e) => e.parse().map_err(|_| {
                parse_error(line_no, col + 2 + idx_text.len(), format!("bad exponent `{e}`"))
            })?,
        };
        if exp == 0 {
            return Err(Error::ZeroExponent {
                line: line_no,
                factor: f.to_string(),
            });
        }
        exps[index - 1] += exp;
    }
    Ok(Monomial::new(exps))
}

fn parse_monomial_list(line_no: usize, line: &str, text: &str, n: usize, out: &mut Vec<Monomial>) -> Result<()> {
    for part in text.split(',') {
        if part.trim().is_empty() {
            continue;
        }
        out.push(parse_monomial(line_no, line, part, n)?);
    }
    Ok(())
}

pub fn parse_ideal(text: &str) -> Result<IdealDocument> {
    let mut n: Option<usize> = None;
    let mut field = None;
    let mut name = None;
    let mut asserts = BTreeMap::new();
    let mut generators = Vec::new();
    let mut in_gens = false;
    let mut saw_gens = false;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let body = content(raw);
        let t = body.trim();
        if t.is_empty() {
            continue;
        }
        let col = column_of(raw, t);
        let Some(nv) = n else {
            let Some(rest) = t.strip_prefix("ring") else {
                return Err(parse_error(line_no, col, "expected header `ring n=<count>`"));
            };
            let rest = rest.trim();
            let Some(count) = rest.strip_prefix("n=").or_else(|| rest.strip_prefix("n =")) else {
                return Err(parse_error(line_no, col, "expected header `ring n=<count>`"));
            };
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| parse_error(line_no, col, format!("bad variable count `{}`", count.trim())))?;
            if count == 0 {
                return Err(parse_error(line_no, col, "the ring needs at least one variable"));
            }
            n = Some(count);
            continue;
        };
        if in_gens {
            parse_monomial_list(line_no, raw, body, nv, &mut generators)?;
            continue;
        }
        let (word, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        if word == "gens" && rest.trim().is_empty() {
            in_gens = true;
            saw_gens = true;
        } else if let Some(list) = t.strip_prefix("gens:") {
            in_gens = true;
            saw_gens = true;
            let start = column_of(raw, list) - 1;
            parse_monomial_list(line_no, raw, &raw[start..start + list.len()], nv, &mut generators)?;
        } else if word == "field" {
            field = Some(
                rest.trim()
                    .parse::<FieldSpec>()
                    .map_err(|e| parse_error(line_no, col + 6, e.to_string()))?,
            );
        } else if word == "name" {
            name = Some(rest.trim().to_string());
        } else if word == "assert" {
            let r = rest.trim();
            if r.is_empty() {
                return Err(parse_error(line_no, col + 7, "assert needs a key"));
            }
            match r.split_once('=') {
                Some((key, v)) => asserts.insert(key.trim().to_string(), Some(v.trim().to_string())),
                None => asserts.insert(r.to_string(), None),
            };
        } else {
            return Err(parse_error(line_no, col, format!("unexpected line `{t}`")));
        }
    }
    let Some(n) = n else {
        return Err(parse_error(1, 1, "missing header `ring n=<count>`"));
    };
    if !saw_gens {
        return Err(parse_error(text.lines().count().max(1), 1, "missing `gens` section"));
    }
    let ideal = MonomialIdeal::new(&generators, n)?;
    Ok(IdealDocument {
        n,
        generators,
        field,
        name,
        asserts,
        ideal,
    })
}

pub fn field_token(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "q".to_string(),
        FieldSpec::PrimeField(p) => format!("gf:{p}"),
    }
}

/// Renders a document in the canonical form: minimal generators, one per line.
pub fn print_document(doc: &IdealDocument) -> String {
    let mut s = String::new();
    writeln!(s, "ring n={}", doc.n).unwrap();
    if let Some(f) = doc.field {
        writeln!(s, "field {}", field_token(f)).unwrap();
    }
    if let Some(name) = &doc.name {
        writeln!(s, "name {name}").unwrap();
    }
    for (k, v) in &doc.asserts {
        match v {
            Some(v) => writeln!(s, "assert {k}={v}").unwrap(),
            None => writeln!(s, "assert {k}").unwrap(),
        }
    }
    writeln!(s, "gens").unwrap();
    for g in doc.ideal.gens() {
        writeln!(s, "{g}").unwrap();
    }
    s
}

pub fn print_ideal(ideal: &MonomialIdeal) -> String {
    print_document(&IdealDocument::from_ideal(ideal))
}
