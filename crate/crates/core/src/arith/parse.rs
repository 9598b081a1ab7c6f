//! Text form of generating sets: one element per line, "a11 a12 a21 a22 | tx ty".

use num_bigint::BigInt;

use super::affine::AffineElement;
use super::matrix::{Mat2, Vec2};
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_line(text: &str, line: usize) -> Result<AffineElement> {
    let Some(bar) = text.find('|') else {
        return Err(parse_err(line, text.len() + 1, "expected '|' between linear part and translation"));
    };
    let mut nums = Vec::with_capacity(6);
    let mut expect = |part: &str, offset: usize, count: usize| -> Result<()> {
        let mut found = 0;
        let mut pos = 0;
        for tok in part.split_whitespace() {
            let start = part[pos..].find(tok).map(|i| i + pos).unwrap_or(pos);
            pos = start + tok.len();
            let v: BigInt = tok.parse().map_err(|_| {
                parse_err(line, offset + start + 1, format!("not an integer: {tok:?}"))
            })?;
            nums.push(v);
            found += 1;
        }
        if found != count {
            return Err(parse_err(
                line,
                offset + part.len() + 1,
                format!("expected {count} integers, found {found}"),
            ));
        }
        Ok(())
    };
    expect(&text[..bar], 0, 4)?;
    expect(&text[bar + 1..], bar + 1, 2)?;
    let [a11, a12, a21, a22, tx, ty]: [BigInt; 6] = nums.try_into().expect("six integers");
    AffineElement::from_parts(Mat2::new(a11, a12, a21, a22), Vec2::new(tx, ty)).map_err(|e| {
        parse_err(line, 1, e.to_string())
    })
}

/// A single literal (no comments).
pub fn parse_element(text: &str) -> Result<AffineElement> {
    parse_line(text.trim(), 1)
}

/// Parse a set: blank lines and lines starting with `#` are skipped.
pub fn parse_set(text: &str) -> Result<Vec<AffineElement>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let el = parse_line(trimmed.trim_end(), i + 1).map_err(|e| match e {
            Error::Parse {
                line,
                column,
                message,
            } => Error::Parse {
                line,
                column: column + indent,
                message,
            },
            other => other,
        })?;
        out.push(el);
    }
    if out.is_empty() {
        return Err(parse_err(1, 1, "empty generating set"));
    }
    Ok(out)
}

/// Result of [`symmetrize`]: the closed set and what had to be added.
#[derive(Clone, Debug)]
pub struct Symmetrized {
    pub set: Vec<AffineElement>,
    pub added_identity: bool,
    pub added_inverses: usize,
}

/// Deduplicate, put the identity first, and close under inverses (each
/// missing inverse right after its element).
pub fn symmetrize(input: &[AffineElement]) -> Symmetrized {
    let mut set: Vec<AffineElement> = Vec::new();
    let has_id = input.iter().any(|g| g.is_identity());
    set.push(AffineElement::identity());
    let mut added_inverses = 0;
    for g in input {
        if g.is_identity() || set.contains(g) {
            continue;
        }
        set.push(g.clone());
        let inv = g.inverse_elem();
        if !input.contains(&inv) && !set.contains(&inv) {
            set.push(inv);
            added_inverses += 1;
        }
    }
    Symmetrized {
        set,
        added_identity: !has_id,
        added_inverses,
    }
}

pub fn is_symmetric_with_identity(s: &[AffineElement]) -> bool {
    s.iter().any(|g| g.is_identity()) && s.iter().all(|g| s.contains(&g.inverse_elem()))
}

pub fn format_set(s: &[AffineElement]) -> String {
    s.iter().map(|g| g.to_literal() + "\n").collect()
}
