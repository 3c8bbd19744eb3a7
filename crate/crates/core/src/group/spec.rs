//! Group-spec grammar and the multiplication-table file format.
//!
//! ```text
//! spec   := "table:" PATH | product
//! product:= factor ("x" factor)*
//! factor := "Z" n | "D" n | "Dih(" product ")" | "(" product ")"
//! ```
//!
//! Table files are UTF-8 text: a line `order <n>`, then `n` lines of `n`
//! space-separated indices, then optionally `names a,b,c,...`.

use std::path::Path;

use thiserror::Error;

use super::{split_top_level, FiniteGroup, GroupError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid group spec {spec:?}: {reason}")]
    Syntax { spec: String, reason: String },
    #[error("table file {path}: {reason}")]
    TableFormat { path: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Parses and builds a group from a spec such as `Z7`, `D14`, `Z2xZ2xZ2xZ2`,
/// `Dih(Z4xZ4)` or `table:/path/to/file`.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup, SpecError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("table:") {
        return read_table_file(Path::new(path.trim()));
    }
    parse_product(spec, spec)
}

fn syntax(spec: &str, reason: impl Into<String>) -> SpecError {
    SpecError::Syntax { spec: spec.to_string(), reason: reason.into() }
}

fn parse_product(text: &str, whole: &str) -> Result<FiniteGroup, SpecError> {
    let factors = split_product(text);
    if factors.iter().any(|f| f.trim().is_empty()) {
        return Err(syntax(whole, "empty factor"));
    }
    let groups = factors
        .iter()
        .map(|f| parse_factor(f.trim(), whole))
        .collect::<Result<Vec<_>, _>>()?;
    if groups.len() == 1 {
        return Ok(groups.into_iter().next().expect("one factor"));
    }
    Ok(FiniteGroup::direct_product(&groups.iter().collect::<Vec<_>>())?)
}

/// Splits on `x` at parenthesis depth zero.
fn split_product(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '×' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_number(digits: &str, whole: &str) -> Result<usize, SpecError> {
    digits
        .trim()
        .parse::<usize>()
        .map_err(|_| syntax(whole, format!("expected an integer, found {digits:?}")))
}

fn parse_factor(f: &str, whole: &str) -> Result<FiniteGroup, SpecError> {
    if let Some(inner) = f.strip_prefix("Dih(").and_then(|r| r.strip_suffix(')')) {
        let h = parse_product(inner, whole)?;
        return Ok(FiniteGroup::generalized_dihedral(&h)?);
    }
    if let Some(inner) = f.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return parse_product(inner, whole);
    }
    if let Some(n) = f.strip_prefix('Z') {
        return Ok(FiniteGroup::cyclic(parse_number(n, whole)?)?);
    }
    if let Some(n) = f.strip_prefix('D') {
        return Ok(FiniteGroup::dihedral(parse_number(n, whole)?)?);
    }
    Err(syntax(whole, format!("unrecognised factor {f:?}")))
}

pub fn read_table_file(path: &Path) -> Result<FiniteGroup, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| SpecError::Io { path: path.display().to_string(), source })?;
    parse_table_text(&text).map_err(|e| match e {
        SpecError::TableFormat { reason, .. } => {
            SpecError::TableFormat { path: path.display().to_string(), reason }
        }
        other => other,
    })
}

pub fn parse_table_text(text: &str) -> Result<FiniteGroup, SpecError> {
    let bad = |reason: String| SpecError::TableFormat { path: "<text>".into(), reason };
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let order = header
        .strip_prefix("order")
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| bad(format!("expected `order <n>`, found {header:?}")))?;
    let mut rows = Vec::with_capacity(order);
    for r in 0..order {
        let line = lines.next().ok_or_else(|| bad(format!("missing table row {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad(format!("row {r}: bad entry {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let names = match lines.next() {
        None => None,
        Some(line) => {
            let list = line
                .strip_prefix("names")
                .ok_or_else(|| bad(format!("unexpected line {line:?}")))?;
            Some(split_top_level(list.trim()).into_iter().map(|s| s.trim().to_string()).collect())
        }
    };
    if let Some(extra) = lines.next() {
        return Err(bad(format!("trailing content {extra:?}")));
    }
    Ok(FiniteGroup::from_table(&rows, names)?)
}

/// Serializes a group in the table file format (always with a `names` line).
pub fn table_text(g: &FiniteGroup) -> String {
    let mut out = format!("order {}\n", g.order());
    for row in g.table_rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str("names ");
    out.push_str(&g.names().join(","));
    out.push('\n');
    out
}
