//! File formats for colorings.
//!
//! The text format (`.grc`) is canonical: a header line `n k`, then for each
//! `u = 0..n-1` one line with the colors of `(u, u+1) .. (u, n-1)`. `#`
//! starts a comment. The JSON document lists explicit `[u, v, color]`
//! triples and may carry provenance and a digest.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{pair_count, Color, EdgeColoring, EdgeList};
use crate::construct::ConstructionTrace;
use crate::error::{invalid, Error, Result};
use crate::search::SearchTask;

pub const FORMAT_NAME: &str = "gallai-coloring";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Grc,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grc" | "text" => Ok(Format::Grc),
            "json" => Ok(Format::Json),
            other => invalid(format!("unknown format {other:?} (expected grc or json)")),
        }
    }
}

/// Renders the canonical text form.
pub fn render_text(c: &EdgeColoring) -> String {
    let n = c.n();
    let mut out = format!("{} {}\n", n, c.k());
    for u in 0..n.saturating_sub(1) {
        for v in u + 1..n {
            if v > u + 1 {
                out.push(' ');
            }
            write!(out, "{}", c.color(u, v)).expect("write to string");
        }
        out.push('\n');
    }
    out
}

/// Parses the text form; errors carry the 1-based line number.
pub fn parse_text(text: &str) -> Result<EdgeColoring> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let numbers = |line: usize, l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("not a number: {t:?}") }))
            .collect()
    };
    let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `n k` header".into() })?;
    let (n, k) = match numbers(line, header)?[..] {
        [n, k] => (n, k),
        _ => return Err(Error::Parse { line, msg: "header must be `n k`".into() }),
    };
    let mut colors: Vec<Color> = Vec::with_capacity(pair_count(n));
    for u in 0..n.saturating_sub(1) {
        let (line, l) = lines.next().ok_or_else(|| Error::Parse {
            line: text.lines().count() + 1,
            msg: format!("missing row {u} of {}", n - 1),
        })?;
        let row = numbers(line, l)?;
        if row.len() != n - 1 - u {
            return Err(Error::Parse { line, msg: format!("row {u} needs {} colors, found {}", n - 1 - u, row.len()) });
        }
        for c in row {
            if c == 0 || c > k {
                return Err(Error::Parse { line, msg: format!("color {c} outside 1..={k}") });
            }
            colors.push(c as Color);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, msg: "trailing data after the last row".into() });
    }
    EdgeColoring::from_upper_triangle(n, k, colors)
}

/// Where a stored coloring came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Construction(ConstructionTrace),
    Search(SearchTask),
    Random { n: usize, k: usize, seed: u64 },
}

/// A coloring plus optional provenance and digest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringDocument {
    pub coloring: EdgeColoring,
    pub provenance: Option<Provenance>,
    pub digest: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    format: String,
    version: u32,
    #[serde(flatten)]
    edges: EdgeList,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
}

impl ColoringDocument {
    pub fn new(coloring: EdgeColoring) -> Self {
        ColoringDocument { coloring, provenance: None, digest: None }
    }

    /// Attaches provenance and the coloring's digest.
    pub fn with_provenance(coloring: EdgeColoring, provenance: Provenance) -> Self {
        let digest = Some(coloring.canonical_digest());
        ColoringDocument { coloring, provenance: Some(provenance), digest }
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDocument {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            edges: self.coloring.clone().into(),
            provenance: self.provenance.clone(),
            digest: self.digest.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        if doc.format != FORMAT_NAME || doc.version != FORMAT_VERSION {
            return invalid(format!("unsupported document {} v{}", doc.format, doc.version));
        }
        let coloring = EdgeColoring::try_from(doc.edges)?;
        if let Some(d) = &doc.digest {
            if *d != coloring.canonical_digest() {
                return invalid("digest does not match the coloring");
            }
        }
        Ok(ColoringDocument { coloring, provenance: doc.provenance, digest: doc.digest })
    }

    /// Renders in `format`; the text form drops provenance and digest.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Grc => render_text(&self.coloring),
            Format::Json => self.to_json(),
        }
    }

    /// Parses either format, telling them apart by the first non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            parse_text(text).map(Self::new)
        }
    }
}
