//! The `.pts` text format.
//!
//! ```text
//! pts v1 10
//! # family=sym n=5
//! 0 1 4
//! ...
//! ```
//!
//! The header comes first. Every other line is either a comment starting with
//! `#` or three strictly ascending point indices separated by single spaces.
//! The file ends with a newline. A comment of the form `# family=<name>` or
//! `# family=<name> n=<k>` is read back as the manifest; other comments are
//! ignored. Files written here list lines in sorted order, so parsing and
//! re-emitting reproduces them byte for byte.

use std::fmt::Write as _;

use fischer_core::incidence::IncidenceError;
use fischer_core::TripleSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub family: String,
    pub n: Option<usize>,
}

impl Manifest {
    pub fn new(family: impl Into<String>, n: Option<usize>) -> Self {
        Manifest {
            family: family.into(),
            n,
        }
    }

    fn to_line(&self) -> String {
        match self.n {
            Some(n) => format!("# family={} n={n}", self.family),
            None => format!("# family={}", self.family),
        }
    }

    fn from_comment(line: &str) -> Option<Self> {
        let rest = line.strip_prefix("# family=")?;
        let mut parts = rest.split(' ');
        let family = parts.next().filter(|f| !f.is_empty())?.to_string();
        let n = match parts.next() {
            None => None,
            Some(p) => Some(p.strip_prefix("n=")?.parse().ok()?),
        };
        if parts.next().is_some() {
            return None;
        }
        Some(Manifest { family, n })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PtsError {
    #[error("empty input")]
    Empty,
    #[error("line 1: expected `pts v1 <n_points>`, found {0:?}")]
    Header(String),
    #[error("input does not end with a newline")]
    NoTrailingNewline,
    #[error("line {line}: expected three ascending point indices separated by single spaces, found {text:?}")]
    Line { line: usize, text: String },
    #[error("invalid triple system: {0}")]
    Incidence(#[from] IncidenceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtsFile {
    pub system: TripleSystem,
    pub manifest: Option<Manifest>,
}

pub fn write_pts(system: &TripleSystem, manifest: Option<&Manifest>) -> String {
    let mut out = format!("pts v1 {}\n", system.n_points());
    if let Some(m) = manifest {
        out.push_str(&m.to_line());
        out.push('\n');
    }
    for [a, b, c] in system.lines() {
        writeln!(out, "{a} {b} {c}").expect("writing to a String");
    }
    out
}

fn parse_index(s: &str) -> Option<usize> {
    // no signs, no leading zeros except "0" itself
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

pub fn parse_pts(text: &str) -> Result<PtsFile, PtsError> {
    if text.is_empty() {
        return Err(PtsError::Empty);
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(PtsError::NoTrailingNewline);
    };
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or_default();
    let n_points = header
        .strip_prefix("pts v1 ")
        .and_then(parse_index)
        .ok_or_else(|| PtsError::Header(header.to_string()))?;
    let mut manifest = None;
    let mut triples = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.starts_with('#') {
            if manifest.is_none() {
                manifest = Manifest::from_comment(line);
            }
            continue;
        }
        let bad = || PtsError::Line {
            line: i + 2,
            text: line.to_string(),
        };
        let fields: Vec<&str> = line.split(' ').collect();
        let [a, b, c] = fields.as_slice() else {
            return Err(bad());
        };
        let t = [a, b, c].map(|s| parse_index(s));
        let [Some(a), Some(b), Some(c)] = t else {
            return Err(bad());
        };
        if !(a < b && b < c) {
            return Err(bad());
        }
        triples.push([a, b, c]);
    }
    Ok(PtsFile {
        system: TripleSystem::new(n_points, triples)?,
        manifest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fischer_core::constructions::{affine_space, sym_fischer};

    #[test]
    fn round_trip_is_exact() {
        let m = Manifest::new("sym", Some(5));
        let text = write_pts(&sym_fischer(5), Some(&m));
        assert!(text.starts_with("pts v1 10\n# family=sym n=5\n"));
        let parsed = parse_pts(&text).unwrap();
        assert_eq!(parsed.system, sym_fischer(5));
        assert_eq!(parsed.manifest, Some(m));
        assert_eq!(write_pts(&parsed.system, parsed.manifest.as_ref()), text);
    }

    #[test]
    fn manifest_without_parameter() {
        let m = Manifest::new("hall81", None);
        let text = write_pts(&affine_space(1), Some(&m));
        assert_eq!(text, "pts v1 3\n# family=hall81\n0 1 2\n");
        assert_eq!(parse_pts(&text).unwrap().manifest, Some(m));
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "",
            "pts v1 3",
            "pts v2 3\n",
            "pts v1 03\n",
            "pts v1 3\n0 1 2",
            "pts v1 3\n0  1 2\n",
            "pts v1 3\n1 0 2\n",
            "pts v1 3\n0 1\n",
            "pts v1 3\n0 1 2 \n",
            "pts v1 3\n\n",
            "pts v1 3\n0 1 -2\n",
            "pts v1 3\r\n0 1 2\r\n",
            "pts v1 3\n0 1 3\n",
            "pts v1 4\n0 1 2\n0 1 3\n",
        ];
        for text in bad {
            assert!(parse_pts(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn comments_are_skipped() {
        let parsed = parse_pts("pts v1 3\n# hello\n0 1 2\n# family=x n=2\n").unwrap();
        assert_eq!(parsed.system.n_lines(), 1);
        assert_eq!(parsed.manifest, Some(Manifest::new("x", Some(2))));
        assert_eq!(parse_pts("pts v1 0\n").unwrap().system.n_points(), 0);
    }
}
