//! JSON forms of graphs and digraphs, and hex codes.
//!
//! Vertices are 1-based on the wire and 0-based in memory. A graph may be
//! written either as an explicit pair list or as its canonical bitmask in hex
//! under `"code"`.

use serde::{Deserialize, Serialize};

use super::pairs::MAX_VERTICES;
use super::simple::{Digraph, Graph};
use crate::error::{Error, Result};

/// Formats a little-endian word vector as lowercase hex without a prefix.
pub fn to_hex_code(words: &[u64]) -> String {
    let top = words.iter().rposition(|&w| w != 0);
    match top {
        None => "0".to_string(),
        Some(t) => {
            let mut s = format!("{:x}", words[t]);
            for w in words[..t].iter().rev() {
                s.push_str(&format!("{w:016x}"));
            }
            s
        }
    }
}

/// Parses a hex code (optional `0x` prefix) into little-endian words.
pub fn parse_hex_code(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if t.is_empty() {
        return Err(Error::Parse("empty hex code".into()));
    }
    if !t.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::Parse(format!("not a hex code: {s:?}")));
    }
    let digits = t.trim_start_matches('0').as_bytes();
    let mut words = Vec::with_capacity(digits.len().div_ceil(16));
    let mut end = digits.len();
    while end > 0 {
        let start = end.saturating_sub(16);
        let chunk = std::str::from_utf8(&digits[start..end]).expect("ascii");
        words.push(u64::from_str_radix(chunk, 16).map_err(|e| Error::Parse(e.to_string()))?);
        end = start;
    }
    Ok(words)
}

fn to_zero_based(n: usize, pairs: &[[usize; 2]]) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&[v, w]| {
            if v == 0 || w == 0 || v > n || w > n {
                Err(Error::InvalidGraph(format!("pair ({v}, {w}) out of range 1..={n}")))
            } else {
                Ok((v - 1, w - 1))
            }
        })
        .collect()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidGraph("n must be positive".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!("n={n} exceeds the limit of {MAX_VERTICES} vertices")));
    }
    Ok(())
}

/// Wire form of a [`Graph`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: Some(g.edges().into_iter().map(|(v, w)| [v + 1, w + 1]).collect()),
            code: None,
        }
    }

    pub fn compact(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: None,
            code: Some(to_hex_code(g.words())),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        check_n(self.n)?;
        match (&self.edges, &self.code) {
            (Some(e), None) => Graph::from_edges(self.n, &to_zero_based(self.n, e)?),
            (None, Some(c)) => Graph::from_words(self.n, parse_hex_code(c)?),
            _ => Err(Error::InvalidGraph(
                "exactly one of \"edges\" and \"code\" must be given".into(),
            )),
        }
    }

    pub fn parse(s: &str) -> Result<Graph> {
        serde_json::from_str::<GraphJson>(s)?.to_graph()
    }
}

/// Wire form of a [`Digraph`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

impl DigraphJson {
    pub fn from_digraph(d: &Digraph) -> Self {
        DigraphJson {
            n: d.n(),
            arcs: Some(d.arcs().into_iter().map(|(v, w)| [v + 1, w + 1]).collect()),
            code: None,
        }
    }

    pub fn compact(d: &Digraph) -> Self {
        DigraphJson {
            n: d.n(),
            arcs: None,
            code: Some(to_hex_code(d.words())),
        }
    }

    pub fn to_digraph(&self) -> Result<Digraph> {
        check_n(self.n)?;
        match (&self.arcs, &self.code) {
            (Some(a), None) => Digraph::from_arcs(self.n, &to_zero_based(self.n, a)?),
            (None, Some(c)) => Digraph::from_words(self.n, parse_hex_code(c)?),
            _ => Err(Error::InvalidGraph(
                "exactly one of \"arcs\" and \"code\" must be given".into(),
            )),
        }
    }

    pub fn parse(s: &str) -> Result<Digraph> {
        serde_json::from_str::<DigraphJson>(s)?.to_digraph()
    }
}
