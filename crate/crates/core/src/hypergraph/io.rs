//! Text and JSON formats for hypergraphs.
//!
//! Text: a header line `r n m`, then `m` lines of `r` whitespace-separated
//! 0-based vertex ids. Anything after `#` on a line is ignored, as are
//! blank lines.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Edge, UniformHypergraph, VertexTag};
use crate::error::{Error, Result};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let nums = |line: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("not a non-negative integer: {t:?}")))
            })
            .collect()
    };
    let head = nums(hline, header)?;
    let [r, n, m] = head[..] else {
        return Err(parse_err(hline, "header must be `r n m`"));
    };
    if r < 2 {
        return Err(parse_err(hline, format!("uniformity must be at least 2, got {r}")));
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, body) in lines {
        last = line;
        if edges.len() == m {
            return Err(parse_err(line, format!("more than {m} edge lines")));
        }
        let raw = nums(line, body)?;
        if raw.len() != r {
            return Err(parse_err(line, format!("edge has {} vertices, expected {r}", raw.len())));
        }
        if let Some(&v) = raw.iter().find(|&&v| v >= n) {
            return Err(parse_err(line, format!("vertex {v} out of range for {n} vertices")));
        }
        let e = Edge::new(raw.clone());
        if e.vertices().windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(line, format!("edge {raw:?} repeats a vertex")));
        }
        if !seen.insert(e.clone()) {
            return Err(parse_err(line, format!("duplicate edge {raw:?}")));
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }
    Ok(UniformHypergraph::from_edges(r, n, edges))
}

/// Reads either the text format or, if the file starts with `{`, JSON.
pub fn parse_hypergraph_file(path: impl AsRef<Path>) -> Result<UniformHypergraph> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        hypergraph_from_json(&text)
    } else {
        parse_hypergraph(&text)
    }
}

pub fn write_hypergraph(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.r(), h.n(), h.num_edges());
    for e in h.edges() {
        let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TagJson {
    Main { vertex: usize },
    Copy { vertex: usize, index: usize },
    Additional { edge: Vec<usize>, index: usize },
}

impl From<&VertexTag> for TagJson {
    fn from(t: &VertexTag) -> Self {
        match t {
            VertexTag::Main(v) => TagJson::Main { vertex: *v },
            VertexTag::Copy { vertex, index } => TagJson::Copy {
                vertex: *vertex,
                index: *index,
            },
            VertexTag::Additional { edge, index } => TagJson::Additional {
                edge: edge.vertices().to_vec(),
                index: *index,
            },
        }
    }
}

impl From<TagJson> for VertexTag {
    fn from(t: TagJson) -> Self {
        match t {
            TagJson::Main { vertex } => VertexTag::Main(vertex),
            TagJson::Copy { vertex, index } => VertexTag::Copy { vertex, index },
            TagJson::Additional { edge, index } => VertexTag::Additional {
                edge: Edge::new(edge),
                index,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<TagJson>>,
}

impl From<&UniformHypergraph> for HypergraphJson {
    fn from(h: &UniformHypergraph) -> Self {
        HypergraphJson {
            r: h.r(),
            n: h.n(),
            edges: h.edges().iter().map(|e| e.vertices().to_vec()).collect(),
            provenance: h.provenance().map(|t| t.iter().map(TagJson::from).collect()),
        }
    }
}

impl TryFrom<HypergraphJson> for UniformHypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        let h = UniformHypergraph::new(j.r, j.n, j.edges)?;
        match j.provenance {
            Some(tags) => h.with_provenance(tags.into_iter().map(VertexTag::from).collect()),
            None => Ok(h),
        }
    }
}

pub fn hypergraph_to_json(h: &UniformHypergraph) -> String {
    serde_json::to_string(&HypergraphJson::from(h)).expect("plain data serializes")
}

pub fn hypergraph_from_json(text: &str) -> Result<UniformHypergraph> {
    let j: HypergraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        reason: e.to_string(),
    })?;
    j.try_into()
}
