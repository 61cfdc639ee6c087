//! Uniform hypergraphs and the structural operations on them.
//!
//! Vertices are dense indices `0..n`. Edges are stored sorted, and the edge
//! list itself is kept in lexicographic order, so two hypergraphs built from
//! the same edge set compare equal regardless of input order.
//!
//! Hypergraphs produced by [`UniformHypergraph::extend`],
//! [`UniformHypergraph::expand`] and
//! [`UniformHypergraph::generalized_power`] carry a [`VertexTag`] per vertex
//! recording which base vertex or base edge it came from. The tags survive
//! vertex and edge removal, which is what lets eigenvectors and edge sets be
//! transported between a base hypergraph and its powers without relying on
//! positional conventions.

mod canon;
mod enumerate;
pub mod identities;
mod io;

use std::collections::HashMap;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, CANON_MAX_VERTICES};
pub use enumerate::{
    enumerate_induced_subgraphs, enumerate_subgraphs, EnumerationOptions, Subgraph,
    INDUCED_MAX_VERTICES, SUBGRAPH_MAX_EDGES,
};
pub use io::{
    hypergraph_from_json, hypergraph_to_json, parse_hypergraph, parse_hypergraph_file,
    write_hypergraph, HypergraphJson, TagJson,
};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A sorted set of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    pub fn new(vertices: impl Into<Vec<VertexId>>) -> Self {
        let mut v = vertices.into();
        v.sort_unstable();
        Edge(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<VertexId>> for Edge {
    fn from(v: Vec<VertexId>) -> Self {
        Edge::new(v)
    }
}

/// Where a vertex of a constructed power hypergraph came from.
///
/// `Main(v)` is the base vertex `v` itself, `Copy` is one of its `s - 1`
/// clones (index in `1..s`), and `Additional` is one of the `k - rs`
/// degree-one vertices padded onto the image of base edge `edge` (index in
/// `1..=k-rs`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexTag {
    Main(VertexId),
    Copy { vertex: VertexId, index: usize },
    Additional { edge: Edge, index: usize },
}

impl VertexTag {
    /// The base vertex for main and copy tags.
    pub fn base_vertex(&self) -> Option<VertexId> {
        match self {
            VertexTag::Main(v) | VertexTag::Copy { vertex: v, .. } => Some(*v),
            VertexTag::Additional { .. } => None,
        }
    }

    pub fn is_main(&self) -> bool {
        matches!(self, VertexTag::Main(_))
    }

    /// Renames the base vertices this tag refers to.
    pub fn map_base(&self, f: impl Fn(VertexId) -> VertexId) -> VertexTag {
        match self {
            VertexTag::Main(v) => VertexTag::Main(f(*v)),
            VertexTag::Copy { vertex, index } => VertexTag::Copy {
                vertex: f(*vertex),
                index: *index,
            },
            VertexTag::Additional { edge, index } => VertexTag::Additional {
                edge: Edge::new(edge.iter().map(&f).collect::<Vec<_>>()),
                index: *index,
            },
        }
    }
}

/// An `r`-uniform hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    provenance: Option<Vec<VertexTag>>,
}

/// Result of a removal or subgraph operation: the surviving hypergraph,
/// densely relabeled, plus `old_ids[new] = old`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub graph: UniformHypergraph,
    pub old_ids: Vec<VertexId>,
}

impl Reduced {
    /// Inverse of `old_ids`, sized for the parent hypergraph.
    pub fn new_ids(&self, parent_n: usize) -> Vec<Option<VertexId>> {
        let mut map = vec![None; parent_n];
        for (new, &old) in self.old_ids.iter().enumerate() {
            map[old] = Some(new);
        }
        map
    }
}

/// Checks raw edge lists against the uniform hypergraph invariants and
/// returns the first violation.
pub fn validate(r: usize, n: usize, edges: &[Vec<VertexId>]) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for raw in edges {
        check_edge(r, n, raw)?;
        let e = Edge::new(raw.clone());
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge(raw.clone()));
        }
    }
    Ok(())
}

fn check_edge(r: usize, n: usize, raw: &[VertexId]) -> Result<()> {
    if raw.len() != r {
        return Err(Error::NonUniformEdge {
            edge: raw.to_vec(),
            len: raw.len(),
            expected: r,
        });
    }
    if let Some(&v) = raw.iter().find(|&&v| v >= n) {
        return Err(Error::VertexIdOutOfRange { vertex: v, n });
    }
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertexInEdge(raw.to_vec()));
    }
    Ok(())
}

impl UniformHypergraph {
    pub fn new(r: usize, n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        validate(r, n, &edges)?;
        Ok(Self::from_edges(r, n, edges.into_iter().map(Edge::new).collect()))
    }

    /// Builds from already-valid edges; sorts the edge list.
    pub(crate) fn from_edges(r: usize, n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == r && e.iter().all(|v| v < n)));
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for v in e.iter() {
                incidence[v].push(i);
            }
        }
        UniformHypergraph {
            r,
            n,
            edges,
            incidence,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, tags: Vec<VertexTag>) -> Result<Self> {
        if tags.len() != self.n {
            return Err(Error::Validation(format!(
                "{} provenance tags for {} vertices",
                tags.len(),
                self.n
            )));
        }
        self.provenance = Some(tags);
        Ok(self)
    }

    pub fn without_provenance(mut self) -> Self {
        self.provenance = None;
        self
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn provenance(&self) -> Option<&[VertexTag]> {
        self.provenance.as_deref()
    }

    /// Indices of the edges containing `v`.
    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexIdOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.incidence[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn edge_index(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        (0..self.n)
            .filter(|&v| self.incidence[v].is_empty())
            .collect()
    }

    pub fn ensure_no_isolated(&self) -> Result<()> {
        match self.isolated_vertices().first() {
            Some(&v) => Err(Error::IsolatedVertex(v)),
            None => Ok(()),
        }
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// vertex. Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &ei in &self.incidence[v] {
                    for w in self.edges[ei].iter() {
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Some vertex other than `v` lying in exactly the same edges as `v`.
    pub fn twin_of(&self, v: VertexId) -> Option<VertexId> {
        if self.incidence[v].is_empty() {
            return None;
        }
        let first = &self.edges[self.incidence[v][0]];
        first
            .iter()
            .find(|&u| u != v && self.incidence[u] == self.incidence[v])
    }

    fn reduce(
        &self,
        drop_vertex: &[bool],
        keep_edge: impl Fn(usize) -> bool,
        cleanup: bool,
    ) -> Reduced {
        let kept: Vec<usize> = (0..self.edges.len()).filter(|&i| keep_edge(i)).collect();
        let mut covered = vec![false; self.n];
        for &i in &kept {
            for v in self.edges[i].iter() {
                covered[v] = true;
            }
        }
        let old_ids: Vec<VertexId> = (0..self.n)
            .filter(|&v| {
                !drop_vertex[v] && (covered[v] || !cleanup || self.incidence[v].is_empty())
            })
            .collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old] = new;
        }
        let edges = kept
            .iter()
            .map(|&i| Edge::new(self.edges[i].iter().map(|v| new_id[v]).collect::<Vec<_>>()))
            .collect();
        let mut graph = Self::from_edges(self.r, old_ids.len(), edges);
        if let Some(tags) = &self.provenance {
            graph.provenance = Some(old_ids.iter().map(|&v| tags[v].clone()).collect());
        }
        Reduced { graph, old_ids }
    }

    /// `H ◁ I`: removes the vertices of `I`, every edge meeting `I`, and every
    /// vertex left isolated by those edge deletions. Vertices that were
    /// already isolated are kept.
    pub fn remove_vertices(&self, removed: &[VertexId]) -> Result<Reduced> {
        self.remove_vertices_impl(removed, true)
    }

    pub(crate) fn remove_vertices_impl(&self, removed: &[VertexId], cleanup: bool) -> Result<Reduced> {
        let mut drop = vec![false; self.n];
        for &v in removed {
            if v >= self.n {
                return Err(Error::VertexIdOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            drop[v] = true;
        }
        let out = self.reduce(&drop, |i| !self.edges[i].iter().any(|v| drop[v]), cleanup);
        if out.graph.n == 0 {
            return Err(Error::EmptyResult);
        }
        Ok(out)
    }

    /// `H − A`: removes the edges of `A` and every vertex left isolated.
    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Reduced> {
        self.remove_edges_impl(removed, true)
    }

    pub(crate) fn remove_edges_impl(&self, removed: &[Edge], cleanup: bool) -> Result<Reduced> {
        let mut drop_edge = vec![false; self.edges.len()];
        for e in removed {
            let i = self
                .edge_index(e)
                .ok_or_else(|| Error::EdgeNotPresent(e.vertices().to_vec()))?;
            drop_edge[i] = true;
        }
        let out = self.reduce(&vec![false; self.n], |i| !drop_edge[i], cleanup);
        if out.graph.n == 0 {
            return Err(Error::EmptyResult);
        }
        Ok(out)
    }

    /// `H[S]`, relabeled in increasing order of `S`. Isolated vertices are
    /// kept.
    pub fn induced_subgraph(&self, subset: &[VertexId]) -> Result<Reduced> {
        let mut inside = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(Error::VertexIdOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            inside[v] = true;
        }
        let drop: Vec<bool> = inside.iter().map(|&b| !b).collect();
        Ok(self.reduce(&drop, |i| self.edges[i].iter().all(|v| inside[v]), false))
    }

    /// The subgraph formed by the given edges (by index) on the union of
    /// their vertices.
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> Reduced {
        let mut keep = vec![false; self.edges.len()];
        for &i in edge_indices {
            keep[i] = true;
        }
        let mut covered = vec![false; self.n];
        for (i, e) in self.edges.iter().enumerate() {
            if keep[i] {
                for v in e.iter() {
                    covered[v] = true;
                }
            }
        }
        let drop: Vec<bool> = covered.iter().map(|&c| !c).collect();
        self.reduce(&drop, |i| keep[i], false)
    }

    /// The `k`-expansion: `k - r` fresh degree-one vertices are appended to
    /// every edge. New vertices are numbered after the existing ones, edge by
    /// edge in edge order.
    ///
    /// Provenance composes: if `self` already carries tags (for instance
    /// from [`extend`](Self::extend)), new vertices are tagged against the
    /// base edge recovered from the main vertices of each edge.
    pub fn expand(&self, k: usize) -> Result<Self> {
        if k < self.r {
            return Err(Error::InvalidOrder(format!(
                "expansion order {k} is below uniformity {}",
                self.r
            )));
        }
        let extra = k - self.r;
        let base_tags: Vec<VertexTag> = match &self.provenance {
            Some(t) => t.clone(),
            None => (0..self.n).map(VertexTag::Main).collect(),
        };
        let mut tags = base_tags.clone();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut next = self.n;
        for e in &self.edges {
            let base_edge = Edge::new(
                e.iter()
                    .filter_map(|v| match &base_tags[v] {
                        VertexTag::Main(b) => Some(*b),
                        _ => None,
                    })
                    .collect::<Vec<_>>(),
            );
            let already = e
                .iter()
                .filter(|&v| matches!(base_tags[v], VertexTag::Additional { .. }))
                .count();
            let mut verts = e.vertices().to_vec();
            for j in 1..=extra {
                verts.push(next);
                tags.push(VertexTag::Additional {
                    edge: base_edge.clone(),
                    index: already + j,
                });
                next += 1;
            }
            edges.push(Edge::new(verts));
        }
        let mut out = Self::from_edges(k, next, edges);
        out.provenance = Some(tags);
        Ok(out)
    }

    /// The `s`-extension: every vertex `v` becomes the set `{v} ∪ copies(v)`.
    /// Main vertices keep their ids; copy `c` (in `1..s`) of `v` gets id
    /// `n + v(s-1) + c - 1`. Tags refer to the vertices of `self`.
    pub fn extend(&self, s: usize) -> Result<Self> {
        if s < 1 {
            return Err(Error::InvalidOrder("extension factor must be at least 1".into()));
        }
        let n = self.n;
        let copy_id = |v: usize, c: usize| n + v * (s - 1) + (c - 1);
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut verts = e.vertices().to_vec();
                for v in e.iter() {
                    for c in 1..s {
                        verts.push(copy_id(v, c));
                    }
                }
                Edge::new(verts)
            })
            .collect();
        let mut tags: Vec<VertexTag> = (0..n).map(VertexTag::Main).collect();
        for v in 0..n {
            for c in 1..s {
                tags.push(VertexTag::Copy {
                    vertex: v,
                    index: c,
                });
            }
        }
        let mut out = Self::from_edges(self.r * s, n * s, edges);
        out.provenance = Some(tags);
        Ok(out)
    }

    /// `H^k_s = (H_s)^k`. Main vertex `v` of the base keeps id `v`.
    pub fn generalized_power(&self, s: usize, k: usize) -> Result<Self> {
        if s < 1 {
            return Err(Error::InvalidOrder("extension factor must be at least 1".into()));
        }
        if k < self.r * s {
            return Err(Error::InvalidOrder(format!(
                "power order {k} is below r·s = {}",
                self.r * s
            )));
        }
        self.extend(s)?.expand(k)
    }

    /// The base edge a tagged edge descends from, read off its main vertices.
    pub fn base_edge_of(&self, edge_index: usize) -> Option<Edge> {
        let tags = self.provenance.as_ref()?;
        Some(Edge::new(
            self.edges[edge_index]
                .iter()
                .filter_map(|v| match &tags[v] {
                    VertexTag::Main(b) => Some(*b),
                    _ => None,
                })
                .collect::<Vec<_>>(),
        ))
    }

    /// Lookup table from tag to vertex.
    pub fn tag_index(&self) -> Option<HashMap<&VertexTag, VertexId>> {
        let tags = self.provenance.as_ref()?;
        Some(tags.iter().enumerate().map(|(v, t)| (t, v)).collect())
    }

    /// `A^k_s`: the edges of this tagged power hypergraph whose base edge is
    /// in `base_edges`.
    pub fn edges_over(&self, base_edges: &[Edge]) -> Result<Vec<Edge>> {
        if self.provenance.is_none() {
            return Err(Error::MissingProvenance);
        }
        let wanted: std::collections::HashSet<&Edge> = base_edges.iter().collect();
        Ok((0..self.edges.len())
            .filter(|&i| {
                self.base_edge_of(i)
                    .map(|b| wanted.contains(&b))
                    .unwrap_or(false)
            })
            .map(|i| self.edges[i].clone())
            .collect())
    }

    /// Renames vertices by `perm[old] = new`.
    pub fn relabel(&self, perm: &[VertexId]) -> Self {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.iter().map(|v| perm[v]).collect::<Vec<_>>()))
            .collect();
        let mut out = Self::from_edges(self.r, self.n, edges);
        if let Some(tags) = &self.provenance {
            let mut t = tags.clone();
            for (old, tag) in tags.iter().enumerate() {
                t[perm[old]] = tag.clone();
            }
            out.provenance = Some(t);
        }
        out
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges = (0..n).map(|i| Edge::new(vec![i, (i + 1) % n])).collect();
        Self::from_edges(2, n, edges)
    }

    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        let edges = (0..n.saturating_sub(1))
            .map(|i| Edge::new(vec![i, i + 1]))
            .collect();
        Self::from_edges(2, n, edges)
    }

    /// The star `S_n` on `n` vertices with center 0.
    pub fn star(n: usize) -> Self {
        assert!(n >= 2);
        let edges = (1..n).map(|i| Edge::new(vec![0, i])).collect();
        Self::from_edges(2, n, edges)
    }

    pub fn complete_graph(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push(Edge::new(vec![i, j]));
            }
        }
        Self::from_edges(2, n, edges)
    }

    pub fn single_edge(r: usize) -> Self {
        assert!(r >= 2);
        Self::from_edges(r, r, vec![Edge::new((0..r).collect::<Vec<_>>())])
    }
}
