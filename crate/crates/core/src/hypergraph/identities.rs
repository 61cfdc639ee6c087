//! Executable forms of the removal identities for power hypergraphs.
//!
//! * edge/vertex: if `v` has degree one and lies in `e`, then `H ◁ v = H − e`.
//! * removal/edge: `(H − A)^k_s = H^k_s − A^k_s`.
//! * removal/vertex: `(H ◁ I)^k_s = H^k_s ◁ I` for a set `I` of main vertices.
//!
//! The two power identities are compared through provenance: every vertex
//! is named by its tag expressed in the ids of the original `H`, so the
//! comparison is an exact labeled equality rather than an isomorphism test,
//! and it works at sizes beyond the canonical-form cap. Where both sides are
//! small enough their canonical forms are compared as well.

use std::collections::BTreeSet;
use std::fmt;

use super::{canonical_form, Edge, Reduced, UniformHypergraph, VertexId, VertexTag};
use crate::error::{Error, Result};

/// How removals treat vertices left isolated. `SkipIsolatedCleanup` is a
/// deliberate defect used to mutation-test the identity checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RemovalMode {
    #[default]
    Exact,
    SkipIsolatedCleanup,
}

impl RemovalMode {
    fn cleanup(self) -> bool {
        self == RemovalMode::Exact
    }

    pub fn remove_vertices(self, h: &UniformHypergraph, i: &[VertexId]) -> Result<Reduced> {
        h.remove_vertices_impl(i, self.cleanup())
    }

    pub fn remove_edges(self, h: &UniformHypergraph, a: &[Edge]) -> Result<Reduced> {
        h.remove_edges_impl(a, self.cleanup())
    }
}

/// A labeled snapshot of a tagged hypergraph: vertex tags plus edges as tag
/// sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvenanceForm {
    pub vertices: BTreeSet<VertexTag>,
    pub edges: BTreeSet<Vec<VertexTag>>,
}

impl ProvenanceForm {
    pub fn of(h: &UniformHypergraph) -> Result<Self> {
        Self::translated(h, |v| v)
    }

    /// Builds the form after renaming base vertices through `map`.
    pub fn translated(h: &UniformHypergraph, map: impl Fn(VertexId) -> VertexId) -> Result<Self> {
        let tags = h.provenance().ok_or(Error::MissingProvenance)?;
        let tags: Vec<VertexTag> = tags.iter().map(|t| t.map_base(&map)).collect();
        let edges = h
            .edges()
            .iter()
            .map(|e| {
                let mut t: Vec<VertexTag> = e.iter().map(|v| tags[v].clone()).collect();
                t.sort();
                t
            })
            .collect();
        Ok(ProvenanceForm {
            vertices: tags.into_iter().collect(),
            edges,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityOutcome {
    pub holds: bool,
    pub left: String,
    pub right: String,
}

impl fmt::Display for IdentityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "left {} / right {}", self.left, self.right)
    }
}

fn describe(r: &Result<Reduced>) -> String {
    match r {
        Ok(red) => match canonical_form(&red.graph) {
            Ok(f) => format!("{f} ids {:?}", red.old_ids),
            Err(_) => format!("n={} m={} ids {:?}", red.graph.n(), red.graph.num_edges(), red.old_ids),
        },
        Err(e) => format!("error: {e}"),
    }
}

/// `H ◁ v = H − e` for the edge `e` holding degree-one vertex `v`. The two
/// sides must agree including the map back to `H`.
pub fn edge_vertex_identity(
    h: &UniformHypergraph,
    v: VertexId,
    mode: RemovalMode,
) -> Result<IdentityOutcome> {
    if h.degree(v)? != 1 {
        return Err(Error::PreconditionViolated(format!(
            "vertex {v} has degree {}, expected 1",
            h.degree(v)?
        )));
    }
    let e = h.edges()[h.incident(v)[0]].clone();
    let left = mode.remove_vertices(h, &[v]);
    let right = mode.remove_edges(h, &[e]);
    let holds = match (&left, &right) {
        (Ok(a), Ok(b)) => {
            a == b
                && match (canonical_form(&a.graph), canonical_form(&b.graph)) {
                    (Ok(x), Ok(y)) => x == y,
                    _ => true,
                }
        }
        (Err(Error::EmptyResult), Err(Error::EmptyResult)) => true,
        _ => false,
    };
    Ok(IdentityOutcome {
        holds,
        left: describe(&left),
        right: describe(&right),
    })
}

fn compare_power(
    left: Result<(UniformHypergraph, Vec<VertexId>)>,
    right: Result<Reduced>,
) -> Result<IdentityOutcome> {
    match (left, right) {
        (Ok((lg, old_ids)), Ok(rr)) => {
            let lf = ProvenanceForm::translated(&lg, |v| old_ids[v])?;
            let rf = ProvenanceForm::of(&rr.graph)?;
            let mut holds = lf == rf;
            let (lc, rc) = (canonical_form(&lg), canonical_form(&rr.graph));
            if let (Ok(a), Ok(b)) = (&lc, &rc) {
                holds &= a == b;
            }
            Ok(IdentityOutcome {
                holds,
                left: format!("n={} m={}", lg.n(), lg.num_edges()),
                right: format!("n={} m={}", rr.graph.n(), rr.graph.num_edges()),
            })
        }
        (Err(Error::EmptyResult), Err(Error::EmptyResult)) => Ok(IdentityOutcome {
            holds: true,
            left: "empty".into(),
            right: "empty".into(),
        }),
        (l, r) => Ok(IdentityOutcome {
            holds: false,
            left: l.map(|(g, _)| format!("n={}", g.n())).unwrap_or_else(|e| e.to_string()),
            right: r.map(|g| format!("n={}", g.graph.n())).unwrap_or_else(|e| e.to_string()),
        }),
    }
}

/// `(H − A)^k_s = H^k_s − A^k_s`, with `A^k_s` read from provenance.
pub fn edge_removal_power_identity(
    h: &UniformHypergraph,
    a: &[Edge],
    s: usize,
    k: usize,
    mode: RemovalMode,
) -> Result<IdentityOutcome> {
    let hks = h.generalized_power(s, k)?;
    let left = mode
        .remove_edges(h, a)
        .and_then(|red| Ok((red.graph.generalized_power(s, k)?, red.old_ids)));
    let image = hks.edges_over(a)?;
    if image.len() != a.len() {
        return Err(Error::EdgeNotPresent(
            a.iter().flat_map(|e| e.vertices().to_vec()).collect(),
        ));
    }
    let right = mode.remove_edges(&hks, &image);
    compare_power(left, right)
}

/// `(H ◁ I)^k_s = H^k_s ◁ I`; main vertices of `H^k_s` keep their base ids.
pub fn vertex_removal_power_identity(
    h: &UniformHypergraph,
    i: &[VertexId],
    s: usize,
    k: usize,
    mode: RemovalMode,
) -> Result<IdentityOutcome> {
    let hks = h.generalized_power(s, k)?;
    let left = mode
        .remove_vertices(h, i)
        .and_then(|red| Ok((red.graph.generalized_power(s, k)?, red.old_ids)));
    let right = mode.remove_vertices(&hks, i);
    compare_power(left, right)
}
