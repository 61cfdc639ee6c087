//! Exhaustive enumeration of induced and edge-generated subgraphs.
//!
//! Both enumerators walk bitmasks in parallel and merge into a map keyed by
//! canonical form, so the output order never depends on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{canonical_form, CanonicalForm, UniformHypergraph, VertexId};
use crate::error::{Error, Result};

pub const INDUCED_MAX_VERTICES: usize = 16;
pub const SUBGRAPH_MAX_EDGES: usize = 20;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Keep one representative per isomorphism class.
    pub dedup: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { dedup: true }
    }
}

/// A realized subgraph together with where it sits in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: UniformHypergraph,
    /// Parent ids of the subgraph's vertices, `vertices[new] = old`.
    pub vertices: Vec<VertexId>,
    /// Parent edge indices.
    pub edges: Vec<usize>,
    pub form: CanonicalForm,
}

type Key = (CanonicalForm, Vec<VertexId>, Vec<usize>);

fn collect(
    masks: impl ParallelIterator<Item = u64>,
    build: impl Fn(u64) -> Option<Result<Subgraph>> + Sync,
    opts: EnumerationOptions,
) -> Result<Vec<Subgraph>> {
    let merged = masks
        .filter_map(&build)
        .try_fold(BTreeMap::<Key, Subgraph>::new, |mut acc, sub| {
            let sub = sub?;
            insert(&mut acc, sub, opts.dedup);
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (_, sub) in b {
                insert(&mut a, sub, opts.dedup);
            }
            Ok(a)
        })?;
    Ok(merged.into_values().collect())
}

fn insert(acc: &mut BTreeMap<Key, Subgraph>, sub: Subgraph, dedup: bool) {
    if dedup {
        let existing = acc
            .range((sub.form.clone(), Vec::new(), Vec::new())..)
            .next()
            .filter(|(k, _)| k.0 == sub.form)
            .map(|(k, _)| k.clone());
        match existing {
            Some(k) if (&k.1, &k.2) <= (&sub.vertices, &sub.edges) => return,
            Some(k) => {
                acc.remove(&k);
            }
            None => {}
        }
    }
    acc.insert(
        (sub.form.clone(), sub.vertices.clone(), sub.edges.clone()),
        sub,
    );
}

/// Every induced subgraph `H[S]`, `S` nonempty, without isolated vertices.
pub fn enumerate_induced_subgraphs(
    h: &UniformHypergraph,
    opts: EnumerationOptions,
) -> Result<Vec<Subgraph>> {
    let n = h.n();
    if n > INDUCED_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for induced subgraph enumeration",
            got: n,
            cap: INDUCED_MAX_VERTICES,
        });
    }
    let edge_masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, v| m | 1 << v))
        .collect();
    let build = |mask: u64| -> Option<Result<Subgraph>> {
        let mut covered = 0u64;
        let mut edges = Vec::new();
        for (i, &em) in edge_masks.iter().enumerate() {
            if em & !mask == 0 {
                covered |= em;
                edges.push(i);
            }
        }
        if covered != mask {
            return None;
        }
        let vertices: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let red = h.edge_subgraph(&edges);
        debug_assert_eq!(red.old_ids, vertices);
        Some(finish(red.graph, vertices, edges))
    };
    collect((1u64..1 << n).into_par_iter(), build, opts)
}

/// Every subgraph generated by a nonempty edge subset, on the union of its
/// edges.
pub fn enumerate_subgraphs(
    h: &UniformHypergraph,
    opts: EnumerationOptions,
) -> Result<Vec<Subgraph>> {
    let m = h.num_edges();
    if m > SUBGRAPH_MAX_EDGES {
        return Err(Error::TooLarge {
            what: "edge count for subgraph enumeration",
            got: m,
            cap: SUBGRAPH_MAX_EDGES,
        });
    }
    let build = |mask: u64| -> Option<Result<Subgraph>> {
        let edges: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let red = h.edge_subgraph(&edges);
        Some(finish(red.graph, red.old_ids, edges))
    };
    collect((1u64..1 << m).into_par_iter(), build, opts)
}

fn finish(graph: UniformHypergraph, vertices: Vec<VertexId>, edges: Vec<usize>) -> Result<Subgraph> {
    let graph = graph.without_provenance();
    let form = canonical_form(&graph)?;
    Ok(Subgraph {
        graph,
        vertices,
        edges,
        form,
    })
}
