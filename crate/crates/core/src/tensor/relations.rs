//! Root-of-unity relations satisfied by eigenvectors of power hypergraphs.
//!
//! In `H^k_s`, vertices lying in exactly the same edges (the clones of a
//! base vertex, or the padding vertices of one edge) have entries whose
//! ratio is a `k`-th root of unity. The padding vertex `u` of a base edge
//! `e` further satisfies `λ x_u^{rs} = ε (x^e)^s` with `ε^k = 1`, where
//! `x^e` is the product over the main vertices of `e`. When `x^e` vanishes
//! so must `x_u`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{inf_norm, Eigenpair, Tolerances};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, UniformHypergraph, VertexId, VertexTag};

#[derive(Clone, Debug, PartialEq)]
pub struct RootOfUnityWitness {
    pub a: VertexId,
    pub b: VertexId,
    pub epsilon: Complex64,
    pub order: usize,
    pub deviation: f64,
}

fn unity_deviation(eps: Complex64, order: usize) -> f64 {
    let d = (eps.powi(order as i32) - 1.0).norm();
    d.max((eps.norm() - 1.0).abs())
}

/// Checks every clone-group ratio and every padding-vertex relation of a
/// tagged power hypergraph eigenpair. Returns the witnesses, or the worst
/// violation.
pub fn check_copy_relations(
    hks: &UniformHypergraph,
    p: &Eigenpair,
    tol: &Tolerances,
) -> Result<Vec<RootOfUnityWitness>> {
    let tags = hks.provenance().ok_or(Error::MissingProvenance)?;
    if p.vector.len() != hks.n() {
        return Err(Error::DimensionMismatch {
            expected: hks.n(),
            got: p.vector.len(),
        });
    }
    if p.lambda.norm() <= tol.zero {
        return Err(Error::ZeroEigenvalue);
    }
    let k = hks.r();
    let x = &p.vector;
    let cut = tol.zero * inf_norm(x);
    let scale = inf_norm(x).max(f64::MIN_POSITIVE);

    let mut groups: BTreeMap<GroupKey, Vec<VertexId>> = BTreeMap::new();
    let mut main_of: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (v, t) in tags.iter().enumerate() {
        let key = match t {
            VertexTag::Main(b) => {
                main_of.insert(*b, v);
                GroupKey::Vertex(*b)
            }
            VertexTag::Copy { vertex, .. } => GroupKey::Vertex(*vertex),
            VertexTag::Additional { edge, .. } => GroupKey::Edge(edge.clone()),
        };
        groups.entry(key).or_default().push(v);
    }

    let mut witnesses = Vec::new();
    let mut worst: Option<(f64, VertexId, VertexId)> = None;
    let record = |a: VertexId, b: VertexId, dev: f64, worst: &mut Option<(f64, VertexId, VertexId)>| {
        if !(dev < tol.root) && worst.is_none_or(|w| dev > w.0) {
            *worst = Some((dev, a, b));
        }
    };

    for members in groups.values() {
        let anchor = members[0];
        for &other in &members[1..] {
            let (xa, xb) = (x[other], x[anchor]);
            match (xa.norm() > cut, xb.norm() > cut) {
                (true, true) => {
                    let eps = xa / xb;
                    let dev = unity_deviation(eps, k);
                    record(other, anchor, dev, &mut worst);
                    witnesses.push(RootOfUnityWitness {
                        a: other,
                        b: anchor,
                        epsilon: eps,
                        order: k,
                        deviation: dev,
                    });
                }
                (false, false) => {}
                _ => record(other, anchor, (xa.norm() - xb.norm()).abs() / scale, &mut worst),
            }
        }
    }

    for u in 0..hks.n() {
        let VertexTag::Additional { edge, .. } = &tags[u] else {
            continue;
        };
        let Some(&ei) = hks.incident(u).first() else {
            continue;
        };
        let rs = hks.edges()[ei]
            .iter()
            .filter(|&w| !matches!(tags[w], VertexTag::Additional { .. }))
            .count();
        let r = edge.len();
        if r == 0 || rs % r != 0 {
            return Err(Error::PreconditionViolated(format!(
                "edge through vertex {u} does not have the shape of a power edge"
            )));
        }
        let s = (rs / r) as i32;
        let mut xe = Complex64::new(1.0, 0.0);
        let mut vanishes = false;
        let mut anchor = u;
        for b in edge.iter() {
            match main_of.get(&b) {
                Some(&m) if x[m].norm() > cut => {
                    xe *= x[m];
                    anchor = anchor.min(m);
                }
                _ => vanishes = true,
            }
        }
        let xu = x[u];
        if vanishes {
            if xu.norm() > cut {
                record(u, anchor, xu.norm() / scale, &mut worst);
            }
            continue;
        }
        if xu.norm() <= cut {
            continue;
        }
        let eps = p.lambda * xu.powi(rs as i32) / xe.powi(s);
        let dev = unity_deviation(eps, k);
        record(u, anchor, dev, &mut worst);
        witnesses.push(RootOfUnityWitness {
            a: u,
            b: anchor,
            epsilon: eps,
            order: k,
            deviation: dev,
        });
    }

    match worst {
        Some((deviation, a, b)) => Err(Error::RelationViolated { a, b, deviation }),
        None => Ok(witnesses),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum GroupKey {
    Vertex(VertexId),
    Edge(Edge),
}
