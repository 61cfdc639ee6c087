//! Zero-padding an eigenpair of `H ◁ v` back up to `H`.
//!
//! Padding by zeros is valid when `v` has a twin (a vertex in exactly the
//! same edges) or when every edge through `v` holds another degree-one
//! vertex: in both cases every equation touched by the removal sees a zero
//! factor.

use num_complex::Complex64;

use super::{verify_eigenpair, ComplexVec, Eigenpair, Tolerances};
use crate::error::{Error, Result};
use crate::hypergraph::{Reduced, UniformHypergraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftRule {
    /// `v` has the given twin.
    Twin(VertexId),
    /// Every edge through `v` has another degree-one vertex.
    DegreeOne,
}

fn pad(h: &UniformHypergraph, red: &Reduced, p: &Eigenpair, tol: &Tolerances) -> Result<Eigenpair> {
    if p.vector.len() != red.graph.n() {
        return Err(Error::DimensionMismatch {
            expected: red.graph.n(),
            got: p.vector.len(),
        });
    }
    let mut y: ComplexVec = vec![Complex64::new(0.0, 0.0); h.n()];
    for (new, &old) in red.old_ids.iter().enumerate() {
        y[old] = p.vector[new];
    }
    verify_eigenpair(h, p.lambda, &y, tol)
}

fn check_vertex(h: &UniformHypergraph, v: VertexId) -> Result<()> {
    if v >= h.n() {
        return Err(Error::VertexIdOutOfRange { vertex: v, n: h.n() });
    }
    Ok(())
}

/// Lifts an eigenpair of `H ◁ v` to `H`, where `u` is a twin of `v`.
pub fn duplicate_vertex_lift(
    h: &UniformHypergraph,
    v: VertexId,
    u: VertexId,
    p: &Eigenpair,
    tol: &Tolerances,
) -> Result<Eigenpair> {
    check_vertex(h, v)?;
    check_vertex(h, u)?;
    if u == v || h.incident(u) != h.incident(v) || h.incident(v).is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "vertices {u} and {v} do not lie in exactly the same edges"
        )));
    }
    let red = h.remove_vertices(&[v])?;
    pad(h, &red, p, tol)
}

fn has_degree_one_partners(h: &UniformHypergraph, v: VertexId) -> bool {
    h.incident(v).iter().all(|&ei| {
        h.edges()[ei]
            .iter()
            .any(|w| w != v && h.incident(w).len() == 1)
    })
}

/// Lifts an eigenpair of `H ◁ v` to `H` when every edge through `v` has a
/// degree-one vertex other than `v`.
pub fn degree_one_lift(
    h: &UniformHypergraph,
    v: VertexId,
    p: &Eigenpair,
    tol: &Tolerances,
) -> Result<Eigenpair> {
    check_vertex(h, v)?;
    if h.incident(v).is_empty() || !has_degree_one_partners(h, v) {
        return Err(Error::PreconditionViolated(format!(
            "some edge through vertex {v} has no other degree-one vertex"
        )));
    }
    let red = h.remove_vertices(&[v])?;
    pad(h, &red, p, tol)
}

/// The rule that justifies removing `v` from `h`, if any.
pub fn lift_rule(h: &UniformHypergraph, v: VertexId) -> Option<LiftRule> {
    if h.incident(v).is_empty() {
        return None;
    }
    if let Some(u) = h.twin_of(v) {
        return Some(LiftRule::Twin(u));
    }
    has_degree_one_partners(h, v).then_some(LiftRule::DegreeOne)
}

/// Lifts an eigenpair of `H ◁ I` to `H` by removing the vertices of `I` one
/// at a time and zero-padding back up the chain, verifying every step.
///
/// Vertices are taken in the given order, skipping any already removed by
/// an earlier step; when the next vertex admits no rule, later vertices of
/// `I` are tried first.
pub fn lift_through_removals(
    h: &UniformHypergraph,
    removed: &[VertexId],
    p: &Eigenpair,
    tol: &Tolerances,
) -> Result<(Eigenpair, Vec<(VertexId, LiftRule)>)> {
    for &v in removed {
        check_vertex(h, v)?;
    }
    // Forward: graphs H_0 = H, H_{j+1} = H_j ◁ v_j, tracking ids in H.
    let mut chain: Vec<(UniformHypergraph, VertexId, LiftRule)> = Vec::new();
    let mut current = h.clone();
    let mut ids: Vec<VertexId> = (0..h.n()).collect();
    let mut pending: Vec<VertexId> = removed.to_vec();
    loop {
        let present: Vec<(usize, VertexId)> = pending
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| ids.iter().position(|&x| x == v).map(|local| (i, local)))
            .collect();
        if present.is_empty() {
            break;
        }
        let choice = present
            .iter()
            .find_map(|&(i, local)| lift_rule(&current, local).map(|rule| (i, local, rule)));
        let Some((i, local, rule)) = choice else {
            return Err(Error::PreconditionViolated(format!(
                "no removal rule applies to vertex {} of the remaining set",
                ids[present[0].1]
            )));
        };
        pending.remove(i);
        let red = current.remove_vertices(&[local])?;
        ids = red.old_ids.iter().map(|&j| ids[j]).collect();
        chain.push((std::mem::replace(&mut current, red.graph), local, rule));
    }
    if p.vector.len() != current.n() {
        return Err(Error::DimensionMismatch {
            expected: current.n(),
            got: p.vector.len(),
        });
    }
    let mut pair = verify_eigenpair(&current, p.lambda, &p.vector, tol)?;
    let mut steps = Vec::with_capacity(chain.len());
    for (graph, local, rule) in chain.into_iter().rev() {
        pair = match rule {
            LiftRule::Twin(u) => duplicate_vertex_lift(&graph, local, u, &pair, tol)?,
            LiftRule::DegreeOne => degree_one_lift(&graph, local, &pair, tol)?,
        };
        steps.push((local, rule));
    }
    steps.reverse();
    Ok((pair, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::verify_eigenpair;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn twin_lift_on_extended_path() {
        let tol = Tolerances::default();
        let p3 = UniformHypergraph::path(3);
        let h = p3.extend(2).unwrap();
        // copy of vertex 0 is vertex 3; removing it kills edge {0,1,3,4}
        let red = h.remove_vertices(&[3]).unwrap();
        assert_eq!(red.graph.num_edges(), 1);
        let x = vec![c(1.0); red.graph.n()];
        let p = verify_eigenpair(&red.graph, c(1.0), &x, &tol).unwrap();
        let lifted = duplicate_vertex_lift(&h, 3, 0, &p, &tol).unwrap();
        assert_eq!(lifted.lambda, c(1.0));
        assert_eq!(lifted.vector[0], c(0.0));
        assert_eq!(lifted.vector[3], c(0.0));
        assert!(matches!(
            duplicate_vertex_lift(&h, 3, 1, &p, &tol),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn degree_one_lift_on_expanded_cycle() {
        let tol = Tolerances::default();
        let h = UniformHypergraph::cycle(4).expand(3).unwrap();
        let red = h.remove_vertices(&[0]).unwrap();
        // C₄³ ◁ 0 is P₃³; take the all-ones-like eigenpair of one edge.
        let g = &red.graph;
        let e = g.edges()[0].clone();
        let mut x = vec![c(0.0); g.n()];
        for v in e.iter() {
            x[v] = c(1.0);
        }
        let p = verify_eigenpair(g, c(1.0), &x, &tol).unwrap();
        let lifted = degree_one_lift(&h, 0, &p, &tol).unwrap();
        assert!(lifted.residual < 1e-12);

        let c4 = UniformHypergraph::cycle(4);
        assert!(matches!(
            degree_one_lift(&c4, 0, &p, &tol),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn degree_one_vertex_itself() {
        let h = UniformHypergraph::path(3).expand(4).unwrap();
        let leaf = h
            .edges()[0]
            .iter()
            .find(|&w| h.degree(w).unwrap() == 1)
            .unwrap();
        assert_eq!(lift_rule(&h, leaf).map(|r| matches!(r, LiftRule::Twin(_))), Some(true));
    }

    #[test]
    fn chain_lift() {
        let tol = Tolerances::default();
        let h = UniformHypergraph::path(4).expand(4).unwrap();
        let red = h.remove_vertices(&[0, 1]).unwrap();
        assert_eq!(red.graph.num_edges(), 1);
        let x = vec![c(1.0); red.graph.n()];
        let p = verify_eigenpair(&red.graph, c(1.0), &x, &tol).unwrap();
        let (lifted, steps) = lift_through_removals(&h, &[0, 1], &p, &tol).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(lifted.residual < 1e-12);
        for (new, &old) in red.old_ids.iter().enumerate() {
            assert_eq!(lifted.vector[old], p.vector[new]);
        }
        assert_eq!(lifted.vector[0], c(0.0));

        let c4 = UniformHypergraph::cycle(4);
        let red = c4.remove_vertices(&[0]).unwrap();
        let s2 = 2f64.sqrt();
        let p = verify_eigenpair(&red.graph, c(s2), &[c(1.0), c(s2), c(1.0)], &tol).unwrap();
        assert!(matches!(
            lift_through_removals(&c4, &[0], &p, &tol),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
