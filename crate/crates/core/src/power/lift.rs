//! Moving eigenpairs between a base hypergraph and its generalized power.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergraph::{UniformHypergraph, VertexId, VertexTag};
use crate::tensor::{verify_eigenpair, ComplexVec, Eigenpair, Tolerances};

/// Node budget for the finite root-choice searches.
pub const ROOT_SEARCH_CAP: usize = 1_000_000;

fn unit(j: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64)
}

/// The `j`-th of the `q` values `z^{1/q}`, `j = 0` being the principal one.
fn root(z: Complex64, q: usize, j: usize) -> Complex64 {
    Complex64::from_polar(
        z.norm().powf(1.0 / q as f64),
        (z.arg() + 2.0 * PI * j as f64) / q as f64,
    )
}

/// Index `j` with `z ≈ e^{2πij/k}`, or `None` if `z` is not near a `k`-th
/// root of unity.
fn unity_index(z: Complex64, k: usize, tol: f64) -> Option<usize> {
    let j = (z.arg() * k as f64 / (2.0 * PI)).round() as i64;
    let j = j.rem_euclid(k as i64) as usize;
    ((z - unit(j, k)).norm() < tol).then_some(j)
}

/// Splits variables into groups linked by shared constraints.
fn constraint_components(n: usize, constraints: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in constraints {
        for w in c.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let rt = find(&mut parent, v);
        groups.entry(rt).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Finds `a ∈ Z_k^n` with `Σ_{v∈S} a_v ≡ t (mod k)` for every `(S, t)`.
/// Depth-first with a check whenever a constraint becomes fully assigned.
/// `Err(nodes)` when no solution exists or the budget runs out.
fn solve_phases(
    n: usize,
    constraints: &[(Vec<usize>, usize)],
    k: usize,
    budget: usize,
) -> std::result::Result<Vec<usize>, usize> {
    let sets: Vec<Vec<usize>> = constraints.iter().map(|c| c.0.clone()).collect();
    let mut a = vec![0usize; n];
    let mut nodes = 0usize;
    for comp in constraint_components(n, &sets) {
        let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // closing[i]: constraints whose last variable (in `comp` order) is comp[i]
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); comp.len()];
        for (ci, (set, _)) in constraints.iter().enumerate() {
            if let Some(last) = set.iter().filter_map(|v| pos.get(v)).max() {
                closing[*last].push(ci);
            }
        }
        let mut choice = vec![0usize; comp.len()];
        let mut depth = 0usize;
        loop {
            if depth == comp.len() {
                break;
            }
            if choice[depth] == k {
                if depth == 0 {
                    return Err(nodes);
                }
                choice[depth] = 0;
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            nodes += 1;
            if nodes > budget {
                return Err(nodes);
            }
            a[comp[depth]] = choice[depth];
            let ok = closing[depth].iter().all(|&ci| {
                let (set, t) = &constraints[ci];
                set.iter().map(|&v| a[v]).sum::<usize>() % k == *t % k
            });
            if ok {
                depth += 1;
            } else {
                choice[depth] += 1;
            }
        }
    }
    Ok(a)
}

/// Lifts a strictly nonzero eigenpair `(β, y)` of `h` to an eigenpair of
/// `H^k_s` with eigenvalue `λ`, where `λ^k = β^{rs}`.
pub fn lift_eigenpair(
    h: &UniformHypergraph,
    s: usize,
    k: usize,
    beta: Complex64,
    y: &[Complex64],
    lambda: Complex64,
    tol: &Tolerances,
) -> Result<Eigenpair> {
    let hks = h.generalized_power(s, k)?;
    lift_onto(h, &hks, s, k, beta, y, lambda, tol)
}

/// As [`lift_eigenpair`], onto an already built tagged `H^k_s`.
///
/// Main and copy vertices of `v` start at `ρ_v = (y_v^r)^{1/k}` and the
/// padding vertices of `e` at `(β^{-1} y^e)^{1/k}`. Each edge product then
/// misses its target `λ β^{-1} y^e` by a `k`-th root of unity, which is
/// absorbed by the first padding vertex of the edge, or, when edges carry
/// no padding, by phases on the main vertices solving a linear system mod
/// `k`.
#[allow(clippy::too_many_arguments)]
pub fn lift_onto(
    h: &UniformHypergraph,
    hks: &UniformHypergraph,
    s: usize,
    k: usize,
    beta: Complex64,
    y: &[Complex64],
    lambda: Complex64,
    tol: &Tolerances,
) -> Result<Eigenpair> {
    let base = verify_eigenpair(h, beta, y, tol)?;
    if !base.is_strictly_nonzero(tol) {
        return Err(Error::PreconditionViolated(
            "base eigenpair must be strictly nonzero".into(),
        ));
    }
    if lambda.norm() <= tol.zero {
        return Err(Error::ZeroEigenvalue);
    }
    let r = h.r();
    let rs = r * s;
    if hks.r() != k || k < rs {
        return Err(Error::InvalidOrder(format!(
            "power hypergraph has uniformity {}, expected {k} ≥ {rs}",
            hks.r()
        )));
    }
    let target = beta.powi(rs as i32);
    if (lambda.powi(k as i32) - target).norm() > tol.dedup * target.norm().max(1.0) {
        return Err(Error::PreconditionViolated(format!(
            "λ^k = {} differs from β^(rs) = {}",
            lambda.powi(k as i32),
            target
        )));
    }
    let tags = hks.provenance().ok_or(Error::MissingProvenance)?;
    let index = hks.tag_index().ok_or(Error::MissingProvenance)?;
    let y = &base.vector;
    let m = k - rs;

    let rho: ComplexVec = y.iter().map(|&v| root(v.powi(r as i32), k, 0)).collect();
    let edge_term = |e: &crate::hypergraph::Edge| -> Complex64 {
        e.iter().map(|v| y[v]).product::<Complex64>() / beta
    };
    let mut x: ComplexVec = Vec::with_capacity(hks.n());
    for t in tags {
        x.push(match t {
            VertexTag::Main(v) | VertexTag::Copy { vertex: v, .. } => {
                *rho.get(*v).ok_or(Error::VertexIdOutOfRange { vertex: *v, n: h.n() })?
            }
            VertexTag::Additional { edge, .. } => root(edge_term(edge), k, 0),
        });
    }

    // Mismatch index j_E with Π_{w∈E} x_w = ω^{j_E} λ β^{-1} y^e.
    let mut mismatch = Vec::with_capacity(hks.num_edges());
    for (i, e) in hks.edges().iter().enumerate() {
        let be = hks.base_edge_of(i).ok_or(Error::MissingProvenance)?;
        let have: Complex64 = e.iter().map(|w| x[w]).product();
        let want = lambda * edge_term(&be);
        let j = unity_index(have / want, k, tol.root).ok_or_else(|| {
            Error::PreconditionViolated(format!(
                "edge {e:?}: product is not a root of unity times its target"
            ))
        })?;
        mismatch.push((be, j));
    }

    if m >= 1 {
        for (be, j) in mismatch {
            if j == 0 {
                continue;
            }
            let u = *index
                .get(&VertexTag::Additional {
                    edge: be.clone(),
                    index: 1,
                })
                .ok_or(Error::MissingProvenance)?;
            x[u] *= unit(k - j, k);
        }
    } else {
        let constraints: Vec<(Vec<usize>, usize)> = mismatch
            .iter()
            .map(|(be, j)| (be.vertices().to_vec(), (k - j) % k))
            .collect();
        let phases = solve_phases(h.n(), &constraints, k, ROOT_SEARCH_CAP)
            .map_err(Error::LiftSearchExhausted)?;
        for (w, t) in tags.iter().enumerate() {
            if let VertexTag::Main(v) = t {
                x[w] *= unit(phases[*v], k);
            }
        }
    }
    verify_eigenpair(hks, lambda, &x, tol)
}

/// Recovers a strictly nonzero eigenpair of `h` from a strictly nonzero
/// eigenpair of the tagged power `hks` built from it.
///
/// Candidates for `β` are the `rs`-th roots of `λ^k`, principal first; for
/// each, `y_v` ranges over the `r`-th roots of `x_v^k` on main vertices,
/// with one vertex per component pinned, pruning on the eigen-equation of
/// every vertex whose neighborhood is fully assigned.
pub fn descend_eigenpair(
    h: &UniformHypergraph,
    hks: &UniformHypergraph,
    p: &Eigenpair,
    tol: &Tolerances,
) -> Result<Eigenpair> {
    let tags = hks.provenance().ok_or(Error::MissingProvenance)?;
    let pair = verify_eigenpair(hks, p.lambda, &p.vector, tol)?;
    if !pair.is_strictly_nonzero(tol) {
        return Err(Error::PreconditionViolated(
            "power eigenpair must be strictly nonzero".into(),
        ));
    }
    let r = h.r();
    let k = hks.r();
    let first = hks.edges().first().ok_or(Error::EmptyResult)?;
    let rs = first
        .iter()
        .filter(|&w| !matches!(tags[w], VertexTag::Additional { .. }))
        .count();
    if rs % r != 0 || rs == 0 {
        return Err(Error::PreconditionViolated(format!(
            "edges carry {rs} base-derived vertices, not a multiple of {r}"
        )));
    }
    let mut main = vec![None; h.n()];
    for (w, t) in tags.iter().enumerate() {
        if let VertexTag::Main(v) = t {
            if *v >= h.n() {
                return Err(Error::VertexIdOutOfRange { vertex: *v, n: h.n() });
            }
            main[*v] = Some(w);
        }
    }
    let targets: ComplexVec = main
        .iter()
        .enumerate()
        .map(|(v, w)| {
            w.map(|w| pair.vector[w].powi(k as i32)).ok_or_else(|| {
                Error::PreconditionViolated(format!("base vertex {v} has no main vertex"))
            })
        })
        .collect::<Result<_>>()?;

    let lk = pair.lambda.powi(k as i32);
    let mut budget = ROOT_SEARCH_CAP;
    let mut last_err = None;
    for jb in 0..rs {
        let beta = root(lk, rs, jb);
        match descend_with(h, beta, &targets, &mut budget) {
            Some(y) => match verify_eigenpair(h, beta, &y, tol) {
                Ok(e) => return Ok(e),
                Err(e) => last_err = Some(e),
            },
            None if budget == 0 => break,
            None => {}
        }
    }
    match last_err {
        Some(e) if budget > 0 => Err(e),
        _ => Err(Error::DescentSearchExhausted(ROOT_SEARCH_CAP - budget)),
    }
}

fn descend_with(
    h: &UniformHypergraph,
    beta: Complex64,
    targets: &[Complex64],
    budget: &mut usize,
) -> Option<ComplexVec> {
    let r = h.r();
    let n = h.n();
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for comp in h.components() {
        // breadth-first order so neighborhoods close early
        let mut order = vec![comp[0]];
        let mut seen = vec![false; n];
        seen[comp[0]] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &ei in h.incident(v) {
                for u in h.edges()[ei].iter() {
                    if !seen[u] {
                        seen[u] = true;
                        order.push(u);
                    }
                }
            }
        }
        let pos: HashMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut closing: Vec<Vec<VertexId>> = vec![Vec::new(); order.len()];
        for &w in &order {
            let last = h
                .incident(w)
                .iter()
                .flat_map(|&ei| h.edges()[ei].iter())
                .chain(std::iter::once(w))
                .map(|u| pos[&u])
                .max()
                .unwrap_or(0);
            closing[last].push(w);
        }
        let equation_ok = |y: &[Complex64], w: VertexId| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for &ei in h.incident(w) {
                let t: Complex64 = h.edges()[ei].iter().filter(|&u| u != w).map(|u| y[u]).product();
                sum += t;
                mag += t.norm();
            }
            let rhs = beta * y[w].powi(r as i32 - 1);
            (sum - rhs).norm() <= 1e-6 * (mag + rhs.norm())
        };
        let mut choice = vec![0usize; order.len()];
        let mut depth = 0usize;
        while depth < order.len() {
            let limit = if depth == 0 { 1 } else { r };
            if choice[depth] == limit {
                if depth == 0 {
                    return None;
                }
                choice[depth] = 0;
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let v = order[depth];
            y[v] = root(targets[v], r, choice[depth]);
            if closing[depth].iter().all(|&w| equation_ok(&y, w)) {
                depth += 1;
            } else {
                choice[depth] += 1;
            }
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{enumerate_roots, graph_eigenpair, graph_spectrum, kth_root_class};
    use crate::tensor::check_copy_relations;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ones(n: usize) -> ComplexVec {
        vec![c(1.0); n]
    }

    #[test]
    fn phase_solver() {
        // a0 + a1 ≡ 1, a1 + a2 ≡ 1, a0 + a2 ≡ 1 (mod 4): parity forbids it
        let tri = vec![(vec![0, 1], 1), (vec![1, 2], 1), (vec![0, 2], 1)];
        assert!(solve_phases(3, &tri, 4, ROOT_SEARCH_CAP).is_err());
        // mod 3 it has the solution a = (2, 2, 2)
        let a = solve_phases(3, &tri, 3, ROOT_SEARCH_CAP).unwrap();
        for (set, t) in &tri {
            assert_eq!(set.iter().map(|&v| a[v]).sum::<usize>() % 3, *t);
        }
        assert_eq!(solve_phases(4, &[], 5, 10).unwrap(), vec![0; 4]);
    }

    #[test]
    fn cycle_lifts_every_member() {
        let tol = Tolerances::default();
        let c4 = UniformHypergraph::cycle(4);
        for k in 3..=6 {
            let hk = c4.generalized_power(1, k).unwrap();
            let class = kth_root_class(c(2.0), 2, 1, k).unwrap();
            for lambda in enumerate_roots(&class) {
                let p = lift_onto(&c4, &hk, 1, k, c(2.0), &ones(4), lambda, &tol).unwrap();
                assert!(p.residual < 1e-9);
                check_copy_relations(&hk, &p, &tol).unwrap();
                let back = descend_eigenpair(&c4, &hk, &p, &tol).unwrap();
                assert!((back.lambda.powi(2) - 4.0).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn star_extension_square() {
        // S4 with s = 2, k = 4: every edge is two base vertices and their copies
        let tol = Tolerances::default();
        let s4 = UniformHypergraph::star(4);
        let h = s4.generalized_power(2, 4).unwrap();
        let beta = c(3f64.sqrt());
        let y = graph_eigenpair(&s4, beta, &tol).unwrap();
        let class = kth_root_class(beta, 2, 2, 4).unwrap();
        for lambda in enumerate_roots(&class) {
            let p = lift_onto(&s4, &h, 2, 4, beta, &y.vector, lambda, &tol).unwrap();
            check_copy_relations(&h, &p, &tol).unwrap();
            let back = descend_eigenpair(&s4, &h, &p, &tol).unwrap();
            assert!((back.lambda.powi(4) - 9.0).norm() < 1e-8);
        }
    }

    #[test]
    fn odd_cycle_extension_has_unliftable_members() {
        // (K3)_2: 2i lies in {λ : λ^4 = 2^4} but has no eigenvector
        let tol = Tolerances::default();
        let k3 = UniformHypergraph::cycle(3);
        let h = k3.generalized_power(2, 4).unwrap();
        let err = lift_onto(&k3, &h, 2, 4, c(2.0), &ones(3), Complex64::new(0.0, 2.0), &tol);
        assert!(matches!(err, Err(Error::LiftSearchExhausted(_))));
        assert!(lift_onto(&k3, &h, 2, 4, c(2.0), &ones(3), c(-2.0), &tol).is_ok());
        // one more padding vertex and every member lifts
        let h5 = k3.generalized_power(2, 5).unwrap();
        for lambda in enumerate_roots(&kth_root_class(c(2.0), 2, 2, 5).unwrap()) {
            lift_onto(&k3, &h5, 2, 5, c(2.0), &ones(3), lambda, &tol).unwrap();
        }
    }

    #[test]
    fn identity_power_lifts_base_pairs() {
        let tol = Tolerances::default();
        let p4 = UniformHypergraph::path(4);
        let h = p4.generalized_power(1, 2).unwrap();
        for beta in graph_spectrum(&p4).unwrap().nonzero(&tol).iter() {
            let y = graph_eigenpair(&p4, *beta, &tol).unwrap();
            let p = lift_onto(&p4, &h, 1, 2, *beta, &y.vector, *beta, &tol).unwrap();
            assert!((p.lambda - beta).norm() < 1e-15);
        }
    }

    #[test]
    fn preconditions() {
        let tol = Tolerances::default();
        let c4 = UniformHypergraph::cycle(4);
        assert!(matches!(
            lift_eigenpair(&c4, 1, 3, c(2.0), &ones(4), c(1.0), &tol),
            Err(Error::PreconditionViolated(_))
        ));
        // eigenvector with zeros
        let y = [c(1.0), c(0.0), c(-1.0), c(0.0)];
        let p4 = UniformHypergraph::path(4);
        assert!(lift_eigenpair(&p4, 1, 3, c(1.0), &y, c(1.0), &tol).is_err());
        let hk = c4.generalized_power(1, 3).unwrap();
        let untagged = hk.clone().without_provenance();
        let p = lift_onto(&c4, &hk, 1, 3, c(2.0), &ones(4), c(4f64.cbrt()), &tol).unwrap();
        assert_eq!(
            descend_eigenpair(&c4, &untagged, &p, &tol),
            Err(Error::MissingProvenance)
        );
    }

    #[test]
    fn higher_rank_base() {
        // single 3-edge, λ = ω: eigenvector (1, 1, ω)
        let tol = Tolerances::default();
        let e = UniformHypergraph::single_edge(3);
        let w = unit(1, 3);
        let y = [c(1.0), c(1.0), w];
        let h = e.generalized_power(2, 7).unwrap();
        for lambda in enumerate_roots(&kth_root_class(w, 3, 2, 7).unwrap()) {
            let p = lift_onto(&e, &h, 2, 7, w, &y, lambda, &tol).unwrap();
            check_copy_relations(&h, &p, &tol).unwrap();
            let back = descend_eigenpair(&e, &h, &p, &tol).unwrap();
            assert!((back.lambda.powi(6) - w.powi(6)).norm() < 1e-8);
        }
    }
}
