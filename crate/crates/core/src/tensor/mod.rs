//! The adjacency tensor of a uniform hypergraph, applied matrix-free, and
//! eigenpair verification.
//!
//! For an `r`-uniform hypergraph, `(A x)_i = Σ_{e ∋ i} Π_{j ∈ e, j ≠ i} x_j`.
//! The tensor itself is never stored; each edge is visited once and every
//! vertex of it receives the product of the other entries, computed with
//! prefix and suffix products so that zero entries need no special casing.

mod lift;
mod relations;

pub use lift::{degree_one_lift, duplicate_vertex_lift, lift_rule, lift_through_removals, LiftRule};
pub use relations::{check_copy_relations, RootOfUnityWitness};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergraph::{UniformHypergraph, VertexId};

pub type ComplexVec = Vec<Complex64>;

/// Numerical tolerances shared across the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Acceptance bound on the ∞-norm residual of a normalized eigenpair.
    pub eig: f64,
    /// An entry is zero when its modulus is at most `zero · ‖x‖∞`.
    pub zero: f64,
    /// Two spectrum values (or root-class bases) closer than
    /// `dedup · max(1, |a|)` are the same.
    pub dedup: f64,
    /// Bound on `|ε^m − 1|` for a root-of-unity witness.
    pub root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig: 1e-9,
            zero: 1e-10,
            dedup: 1e-7,
            root: 1e-6,
        }
    }
}

/// A verified eigenpair. `vector` is normalized to `‖x‖∞ = 1` by a positive
/// real factor and `residual` is measured on that normalized vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub lambda: Complex64,
    pub vector: ComplexVec,
    pub residual: f64,
}

impl Eigenpair {
    pub fn is_strictly_nonzero(&self, tol: &Tolerances) -> bool {
        is_strictly_nonzero(self, tol)
    }
}

fn check_len(h: &UniformHypergraph, x: &[Complex64]) -> Result<()> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: x.len(),
        });
    }
    Ok(())
}

pub fn apply_adjacency(h: &UniformHypergraph, x: &[Complex64]) -> Result<ComplexVec> {
    check_len(h, x)?;
    let r = h.r();
    let mut y = vec![Complex64::new(0.0, 0.0); h.n()];
    let mut prefix = vec![Complex64::new(1.0, 0.0); r + 1];
    for e in h.edges() {
        let v = e.vertices();
        for j in 0..r {
            prefix[j + 1] = prefix[j] * x[v[j]];
        }
        let mut suffix = Complex64::new(1.0, 0.0);
        for j in (0..r).rev() {
            y[v[j]] += prefix[j] * suffix;
            suffix *= x[v[j]];
        }
    }
    Ok(y)
}

/// `‖A x − λ x^{[r−1]}‖∞`.
pub fn eigen_residual(h: &UniformHypergraph, lambda: Complex64, x: &[Complex64]) -> Result<f64> {
    let ax = apply_adjacency(h, x)?;
    let p = (h.r() - 1) as i32;
    Ok(ax
        .iter()
        .zip(x)
        .map(|(a, xi)| (a - lambda * xi.powi(p)).norm())
        .fold(0.0, f64::max))
}

pub fn inf_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Normalizes `x` and accepts `(λ, x)` iff the residual is below `tol.eig`.
pub fn verify_eigenpair(
    h: &UniformHypergraph,
    lambda: Complex64,
    x: &[Complex64],
    tol: &Tolerances,
) -> Result<Eigenpair> {
    check_len(h, x)?;
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::NonFinite("eigenvalue"));
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("eigenvector"));
    }
    let scale = inf_norm(x);
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let vector: ComplexVec = x.iter().map(|z| z / scale).collect();
    let residual = eigen_residual(h, lambda, &vector)?;
    if !(residual < tol.eig) {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance: tol.eig,
        });
    }
    Ok(Eigenpair {
        lambda,
        vector,
        residual,
    })
}

pub fn is_strictly_nonzero(p: &Eigenpair, tol: &Tolerances) -> bool {
    let cut = tol.zero * inf_norm(&p.vector);
    p.lambda.norm() > tol.zero && p.vector.iter().all(|z| z.norm() > cut)
}

/// Output of [`zero_support_restrict`].
#[derive(Clone, Debug, PartialEq)]
pub struct Restriction {
    pub graph: UniformHypergraph,
    /// `old_ids[new] = old`.
    pub old_ids: Vec<VertexId>,
    /// The vertices whose entries were zero.
    pub removed: Vec<VertexId>,
    pub pair: Eigenpair,
}

/// Drops the zero entries of an eigenvector: with `I` the zero set, the
/// restriction of `x` to `H ◁ I` is a strictly nonzero eigenpair with the
/// same eigenvalue.
pub fn zero_support_restrict(
    h: &UniformHypergraph,
    p: &Eigenpair,
    tol: &Tolerances,
) -> Result<Restriction> {
    if p.lambda.norm() <= tol.zero {
        return Err(Error::ZeroEigenvalue);
    }
    check_len(h, &p.vector)?;
    let cut = tol.zero * inf_norm(&p.vector);
    let removed: Vec<VertexId> = (0..h.n()).filter(|&v| p.vector[v].norm() <= cut).collect();
    let red = h.remove_vertices(&removed)?;
    let x: ComplexVec = red.old_ids.iter().map(|&v| p.vector[v]).collect();
    let pair = verify_eigenpair(&red.graph, p.lambda, &x, tol)?;
    if !pair.is_strictly_nonzero(tol) {
        return Err(Error::PreconditionViolated(
            "restriction kept a zero entry; input is not an eigenpair".into(),
        ));
    }
    Ok(Restriction {
        graph: red.graph,
        old_ids: red.old_ids,
        removed,
        pair,
    })
}
