//! Certification of predicted root classes by explicit eigenpairs of `H^k_s`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::lift::{descend_eigenpair, lift_onto};
use super::{power_spectrum, subgraph_eigenpair, ClassEntry, Mode, PowerOptions, PowerSpectrumResult, Witness};
use crate::error::{Error, Result};
use crate::hypergraph::identities::ProvenanceForm;
use crate::hypergraph::{CanonicalForm, Edge, UniformHypergraph, VertexId, VertexTag};
use crate::spectral::{enumerate_roots, RootClass};
use crate::tensor::{
    check_copy_relations, lift_through_removals, verify_eigenpair, zero_support_restrict,
    Eigenpair, Tolerances,
};

/// Bound on the residual of a certified eigenpair and on the round-trip
/// error `|β'^{rs} − β^{rs}|`.
pub const CERTIFY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct MemberCertificate {
    pub lambda: Complex64,
    /// Eigenpair of `H^k_s`.
    pub pair: Eigenpair,
    /// Subgraph the eigenvector was built from.
    pub via: CanonicalForm,
    /// Number of vertices restored by zero-padding.
    pub padded: usize,
    /// Root-of-unity relations checked on the vector.
    pub relations: usize,
    pub round_trip_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassCertificate {
    pub class: RootClass,
    pub witness: Witness,
    pub members: Vec<MemberCertificate>,
    pub certified: bool,
    pub failure: Option<String>,
    /// The error behind `failure`.
    pub error: Option<Error>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificationReport {
    pub spectrum: PowerSpectrumResult,
    /// The tagged `H^k_s`.
    pub power: UniformHypergraph,
    pub classes: Vec<ClassCertificate>,
}

impl CertificationReport {
    pub fn certified_count(&self) -> usize {
        self.classes.iter().filter(|c| c.certified).count()
    }

    pub fn all_certified(&self) -> bool {
        self.classes.iter().all(|c| c.certified)
    }

    pub fn max_residual(&self) -> f64 {
        self.classes
            .iter()
            .flat_map(|c| c.members.iter().map(|m| m.pair.residual))
            .fold(0.0, f64::max)
    }
}

/// Builds and verifies an eigenpair of `H^k_s` for every member of every
/// predicted class.
pub fn certify_spectrum(
    h: &UniformHypergraph,
    s: usize,
    k: usize,
    opts: &PowerOptions,
) -> Result<CertificationReport> {
    let spectrum = power_spectrum(h, s, k, opts)?;
    let power = h.generalized_power(s, k)?;
    let classes = spectrum
        .classes
        .par_iter()
        .map(|entry| certify_class(h, &power, &spectrum, entry, opts))
        .collect();
    Ok(CertificationReport {
        spectrum,
        power,
        classes,
    })
}

fn certify_class(
    h: &UniformHypergraph,
    power: &UniformHypergraph,
    sp: &PowerSpectrumResult,
    entry: &ClassEntry,
    opts: &PowerOptions,
) -> ClassCertificate {
    let mut members = Vec::new();
    let mut failure = None;
    let mut error = None;
    for lambda in enumerate_roots(&entry.class) {
        let mut last = None;
        let found = std::iter::once(&entry.witness)
            .chain(entry.secondary.iter())
            .find_map(|w| match certify_member(h, power, sp, w, lambda, opts) {
                Ok(m) => Some(m),
                Err(e) => {
                    last.get_or_insert(e);
                    None
                }
            });
        match found {
            Some(m) => members.push(m),
            None => {
                failure = Some(format!(
                    "λ = {lambda}: {}",
                    last.as_ref().map(|e| e.to_string()).unwrap_or_default()
                ));
                error = last;
                break;
            }
        }
    }
    ClassCertificate {
        class: entry.class,
        witness: entry.witness.clone(),
        certified: failure.is_none(),
        members,
        failure,
        error,
    }
}

fn certify_member(
    h: &UniformHypergraph,
    power: &UniformHypergraph,
    sp: &PowerSpectrumResult,
    w: &Witness,
    lambda: Complex64,
    opts: &PowerOptions,
) -> Result<MemberCertificate> {
    let tol = &opts.tol;
    let (s, k) = (sp.s, sp.k);
    let g = w.graph(h);
    let pair = subgraph_eigenpair(&g, w.beta, opts)?;
    let restr = zero_support_restrict(&g, &pair, tol)?;
    let gp = restr.graph.clone().without_provenance();
    let gp_to_h: Vec<VertexId> = restr.old_ids.iter().map(|&v| w.vertices[v]).collect();
    let gp_pow = gp.generalized_power(s, k)?;
    let lifted = lift_onto(&gp, &gp_pow, s, k, w.beta, &restr.pair.vector, lambda, tol)?;

    let (full, padded) = if sp.mode == Mode::Identity {
        // G is H, and the unrestricted vector already lives on H^r_1 = H.
        (verify_eigenpair(power, w.beta, &pair.vector, tol)?, 0)
    } else {
        embed(h, power, &gp, &gp_pow, &gp_to_h, &lifted, tol)?
    };
    if !(full.residual < CERTIFY_TOL) {
        return Err(Error::ResidualTooLarge {
            residual: full.residual,
            tolerance: CERTIFY_TOL,
        });
    }
    let relations = check_copy_relations(power, &full, tol)?.len();

    let back = descend_eigenpair(&gp, &gp_pow, &lifted, tol)?;
    let rs = (h.r() * s) as i32;
    let round_trip_error = (back.lambda.powi(rs) - w.beta.powi(rs)).norm();
    if !(round_trip_error < CERTIFY_TOL) {
        return Err(Error::PreconditionViolated(format!(
            "descent returned β' with |β'^(rs) − β^(rs)| = {round_trip_error:.3e}"
        )));
    }
    Ok(MemberCertificate {
        lambda: full.lambda,
        pair: full,
        via: w.subgraph.clone(),
        padded,
        relations,
        round_trip_error,
    })
}

/// Places the eigenpair of `G'^k_s` inside `H^k_s ◁ J` and zero-pads it up
/// to `H^k_s`. `J` is the base vertices outside `G'` plus the first padding
/// vertex of every edge of `H ◁ (V ∖ V(G'))` that `G'` does not use.
fn embed(
    h: &UniformHypergraph,
    power: &UniformHypergraph,
    gp: &UniformHypergraph,
    gp_pow: &UniformHypergraph,
    gp_to_h: &[VertexId],
    lifted: &Eigenpair,
    tol: &Tolerances,
) -> Result<(Eigenpair, usize)> {
    let mut inside = vec![false; h.n()];
    for &v in gp_to_h {
        inside[v] = true;
    }
    let outside: Vec<VertexId> = (0..h.n()).filter(|&v| !inside[v]).collect();
    let gp_edges: std::collections::HashSet<Edge> = gp
        .edges()
        .iter()
        .map(|e| Edge::new(e.iter().map(|v| gp_to_h[v]).collect::<Vec<_>>()))
        .collect();
    let index = power.tag_index().ok_or(Error::MissingProvenance)?;
    let mut removed: Vec<VertexId> = outside.iter().map(|&v| index[&VertexTag::Main(v)]).collect();
    for e in h.edges() {
        if e.iter().all(|v| inside[v]) && !gp_edges.contains(e) {
            let tag = VertexTag::Additional {
                edge: e.clone(),
                index: 1,
            };
            let u = index.get(&tag).copied().ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "edge {e:?} has no padding vertex; it cannot be separated from the witness"
                ))
            })?;
            removed.push(u);
        }
    }
    // copies of outside vertices go with their mains
    for (wid, t) in power.provenance().ok_or(Error::MissingProvenance)?.iter().enumerate() {
        if let VertexTag::Copy { vertex, .. } = t {
            if !inside[*vertex] {
                removed.push(wid);
            }
        }
    }
    removed.sort_unstable();
    removed.dedup();

    let target = power.remove_vertices(&removed)?;
    let want = ProvenanceForm::translated(gp_pow, |v| gp_to_h[v])?;
    if ProvenanceForm::of(&target.graph)? != want {
        return Err(Error::PreconditionViolated(
            "witness power does not match the reduced power hypergraph".into(),
        ));
    }
    let tgt_index = target.graph.tag_index().ok_or(Error::MissingProvenance)?;
    let mut x = vec![Complex64::new(0.0, 0.0); target.graph.n()];
    for (wid, t) in gp_pow.provenance().ok_or(Error::MissingProvenance)?.iter().enumerate() {
        let mapped = t.map_base(|v| gp_to_h[v]);
        x[tgt_index[&mapped]] = lifted.vector[wid];
    }
    let p = verify_eigenpair(&target.graph, lifted.lambda, &x, tol)?;
    let (full, steps) = lift_through_removals(power, &removed, &p, tol)?;
    Ok((full, steps.len()))
}
