//! Nonzero spectra of generalized power hypergraphs from subgraph spectra of
//! the base.
//!
//! For `k = rs + 1`, or `k = rs` with `s ≥ 2`, the classes come from induced
//! subgraphs of `H` without isolated vertices; for `k > rs + 1` from all
//! subgraphs generated by edge sets. Each nonzero eigenvalue `β` of such a
//! subgraph contributes the class `{λ : λ^k = β^{rs}}`. The case `s = 1`,
//! `k = r` is `H` itself and contributes the order-one classes `{β}`.

mod certify;
mod lift;

pub use certify::{certify_spectrum, CertificationReport, ClassCertificate, MemberCertificate};
pub use lift::{descend_eigenpair, lift_eigenpair, lift_onto, ROOT_SEARCH_CAP};

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{
    canonical_form, canonical_labeling, enumerate_induced_subgraphs, enumerate_subgraphs,
    CanonicalForm, EnumerationOptions, Subgraph, UniformHypergraph, VertexId,
};
use crate::spectral::{graph_spectrum, kth_root_class, RootClass, Spectrum};
use crate::tensor::{verify_eigenpair, ComplexVec, Eigenpair, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `s = 1`, `k = r`: the hypergraph itself.
    Identity,
    Induced,
    General,
}

impl Mode {
    pub fn for_parameters(r: usize, s: usize, k: usize) -> Result<Mode> {
        if s < 1 {
            return Err(Error::InvalidOrder("extension factor must be at least 1".into()));
        }
        if k < r * s {
            return Err(Error::InvalidOrder(format!("order {k} is below r·s = {}", r * s)));
        }
        Ok(if s == 1 && k == r {
            Mode::Identity
        } else if k <= r * s + 1 {
            Mode::Induced
        } else {
            Mode::General
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Identity => "identity",
            Mode::Induced => "induced",
            Mode::General => "general",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A subgraph of the base and one of its eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub subgraph: CanonicalForm,
    pub beta: Complex64,
    /// Base vertex ids of the subgraph, `vertices[new] = old`.
    pub vertices: Vec<VertexId>,
    /// Base edge indices.
    pub edges: Vec<usize>,
}

impl Witness {
    /// The subgraph itself, labeled as in `vertices`.
    pub fn graph(&self, h: &UniformHypergraph) -> UniformHypergraph {
        let red = h.edge_subgraph(&self.edges);
        if red.old_ids == self.vertices {
            red.graph.without_provenance()
        } else {
            h.induced_subgraph(&self.vertices)
                .expect("witness vertices lie in the base")
                .graph
                .without_provenance()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassEntry {
    pub class: RootClass,
    /// The witness with the smallest canonical form.
    pub witness: Witness,
    pub secondary: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSpectrumResult {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub mode: Mode,
    pub classes: Vec<ClassEntry>,
    pub tol: Tolerances,
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub holds: bool,
    pub class: Option<RootClass>,
    pub witness: Option<Witness>,
}

impl PowerSpectrumResult {
    pub fn root_classes(&self) -> Spectrum<RootClass> {
        Spectrum::new(self.classes.iter().map(|c| c.class), self.tol.dedup)
    }

    pub fn membership(&self, lambda: Complex64) -> Result<Membership> {
        if lambda.norm() <= self.tol.zero {
            return Err(Error::ZeroEigenvalueQuery);
        }
        Ok(
            match self
                .classes
                .iter()
                .find(|c| c.class.contains(lambda, self.tol.dedup))
            {
                Some(c) => Membership {
                    holds: true,
                    class: Some(c.class),
                    witness: Some(c.witness.clone()),
                },
                None => Membership {
                    holds: false,
                    class: None,
                    witness: None,
                },
            },
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
struct SuppliedPair {
    lambda: Complex64,
    /// Entries in the canonical labeling of the keyed hypergraph.
    vector: ComplexVec,
}

/// Externally supplied nonzero spectra for connected hypergraphs of
/// uniformity three or more, keyed by canonical form. Every value arrives
/// with an eigenvector and is verified on entry.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuppliedSpectra {
    entries: BTreeMap<CanonicalForm, Vec<SuppliedPair>>,
}

impl SuppliedSpectra {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        g: &UniformHypergraph,
        lambda: Complex64,
        vector: &[Complex64],
        tol: &Tolerances,
    ) -> Result<()> {
        if lambda.norm() <= tol.zero {
            return Err(Error::ZeroEigenvalue);
        }
        let pair = verify_eigenpair(g, lambda, vector, tol)?;
        let (form, perm) = canonical_labeling(g)?;
        let mut canon = vec![Complex64::new(0.0, 0.0); g.n()];
        for (v, &p) in perm.iter().enumerate() {
            canon[p] = pair.vector[v];
        }
        let list = self.entries.entry(form).or_default();
        if !list
            .iter()
            .any(|q| (q.lambda - lambda).norm() < tol.dedup * lambda.norm().max(1.0))
        {
            list.push(SuppliedPair {
                lambda,
                vector: canon,
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn eigenvalues(&self, form: &CanonicalForm) -> Option<Vec<Complex64>> {
        self.entries
            .get(form)
            .map(|l| l.iter().map(|p| p.lambda).collect())
    }

    /// The supplied eigenvector for `lambda`, transported onto `g`.
    pub fn eigenpair(
        &self,
        g: &UniformHypergraph,
        lambda: Complex64,
        tol: &Tolerances,
    ) -> Option<Result<Eigenpair>> {
        let (form, perm) = canonical_labeling(g).ok()?;
        let pair = self
            .entries
            .get(&form)?
            .iter()
            .find(|p| (p.lambda - lambda).norm() < tol.dedup * lambda.norm().max(1.0))?;
        let x: ComplexVec = perm.iter().map(|&p| pair.vector[p]).collect();
        Some(verify_eigenpair(g, pair.lambda, &x, tol))
    }
}

/// Settings shared by the spectrum, membership and certification calls.
#[derive(Clone, Copy, Debug, Default)]
pub struct PowerOptions<'a> {
    pub tol: Tolerances,
    pub supplied: Option<&'a SuppliedSpectra>,
}

/// Nonzero eigenvalues of a single edge: the `r`-th roots of unity, with
/// eigenvector `(1, …, 1, ω)`.
fn single_edge_pair(r: usize, j: usize) -> (Complex64, ComplexVec) {
    let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / r as f64);
    let mut x = vec![Complex64::new(1.0, 0.0); r];
    x[r - 1] = w;
    (w, x)
}

fn connected_spectrum(
    g: &UniformHypergraph,
    form: &CanonicalForm,
    opts: &PowerOptions,
) -> Result<Vec<Complex64>> {
    if g.r() == 2 {
        return Ok(graph_spectrum(g)?.nonzero(&opts.tol).into_iter().collect());
    }
    if g.num_edges() == 1 && g.n() == g.r() {
        return Ok((0..g.r()).map(|j| single_edge_pair(g.r(), j).0).collect());
    }
    opts.supplied
        .and_then(|s| s.eigenvalues(form))
        .ok_or_else(|| Error::UnsupportedBaseRank {
            r: g.r(),
            subgraph: form.to_string(),
        })
}

/// An eigenpair of the (possibly disconnected) subgraph `g` for `beta`.
pub(crate) fn subgraph_eigenpair(
    g: &UniformHypergraph,
    beta: Complex64,
    opts: &PowerOptions,
) -> Result<Eigenpair> {
    if g.r() == 2 {
        return crate::spectral::graph_eigenpair(g, beta, &opts.tol);
    }
    let tol = &opts.tol;
    for comp in g.components() {
        let red = g.induced_subgraph(&comp)?;
        let cg = red.graph.without_provenance();
        if cg.num_edges() == 0 {
            continue;
        }
        let local = if cg.num_edges() == 1 && cg.n() == cg.r() {
            (0..cg.r())
                .map(|j| single_edge_pair(cg.r(), j))
                .find(|(w, _)| (w - beta).norm() < tol.dedup * beta.norm().max(1.0))
                .map(|(w, x)| verify_eigenpair(&cg, w, &x, tol))
        } else {
            opts.supplied.and_then(|s| s.eigenpair(&cg, beta, tol))
        };
        if let Some(pair) = local {
            let pair = pair?;
            let mut x = vec![Complex64::new(0.0, 0.0); g.n()];
            for (new, &old) in red.old_ids.iter().enumerate() {
                x[old] = pair.vector[new];
            }
            return verify_eigenpair(g, pair.lambda, &x, tol);
        }
    }
    Err(Error::UnsupportedBaseRank {
        r: g.r(),
        subgraph: canonical_form(g).map(|f| f.to_string()).unwrap_or_default(),
    })
}

/// The nonzero spectrum of `H^k_s` as root classes, with witnesses.
pub fn power_spectrum(
    h: &UniformHypergraph,
    s: usize,
    k: usize,
    opts: &PowerOptions,
) -> Result<PowerSpectrumResult> {
    let mode = Mode::for_parameters(h.r(), s, k)?;
    h.ensure_no_isolated()?;
    let subgraphs: Vec<Subgraph> = match mode {
        Mode::Identity => {
            let form = canonical_form(h)?;
            vec![Subgraph {
                graph: h.clone().without_provenance(),
                vertices: (0..h.n()).collect(),
                edges: (0..h.num_edges()).collect(),
                form,
            }]
        }
        Mode::Induced => enumerate_induced_subgraphs(h, EnumerationOptions::default())?,
        Mode::General => enumerate_subgraphs(h, EnumerationOptions::default())?,
    };

    // Spectra of the distinct connected components, computed once each.
    let mut components: BTreeMap<CanonicalForm, UniformHypergraph> = BTreeMap::new();
    let mut layout: Vec<Vec<CanonicalForm>> = Vec::with_capacity(subgraphs.len());
    for sub in &subgraphs {
        let mut forms = Vec::new();
        for comp in sub.graph.components() {
            let cg = sub.graph.induced_subgraph(&comp)?.graph.without_provenance();
            let form = canonical_form(&cg)?;
            components.entry(form.clone()).or_insert(cg);
            forms.push(form);
        }
        layout.push(forms);
    }
    let spectra: HashMap<CanonicalForm, Vec<Complex64>> = components
        .par_iter()
        .map(|(form, g)| Ok((form.clone(), connected_spectrum(g, form, opts)?)))
        .collect::<Result<_>>()?;

    let tol = opts.tol;
    let mut classes: Vec<ClassEntry> = Vec::new();
    for (sub, forms) in subgraphs.iter().zip(&layout) {
        let betas = Spectrum::new(
            forms.iter().flat_map(|f| spectra[f].iter().copied()),
            tol.dedup,
        );
        for &beta in betas.items() {
            let class = if mode == Mode::Identity {
                RootClass::new(beta, 1)?
            } else {
                kth_root_class(beta, h.r(), s, k)?
            };
            let witness = Witness {
                subgraph: sub.form.clone(),
                beta,
                vertices: sub.vertices.clone(),
                edges: sub.edges.clone(),
            };
            match classes.iter_mut().find(|c| c.class.same_as(&class, tol.dedup)) {
                Some(entry) => entry.secondary.push(witness),
                None => classes.push(ClassEntry {
                    class,
                    witness,
                    secondary: Vec::new(),
                }),
            }
        }
    }
    let order = Spectrum::new(classes.iter().map(|c| c.class), tol.dedup);
    classes.sort_by_key(|c| {
        order
            .items()
            .iter()
            .position(|x| x.same_as(&c.class, tol.dedup))
            .unwrap_or(usize::MAX)
    });
    Ok(PowerSpectrumResult {
        r: h.r(),
        s,
        k,
        mode,
        classes,
        tol,
    })
}

/// Whether `lambda` is an eigenvalue of `H^k_s`, with a witness when it is.
pub fn is_power_eigenvalue(
    h: &UniformHypergraph,
    s: usize,
    k: usize,
    lambda: Complex64,
    opts: &PowerOptions,
) -> Result<Membership> {
    if lambda.norm() <= opts.tol.zero {
        return Err(Error::ZeroEigenvalueQuery);
    }
    power_spectrum(h, s, k, opts)?.membership(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::enumerate_roots;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bases(res: &PowerSpectrumResult) -> Vec<f64> {
        let mut b: Vec<f64> = res.classes.iter().map(|c| c.class.base.re).collect();
        b.sort_by(f64::total_cmp);
        b
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-7)
    }

    #[test]
    fn modes() {
        assert_eq!(Mode::for_parameters(2, 1, 2).unwrap(), Mode::Identity);
        assert_eq!(Mode::for_parameters(2, 1, 3).unwrap(), Mode::Induced);
        assert_eq!(Mode::for_parameters(2, 2, 4).unwrap(), Mode::Induced);
        assert_eq!(Mode::for_parameters(2, 2, 5).unwrap(), Mode::Induced);
        assert_eq!(Mode::for_parameters(2, 2, 6).unwrap(), Mode::General);
        assert_eq!(Mode::for_parameters(2, 1, 4).unwrap(), Mode::General);
        assert!(Mode::for_parameters(2, 2, 3).is_err());
    }

    #[test]
    fn cycle_cubed() {
        let res = power_spectrum(&UniformHypergraph::cycle(4), 1, 3, &Default::default()).unwrap();
        assert_eq!(res.mode, Mode::Induced);
        assert!(close(&bases(&res), &[1.0, 2.0, 4.0]));
        assert!(res.classes.iter().all(|c| c.class.order == 3));
        let m = res.membership(c(2f64.cbrt())).unwrap();
        assert!(m.holds);
        let w = m.witness.unwrap();
        assert_eq!(w.subgraph, canonical_form(&UniformHypergraph::path(3)).unwrap());
        assert!((w.beta.norm() - 2f64.sqrt()).abs() < 1e-12);
        let nu = (1.0 + 5f64.sqrt()) / 2.0;
        for z in enumerate_roots(&RootClass::new(c(nu * nu), 3).unwrap()) {
            assert!(!res.membership(z).unwrap().holds);
        }
        assert_eq!(res.membership(c(0.0)), Err(Error::ZeroEigenvalueQuery));
    }

    #[test]
    fn golden_ratio_class_from_path() {
        let nu = (1.0 + 5f64.sqrt()) / 2.0;
        for k in 4..=6 {
            let res =
                power_spectrum(&UniformHypergraph::cycle(4), 1, k, &Default::default()).unwrap();
            assert_eq!(res.mode, Mode::General);
            let entry = res
                .classes
                .iter()
                .find(|c| (c.class.base - nu * nu).norm() < 1e-7)
                .expect("ν² class");
            assert_eq!(entry.witness.subgraph, canonical_form(&UniformHypergraph::path(4)).unwrap());
            let root = Complex64::from_polar((nu * nu).powf(1.0 / k as f64), 0.0);
            assert!(res.membership(root).unwrap().holds);
        }
    }

    #[test]
    fn stars() {
        for n in 3..=6 {
            for k in 3..=5 {
                let res =
                    power_spectrum(&UniformHypergraph::star(n), 1, k, &Default::default()).unwrap();
                let want: Vec<f64> = (1..n).map(|p| p as f64).collect();
                assert!(close(&bases(&res), &want), "n={n} k={k}: {:?}", bases(&res));
            }
        }
    }

    #[test]
    fn identity_is_the_graph_spectrum() {
        let tol = Tolerances::default();
        for g in [
            UniformHypergraph::cycle(3),
            UniformHypergraph::cycle(5),
            UniformHypergraph::path(4),
            UniformHypergraph::complete_graph(4),
        ] {
            let res = power_spectrum(&g, 1, 2, &Default::default()).unwrap();
            assert_eq!(res.mode, Mode::Identity);
            let sp = graph_spectrum(&g).unwrap().nonzero(&tol);
            assert_eq!(res.classes.len(), sp.len());
            for z in sp.iter() {
                assert!(res.membership(*z).unwrap().holds);
            }
        }
    }

    #[test]
    fn isolated_vertices_rejected() {
        let h = UniformHypergraph::new(2, 3, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            power_spectrum(&h, 1, 3, &Default::default()),
            Err(Error::IsolatedVertex(2))
        );
    }

    #[test]
    fn higher_rank_needs_supplied_spectra() {
        let tol = Tolerances::default();
        let edge = UniformHypergraph::single_edge(3);
        let res = power_spectrum(&edge, 1, 4, &Default::default()).unwrap();
        // K^{(3)}_3 has the cube roots of unity as nonzero eigenvalues.
        assert!(close(&bases(&res), &[1.0]));

        let two = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let err = power_spectrum(&two, 1, 4, &Default::default()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedBaseRank { r: 3, .. }));

        // x = (1, 1, b, 1, 1): λ = b and λ b² = 2, so λ = 2^{1/3}
        let rho = 2f64.cbrt();
        assert!((crate::spectral::hopm_radius(&two).unwrap() - rho).abs() < 1e-6);
        let x: Vec<Complex64> = [1.0, 1.0, rho, 1.0, 1.0].iter().map(|&v| c(v)).collect();
        let mut sup = SuppliedSpectra::new();
        sup.insert(&two, c(rho), &x, &tol).unwrap();
        assert!(sup.insert(&two, c(rho + 0.1), &x, &tol).is_err());
        let opts = PowerOptions {
            tol,
            supplied: Some(&sup),
        };
        let res = power_spectrum(&two, 1, 4, &opts).unwrap();
        assert!(res.classes.iter().any(|e| (e.class.base - rho.powi(3)).norm() < 1e-7));
    }

    fn arb_graph() -> impl Strategy<Value = UniformHypergraph> {
        (3usize..=5).prop_flat_map(|n| {
            let pairs: Vec<Vec<usize>> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
                .collect();
            let len = pairs.len();
            proptest::sample::subsequence(pairs, 1..=len.min(7)).prop_filter_map(
                "no isolated vertices",
                move |e| {
                    let g = UniformHypergraph::new(2, n, e).ok()?;
                    g.isolated_vertices().is_empty().then_some(g)
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn closed_under_roots_of_unity(g in arb_graph(), k in 3usize..6, j in 0usize..6) {
            let res = power_spectrum(&g, 1, k, &Default::default()).unwrap();
            let eps = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
            for e in &res.classes {
                for z in enumerate_roots(&e.class) {
                    prop_assert!(res.membership(z).unwrap().holds);
                    prop_assert!(res.membership(z * eps).unwrap().holds);
                }
            }
        }

        #[test]
        fn general_mode_monotone_in_edges(g in arb_graph(), k in 4usize..6) {
            let before = power_spectrum(&g, 1, k, &Default::default()).unwrap();
            let n = g.n();
            let extra: Vec<Vec<usize>> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
                .find(|e| g.edge_index(&crate::hypergraph::Edge::new(e.clone())).is_none())
                .into_iter()
                .collect();
            prop_assume!(!extra.is_empty());
            let mut edges: Vec<Vec<usize>> = g.edges().iter().map(|e| e.vertices().to_vec()).collect();
            edges.extend(extra);
            let bigger = UniformHypergraph::new(2, n, edges).unwrap();
            let after = power_spectrum(&bigger, 1, k, &Default::default()).unwrap();
            let sp = after.root_classes();
            for e in &before.classes {
                prop_assert!(sp.contains(&e.class));
            }
        }

        #[test]
        fn induced_within_general(g in arb_graph()) {
            let induced = power_spectrum(&g, 1, 3, &Default::default()).unwrap();
            let general = crate::power::tests::general_at(&g, 3);
            for e in &induced.classes {
                prop_assert!(general.contains(&e.class));
            }
        }
    }

    /// Classes over all edge-generated subgraphs at order `k`, whatever the
    /// mode would be.
    pub(super) fn general_at(g: &UniformHypergraph, k: usize) -> Spectrum<RootClass> {
        let tol = Tolerances::default();
        let subs = enumerate_subgraphs(g, EnumerationOptions::default()).unwrap();
        let mut out = Vec::new();
        for sub in subs {
            for z in graph_spectrum(&sub.graph).unwrap().nonzero(&tol).iter() {
                out.push(kth_root_class(*z, 2, 1, k).unwrap());
            }
        }
        Spectrum::new(out, tol.dedup)
    }
}
