//! Adjacency spectra and eigenvectors of ordinary graphs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::poly::{characteristic_polynomial, RationalPolynomial};
use super::Spectrum;
use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::tensor::{verify_eigenpair, Eigenpair, Tolerances};

pub const GRAPH_MAX_VERTICES: usize = 32;

/// All `n` adjacency eigenvalues, repeated by multiplicity, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjacencySpectrum {
    pub values: Vec<Complex64>,
}

impl AdjacencySpectrum {
    /// Distinct eigenvalues of modulus above `tol.zero`.
    pub fn nonzero(&self, tol: &Tolerances) -> Spectrum<Complex64> {
        Spectrum::new(
            self.values.iter().copied().filter(|z| z.norm() > tol.zero),
            tol.dedup,
        )
    }
}

fn require_graph(g: &UniformHypergraph) -> Result<()> {
    if g.r() != 2 {
        return Err(Error::NotAGraph(g.r()));
    }
    if g.n() > GRAPH_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count for graph spectrum",
            got: g.n(),
            cap: GRAPH_MAX_VERTICES,
        });
    }
    Ok(())
}

fn adjacency_lists(g: &UniformHypergraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        let v = e.vertices();
        adj[v[0]].push(v[1]);
        adj[v[1]].push(v[0]);
    }
    adj
}

/// Eigenvalues from the exact characteristic polynomial: zero roots are
/// split off exactly, the rest is factored square-free and each factor's
/// roots found numerically.
pub fn graph_spectrum(g: &UniformHypergraph) -> Result<AdjacencySpectrum> {
    require_graph(g)?;
    let mut c: Vec<BigInt> = characteristic_polynomial(&adjacency_lists(g));
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    c.drain(..zeros);
    let mut values = vec![Complex64::new(0.0, 0.0); zeros];
    let f = RationalPolynomial::from_integers(&c);
    for (factor, mult) in f.square_free() {
        for z in factor.to_complex()?.roots()? {
            // symmetric matrix: the spectrum is real
            let z = if z.im.abs() <= 1e-9 * z.norm().max(1.0) {
                Complex64::new(z.re, 0.0)
            } else {
                z
            };
            values.extend(std::iter::repeat_n(z, mult));
        }
    }
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(AdjacencySpectrum { values })
}

/// LU factorization with partial pivoting of a dense complex matrix.
struct Lu {
    a: Vec<Vec<Complex64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn new(mut a: Vec<Vec<Complex64>>) -> Self {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let tiny = f64::EPSILON * a.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        for col in 0..n {
            let p = (col..n)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .expect("nonempty range");
            a.swap(col, p);
            perm.swap(col, p);
            if a[col][col].norm() < tiny {
                a[col][col] = Complex64::new(tiny, 0.0);
            }
            for row in col + 1..n {
                let f = a[row][col] / a[col][col];
                a[row][col] = f;
                for j in col + 1..n {
                    let t = f * a[col][j];
                    a[row][j] -= t;
                }
            }
        }
        Lu { a, perm }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = b.len();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.a[i][j] * y[j];
                y[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.a[i][j] * y[j];
                y[i] -= t;
            }
            y[i] /= self.a[i][i];
        }
        y
    }
}

/// An eigenvector for the eigenvalue `beta` by shifted inverse iteration,
/// verified against `beta`.
pub fn graph_eigenpair(g: &UniformHypergraph, beta: Complex64, tol: &Tolerances) -> Result<Eigenpair> {
    require_graph(g)?;
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyResult);
    }
    let sigma = beta + 1e-11 * beta.norm().max(1.0);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for e in g.edges() {
        let v = e.vertices();
        m[v[0]][v[1]] = Complex64::new(1.0, 0.0);
        m[v[1]][v[0]] = Complex64::new(1.0, 0.0);
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= sigma;
    }
    let lu = Lu::new(m);
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.37 * ((i * 7919 + 3) % 13) as f64 / 13.0, 0.0))
        .collect();
    for _ in 0..3 {
        x = lu.solve(&x);
        let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !scale.is_finite() || scale == 0.0 {
            return Err(Error::NonFinite("inverse iteration"));
        }
        for z in x.iter_mut() {
            *z /= scale;
        }
    }
    verify_eigenpair(g, beta, &x, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Cyclic Jacobi rotations on a dense symmetric matrix.
    fn jacobi_eigenvalues(g: &UniformHypergraph) -> Vec<f64> {
        let n = g.n();
        let mut a = vec![vec![0.0f64; n]; n];
        for e in g.edges() {
            let v = e.vertices();
            a[v[0]][v[1]] = 1.0;
            a[v[1]][v[0]] = 1.0;
        }
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
        d.sort_by(f64::total_cmp);
        d
    }

    fn reals(s: &AdjacencySpectrum) -> Vec<f64> {
        s.values.iter().map(|z| z.re).collect()
    }

    #[test]
    fn cycle_four() {
        let tol = Tolerances::default();
        let s = graph_spectrum(&UniformHypergraph::cycle(4)).unwrap();
        assert_eq!(s.values.len(), 4);
        let nz = s.nonzero(&tol);
        assert_eq!(nz.len(), 2);
        assert!(nz.iter().any(|z| (z - 2.0).norm() < 1e-8));
        assert!(nz.iter().any(|z| (z + 2.0).norm() < 1e-8));
    }

    #[test]
    fn stars() {
        let tol = Tolerances::default();
        for m in 2..=9 {
            let nz = graph_spectrum(&UniformHypergraph::star(m)).unwrap().nonzero(&tol);
            let r = ((m - 1) as f64).sqrt();
            assert_eq!(nz.len(), 2);
            assert!(nz.iter().any(|z| (z - r).norm() < 1e-10));
            assert!(nz.iter().any(|z| (z + r).norm() < 1e-10));
        }
    }

    #[test]
    fn path_four_has_golden_ratio() {
        let nu = (1.0 + 5f64.sqrt()) / 2.0;
        let s = graph_spectrum(&UniformHypergraph::path(4)).unwrap();
        assert!(s.values.iter().any(|z| (z.re - 1.6180339887).abs() < 1e-10));
        assert!(s.values.iter().any(|z| (z.re - nu).abs() < 1e-14));
    }

    #[test]
    fn complete_graph_multiplicity() {
        let s = graph_spectrum(&UniformHypergraph::complete_graph(12)).unwrap();
        let r = reals(&s);
        assert_eq!(r.len(), 12);
        assert!(r[..11].iter().all(|x| (x + 1.0).abs() < 1e-12));
        assert!((r[11] - 11.0).abs() < 1e-12);
    }

    #[test]
    fn single_vertex() {
        let tol = Tolerances::default();
        let g = UniformHypergraph::new(2, 1, vec![]).unwrap();
        let s = graph_spectrum(&g).unwrap();
        assert_eq!(s.values, vec![Complex64::new(0.0, 0.0)]);
        assert!(s.nonzero(&tol).is_empty());
    }

    #[test]
    fn rejects_hypergraphs_and_large_graphs() {
        assert_eq!(
            graph_spectrum(&UniformHypergraph::single_edge(3)),
            Err(Error::NotAGraph(3))
        );
        assert!(matches!(
            graph_spectrum(&UniformHypergraph::cycle(33)),
            Err(Error::TooLarge { .. })
        ));
        assert!(graph_spectrum(&UniformHypergraph::cycle(32)).is_ok());
    }

    #[test]
    fn eigenvectors_by_inverse_iteration() {
        let tol = Tolerances::default();
        let p3 = UniformHypergraph::path(3);
        let s2 = 2f64.sqrt();
        let p = graph_eigenpair(&p3, Complex64::new(s2, 0.0), &tol).unwrap();
        assert!(p.is_strictly_nonzero(&tol));
        assert!((p.vector[1] / p.vector[0] - s2).norm() < 1e-9);
        assert!(matches!(
            graph_eigenpair(&p3, Complex64::new(1.0, 0.0), &tol),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    fn arb_graph() -> impl Strategy<Value = UniformHypergraph> {
        (1usize..=9).prop_flat_map(|n| {
            let pairs: Vec<Vec<usize>> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
                .collect();
            let len = pairs.len();
            proptest::sample::subsequence(pairs, 0..=len)
                .prop_map(move |e| UniformHypergraph::new(2, n, e).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_jacobi(g in arb_graph()) {
            let ours = reals(&graph_spectrum(&g).unwrap());
            let oracle = jacobi_eigenvalues(&g);
            prop_assert_eq!(ours.len(), oracle.len());
            for (a, b) in ours.iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", ours, oracle);
            }
        }

        #[test]
        fn trace_identities(g in arb_graph()) {
            let s = graph_spectrum(&g).unwrap();
            prop_assert_eq!(s.values.len(), g.n());
            let sum: Complex64 = s.values.iter().sum();
            let sq: Complex64 = s.values.iter().map(|z| z * z).sum();
            prop_assert!(sum.norm() < 1e-8);
            prop_assert!((sq - 2.0 * g.num_edges() as f64).norm() < 1e-6);
        }

        #[test]
        fn every_eigenvalue_has_an_eigenvector(g in arb_graph()) {
            let tol = Tolerances::default();
            for z in graph_spectrum(&g).unwrap().values {
                let p = graph_eigenpair(&g, z, &tol);
                prop_assert!(p.is_ok(), "{:?}: {:?}", z, p);
                prop_assert!(p.unwrap().residual < 1e-6);
            }
        }
    }
}
