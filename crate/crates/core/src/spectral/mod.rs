//! Spectra of base hypergraphs and the root-class arithmetic used to
//! describe spectra of their powers.

mod graph;
mod hopm;
mod poly;

pub use graph::{graph_eigenpair, graph_spectrum, AdjacencySpectrum, GRAPH_MAX_VERTICES};
pub use hopm::{hopm_radius, HOPM_MAX_STEPS};
pub use poly::{characteristic_polynomial, Polynomial, RationalPolynomial, MAX_DEGREE, MAX_SWEEPS};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The set `{λ : λ^order = base}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootClass {
    pub base: Complex64,
    pub order: usize,
}

impl RootClass {
    pub fn new(base: Complex64, order: usize) -> Result<Self> {
        if base.norm() == 0.0 || !base.norm().is_finite() {
            return Err(Error::ZeroBase);
        }
        if order == 0 {
            return Err(Error::InvalidOrder("root class order must be at least 1".into()));
        }
        Ok(RootClass { base, order })
    }

    /// `|λ^k − c| < tol · max(1, |c|)`.
    pub fn contains(&self, lambda: Complex64, tol: f64) -> bool {
        (lambda.powi(self.order as i32) - self.base).norm() < tol * self.base.norm().max(1.0)
    }

    /// Same order and bases within `tol · max(1, |c|)`.
    pub fn same_as(&self, other: &RootClass, tol: f64) -> bool {
        self.order == other.order
            && (self.base - other.base).norm() < tol * self.base.norm().max(1.0)
    }
}

/// `{λ : λ^k = β^{rs}}`.
pub fn kth_root_class(beta: Complex64, r: usize, s: usize, k: usize) -> Result<RootClass> {
    if beta.norm() == 0.0 {
        return Err(Error::ZeroBase);
    }
    RootClass::new(beta.powi((r * s) as i32), k)
}

/// The `k` members `|c|^{1/k} e^{i(arg c + 2πj)/k}`, sorted by argument in
/// `(−π, π]`.
pub fn enumerate_roots(rc: &RootClass) -> Vec<Complex64> {
    let k = rc.order as f64;
    let m = rc.base.norm().powf(1.0 / k);
    let a = rc.base.arg();
    let mut roots: Vec<Complex64> = (0..rc.order)
        .map(|j| Complex64::from_polar(m, (a + 2.0 * PI * j as f64) / k))
        .collect();
    roots.sort_by(|x, y| canonical_arg(*x).total_cmp(&canonical_arg(*y)));
    roots
}

/// Argument in `(−π, π]`, with values within rounding of `−π` folded to `π`.
pub fn canonical_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI + 1e-12 {
        PI
    } else {
        a
    }
}

/// Items that can live in a [`Spectrum`].
pub trait SpectralItem: Clone {
    fn close(&self, other: &Self, tol: f64) -> bool;
    /// The value that determines the sort position.
    fn point(&self) -> Complex64;
    fn order(&self) -> usize {
        1
    }
}

impl SpectralItem for Complex64 {
    fn close(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() < tol * self.norm().max(1.0)
    }

    fn point(&self) -> Complex64 {
        *self
    }
}

impl SpectralItem for RootClass {
    fn close(&self, other: &Self, tol: f64) -> bool {
        self.same_as(other, tol)
    }

    fn point(&self) -> Complex64 {
        self.base
    }

    fn order(&self) -> usize {
        self.order
    }
}

/// A tolerance-deduplicated set sorted by modulus, then argument.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    items: Vec<T>,
    tol: f64,
}

fn sort_key(z: Complex64) -> (i64, i64) {
    const Q: f64 = 1e9;
    ((z.norm() * Q).round() as i64, (canonical_arg(z) * Q).round() as i64)
}

impl<T: SpectralItem> Spectrum<T> {
    /// Greedy clustering in insertion order (the first member of a cluster
    /// represents it), then sorting.
    pub fn new(values: impl IntoIterator<Item = T>, tol: f64) -> Self {
        let mut items: Vec<T> = Vec::new();
        for v in values {
            if !items.iter().any(|u| u.close(&v, tol)) {
                items.push(v);
            }
        }
        items.sort_by_key(|x| (x.order(), sort_key(x.point())));
        Spectrum { items, tol }
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn find(&self, v: &T) -> Option<&T> {
        self.items.iter().find(|u| u.close(v, self.tol))
    }

    pub fn contains(&self, v: &T) -> bool {
        self.find(v).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.items.iter()
    }
}

impl<T> IntoIterator for Spectrum<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

/// Deduplicates complex values with the greedy rule of [`Spectrum::new`].
pub fn spectrum_dedup(values: impl IntoIterator<Item = Complex64>, tol: f64) -> Spectrum<Complex64> {
    Spectrum::new(values, tol)
}
