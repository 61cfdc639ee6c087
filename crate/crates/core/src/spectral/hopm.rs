//! Spectral radius of a connected uniform hypergraph by a shifted power
//! iteration on the positive orthant.

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

pub const HOPM_MAX_STEPS: usize = 100_000;
const SHIFT: f64 = 1.0;
const BRACKET: f64 = 1e-8;

fn apply_real(h: &UniformHypergraph, x: &[f64], y: &mut [f64]) {
    y.fill(0.0);
    let r = h.r();
    let mut prefix = vec![1.0; r + 1];
    for e in h.edges() {
        let v = e.vertices();
        for j in 0..r {
            prefix[j + 1] = prefix[j] * x[v[j]];
        }
        let mut suffix = 1.0;
        for j in (0..r).rev() {
            y[v[j]] += prefix[j] * suffix;
            suffix *= x[v[j]];
        }
    }
}

/// Iterates `x ← normalize((A x + x^{[r−1]})^{[1/(r−1)]})` from the all-ones
/// vector. The quotients `(A x)_i / x_i^{r−1}` bracket the spectral radius;
/// returns the midpoint once the bracket is narrower than `1e-8`.
pub fn hopm_radius(h: &UniformHypergraph) -> Result<f64> {
    if h.n() == 0 || !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = h.n();
    let p = (h.r() - 1) as f64;
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    for _ in 0..HOPM_MAX_STEPS {
        apply_real(h, &x, &mut ax);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let q = ax[i] / x[i].powf(p);
            lo = lo.min(q);
            hi = hi.max(q);
        }
        if hi - lo < BRACKET {
            return Ok(0.5 * (lo + hi));
        }
        let mut top = 0.0f64;
        for i in 0..n {
            x[i] = (ax[i] + SHIFT * x[i].powf(p)).powf(1.0 / p);
            top = top.max(x[i]);
        }
        if !top.is_finite() || top == 0.0 {
            return Err(Error::NonFinite("power iteration"));
        }
        for xi in x.iter_mut() {
            *xi /= top;
        }
    }
    Err(Error::IterationDiverged(HOPM_MAX_STEPS))
}
