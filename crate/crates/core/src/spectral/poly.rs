//! Characteristic polynomials and their roots.
//!
//! The characteristic polynomial of an integer matrix is formed exactly by
//! the Faddeev–LeVerrier recurrence. Before any floating point work it is
//! split by Yun's square-free factorization over the rationals, so the
//! numerical root finder only ever sees polynomials with simple roots and
//! multiplicities come out exact.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 32;
pub const MAX_SWEEPS: usize = 10_000;
const NEWTON_STEPS: usize = 3;

/// A polynomial with complex coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Drops trailing zero coefficients; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Validation("zero polynomial".into()));
        }
        if coeffs.len() - 1 > MAX_DEGREE {
            return Err(Error::TooLarge {
                what: "polynomial degree",
                got: coeffs.len() - 1,
                cap: MAX_DEGREE,
            });
        }
        Ok(Polynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Value and derivative by Horner.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |c_i| |z|^i`, the scale for backward error.
    fn magnitude(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// All roots by Durand–Kerner iteration followed by Newton polishing.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let d = self.degree();
        if d == 0 {
            return Ok(Vec::new());
        }
        let lead = self.coeffs[d];
        let monic = Polynomial {
            coeffs: self.coeffs.iter().map(|c| c / lead).collect(),
        };
        if d == 1 {
            return Ok(vec![-monic.coeffs[0]]);
        }
        let radius = 1.0 + monic.coeffs[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|j| {
                Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4)
            })
            .collect();
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut biggest = 0.0f64;
            for j in 0..d {
                let num = monic.eval(z[j]);
                let mut den = Complex64::new(1.0, 0.0);
                for l in 0..d {
                    if l != j {
                        den *= z[j] - z[l];
                    }
                }
                if den == Complex64::new(0.0, 0.0) {
                    den = Complex64::new(f64::EPSILON, 0.0);
                }
                let step = num / den;
                z[j] -= step;
                biggest = biggest.max(step.norm() / z[j].norm().max(1.0));
            }
            let backward_ok = z
                .iter()
                .all(|&zj| monic.eval(zj).norm() <= 8.0 * f64::EPSILON * monic.magnitude(zj));
            if biggest < 1e-15 || backward_ok {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::IterationDiverged(MAX_SWEEPS));
        }
        for zj in z.iter_mut() {
            for _ in 0..NEWTON_STEPS {
                let (p, dp) = monic.eval_with_derivative(*zj);
                if dp == Complex64::new(0.0, 0.0) {
                    break;
                }
                let cand = *zj - p / dp;
                if monic.eval(cand).norm() < p.norm() {
                    *zj = cand;
                } else {
                    break;
                }
            }
        }
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("polynomial roots"));
        }
        Ok(z)
    }
}

/// A polynomial with rational coefficients in ascending order, kept
/// trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.lead().clone();
        if self.is_zero() || self.degree() < dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn to_complex(&self) -> Result<Polynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.to_f64()
                    .filter(|x| x.is_finite())
                    .map(|x| Complex64::new(x, 0.0))
                    .ok_or(Error::NonFinite("polynomial coefficient"))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(coeffs)
    }

    /// Yun's square-free factorization: `f = c · Π_i a_i^i` with every
    /// `a_i` monic, square-free and pairwise coprime. Returns the
    /// nonconstant `(a_i, i)`.
    pub fn square_free(&self) -> Vec<(RationalPolynomial, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let df = self.derivative();
        let a0 = self.gcd(&df);
        let mut b = self.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        out
    }
}

/// Exact characteristic polynomial `det(xI − A)` of a 0/1 symmetric matrix
/// given by adjacency lists, ascending coefficients.
pub fn characteristic_polynomial(adj: &[Vec<usize>]) -> Vec<BigInt> {
    let n = adj.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // am = A · M_{k-1}; M_0 = 0.
    let mut am = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for &l in &adj[i] {
                for j in 0..n {
                    if !m[l][j].is_zero() {
                        next[i][j] += &m[l][j];
                    }
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| next[i][i].clone()).sum();
        let kk = BigInt::from(k);
        debug_assert!((&trace % &kk).is_zero());
        c[n - k] = -(trace / kk);
        am = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cycle_adj(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    #[test]
    fn charpoly_small() {
        // C₄: x⁴ − 4x²
        assert_eq!(characteristic_polynomial(&cycle_adj(4)), ints(&[0, 0, -4, 0, 1]));
        // K₂: x² − 1
        assert_eq!(characteristic_polynomial(&[vec![1], vec![0]]), ints(&[-1, 0, 1]));
        // P₃: x³ − 2x
        assert_eq!(
            characteristic_polynomial(&[vec![1], vec![0, 2], vec![1]]),
            ints(&[0, -2, 0, 1])
        );
        // K₃: (x − 2)(x + 1)² = x³ − 3x − 2
        assert_eq!(
            characteristic_polynomial(&[vec![1, 2], vec![0, 2], vec![0, 1]]),
            ints(&[-2, -3, 0, 1])
        );
    }

    #[test]
    fn square_free_of_k4() {
        // K₄: (x − 3)(x + 1)³
        let adj: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        let f = RationalPolynomial::from_integers(&characteristic_polynomial(&adj));
        let parts = f.square_free();
        let one = |x: i64| BigRational::from_integer(BigInt::from(x));
        assert_eq!(
            parts,
            vec![
                (RationalPolynomial::new(vec![one(-3), one(1)]), 1),
                (RationalPolynomial::new(vec![one(1), one(1)]), 3),
            ]
        );
    }

    #[test]
    fn durand_kerner_simple_roots() {
        let c = |x: f64| Complex64::new(x, 0.0);
        // (x − 1)(x − 2)(x + 3) = x³ − 7x + 6
        let p = Polynomial::new(vec![c(6.0), c(-7.0), c(0.0), c(1.0)]).unwrap();
        let mut roots: Vec<f64> = p.roots().unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        for (a, b) in roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12, "{roots:?}");
        }
        // x² + 1
        let q = Polynomial::new(vec![c(1.0), c(0.0), c(1.0)]).unwrap();
        for z in q.roots().unwrap() {
            assert!((z * z + 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn degree_cap() {
        let v = vec![Complex64::new(1.0, 0.0); MAX_DEGREE + 2];
        assert!(matches!(Polynomial::new(v), Err(Error::TooLarge { .. })));
    }
}
