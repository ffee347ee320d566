//! Closed-form circulant spectra via character sums.
//!
//! The eigenvalue of Cay(Z_n, S) at character index l is
//! `sum_{s in S} cos(2*pi*l*s/n)`; the sine parts cancel because S is
//! symmetric. Integer products are reduced mod n before any floating-point
//! division, and each index is folded into 0..=n/2 through the cosine's
//! symmetry, so spectra are symmetric in l bit-for-bit.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{int_distance, KahanSum};
use crate::ring::ConnectionSet;

/// Default tolerance separating integer eigenvalues from irrational ones.
///
/// Character sums at desk scale carry error far below 1e-9, while the
/// nearest algebraic irrationals (such as sqrt 2) sit at distance ~0.4 from
/// the integers, so 1e-6 splits the two populations by many orders of
/// magnitude.
pub const DEFAULT_INT_TOL: f64 = 1e-6;

/// The real spectrum of a circulant graph, indexed by character.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    n: u64,
    values: Vec<f64>,
    max_int_deviation: f64,
}

impl Spectrum {
    fn from_values(n: u64, values: Vec<f64>) -> Self {
        let max_int_deviation = values.iter().copied().map(int_distance).fold(0.0, f64::max);
        Spectrum {
            n,
            values,
            max_int_deviation,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Eigenvalues ordered by character index l = 0..n-1.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, l: u64) -> f64 {
        self.values[(l % self.n) as usize]
    }

    /// Largest distance from any eigenvalue to its nearest integer.
    pub fn max_int_deviation(&self) -> f64 {
        self.max_int_deviation
    }

    /// True iff every eigenvalue is within `tol` of an integer.
    pub fn is_integral_within(&self, tol: f64) -> bool {
        self.max_int_deviation <= tol
    }

    /// Integrality at the default tolerance.
    pub fn is_integral(&self) -> bool {
        self.is_integral_within(DEFAULT_INT_TOL)
    }
}

/// Cosine table cos(2*pi*m/n) for m = 0..=n/2, plus the index folding that
/// makes every lookup use a reduced angle in [0, pi].
#[derive(Debug, Clone)]
pub(crate) struct CosTable {
    n: u64,
    table: Vec<f64>,
}

impl CosTable {
    pub(crate) fn new(n: u64) -> Self {
        let half = (n / 2) as usize;
        let table = (0..=half)
            .map(|m| {
                // Quarter turns are exactly zero; libm leaves ~1e-16 there.
                if 4 * m as u64 == n {
                    0.0
                } else {
                    (TAU * m as f64 / n as f64).cos()
                }
            })
            .collect();
        CosTable { n, table }
    }

    /// cos(2*pi*m/n) for any residue m.
    pub(crate) fn cos(&self, m: u64) -> f64 {
        let m = m % self.n;
        let folded = m.min(self.n - m);
        self.table[folded as usize]
    }
}

/// Eigenvalues of the n-cycle: 2*cos(2*pi*l/n) for l = 0..n-1.
pub fn cycle_eigenvalues(n: u64) -> Result<Spectrum> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    let cos = CosTable::new(n);
    let values = (0..n).map(|l| 2.0 * cos.cos(l)).collect();
    Ok(Spectrum::from_values(n, values))
}

/// Eigenvalues of Cay(Z_n, S) by direct character sum.
pub fn circulant_eigenvalues(set: &ConnectionSet) -> Spectrum {
    let n = set.n();
    let cos = CosTable::new(n);
    let values = (0..n)
        .map(|l| {
            let mut acc = KahanSum::new();
            for &s in set.elements() {
                acc.add(cos.cos(l * s % n));
            }
            acc.value()
        })
        .collect();
    Spectrum::from_values(n, values)
}

/// The vanishing eigenvalue-difference sum behind the odd-prime obstruction.
///
/// For n = m*p with p an odd prime not dividing any element of S, the sum
///
/// ```text
/// (v[2] - v[1]) + sum_{r=1}^{(p-1)/2} (v[m*r+2] - v[m*r+1])
///               + sum_{r=1}^{(p-1)/2} (v[m*r-2] - v[m*r-1])
/// ```
///
/// over the circulant eigenvalues v (indices mod n) is exactly zero, because
/// the p-th roots of unity at any exponent coprime to p sum to -1/2 twice
/// over. The returned value is therefore a pure floating-point residual.
pub fn prime_identity_residual(set: &ConnectionSet, m: u64, p: u64) -> Result<f64> {
    let n = set.n();
    if !crate::ring::is_odd_prime(p) || m == 0 || m * p != n {
        return Err(Error::BadFactorization { n, m, p });
    }
    if let Some(&s) = set.elements().iter().find(|&&s| s % p == 0) {
        return Err(Error::PrimeDividesElement { p, s });
    }
    let spec = circulant_eigenvalues(set);
    let v = |idx: u64| spec.value(idx % n);
    let mut acc = KahanSum::new();
    acc.add(v(2) - v(1));
    for r in 1..=(p - 1) / 2 {
        acc.add(v(m * r + 2) - v(m * r + 1));
        // m*r - 2 may go below zero for m = 1; wrap through n.
        acc.add(v(m * r + n - 2) - v(m * r + n - 1));
    }
    Ok(acc.value())
}
