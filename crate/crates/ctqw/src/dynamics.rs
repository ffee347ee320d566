//! Transfer amplitudes of the continuous-time walk exp(-itA) on a circulant
//! graph, evaluated in closed form from the character-sum spectrum, plus the
//! transition-matrix product law and a dense matrix-exponential oracle that
//! shares none of that code path.

use std::f64::consts::TAU;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expm;
use crate::numeric::{int_distance, lattice_frac, KahanSum};
use crate::ring::ConnectionSet;
use crate::spectrum::{circulant_eigenvalues, CosTable, Spectrum, DEFAULT_INT_TOL};

/// Evolution time, either an arbitrary real or an exact lattice point 2*pi*k.
///
/// Lattice times keep k as an integer all the way into the phase reduction,
/// so no accuracy is lost to forming 2*pi*k in floating point first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Time {
    Real(f64),
    /// t = 2*pi*k.
    Lattice(u64),
}

impl Time {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Time::Real(t) => t,
            Time::Lattice(k) => TAU * k as f64,
        }
    }
}

impl From<f64> for Time {
    fn from(t: f64) -> Self {
        Time::Real(t)
    }
}

/// One entry of the transition matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    value: Complex64,
}

impl Amplitude {
    pub fn new(value: Complex64) -> Self {
        Amplitude { value }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Transfer fidelity |H(t)_uv|, clamped into [0, 1] against roundoff.
    pub fn fidelity(&self) -> f64 {
        self.value.norm().min(1.0)
    }

    /// Phase in (-pi, pi].
    pub fn phase(&self) -> f64 {
        self.value.arg()
    }
}

/// A continuous-time quantum walk on one circulant graph, with the spectrum
/// and cosine table precomputed so that sweeps pay only the per-time cost.
#[derive(Debug, Clone)]
pub struct Walk {
    set: ConnectionSet,
    spectrum: Spectrum,
    cos: CosTable,
    /// Eigenvalues within `int_tol` of an integer have exact phase 1 at
    /// every lattice time; they are snapped instead of reduced.
    snap_integer: Vec<bool>,
    int_tol: f64,
}

impl Walk {
    pub fn new(set: ConnectionSet) -> Self {
        Self::with_integer_tolerance(set, DEFAULT_INT_TOL)
    }

    pub fn with_integer_tolerance(set: ConnectionSet, int_tol: f64) -> Self {
        let spectrum = circulant_eigenvalues(&set);
        let cos = CosTable::new(set.n());
        let snap_integer = spectrum
            .values()
            .iter()
            .map(|&v| int_distance(v) <= int_tol)
            .collect();
        Walk {
            set,
            spectrum,
            cos,
            snap_integer,
            int_tol,
        }
    }

    pub fn set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn order(&self) -> u64 {
        self.set.n()
    }

    pub fn integer_tolerance(&self) -> f64 {
        self.int_tol
    }

    /// exp(-i * lambda_l * t) for l = 0..=n/2; the upper half mirrors it.
    fn phase_factors(&self, t: Time) -> Vec<Complex64> {
        let half = (self.order() / 2) as usize;
        (0..=half)
            .map(|l| {
                let lambda = self.spectrum.values()[l];
                match t {
                    Time::Real(t) => {
                        let (s, c) = (lambda * t).sin_cos();
                        Complex64::new(c, -s)
                    }
                    Time::Lattice(k) => {
                        if self.snap_integer[l] {
                            Complex64::new(1.0, 0.0)
                        } else {
                            let (s, c) = (TAU * lattice_frac(k, lambda)).sin_cos();
                            Complex64::new(c, -s)
                        }
                    }
                }
            })
            .collect()
    }

    /// H(t)_{0,d} from precomputed phase factors.
    fn entry(&self, phases: &[Complex64], d: u64) -> Complex64 {
        let n = self.order();
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        for (l, p) in phases.iter().enumerate() {
            let l = l as u64;
            let weight = if l == 0 || 2 * l == n { 1.0 } else { 2.0 };
            let c = weight * self.cos.cos(l * d % n);
            re.add(p.re * c);
            im.add(p.im * c);
        }
        Complex64::new(re.value(), im.value()) / n as f64
    }

    fn check_vertex(&self, v: u64) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { v, n: self.order() });
        }
        Ok(())
    }

    /// The transfer amplitude H(t)_{u,v}.
    ///
    /// Shift invariance is structural: the entry is computed from
    /// (v - u) mod n alone.
    pub fn amplitude(&self, u: u64, v: u64, t: impl Into<Time>) -> Result<Amplitude> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let n = self.order();
        let d = (v + n - u) % n;
        let phases = self.phase_factors(t.into());
        Ok(Amplitude::new(self.entry(&phases, d)))
    }

    /// Row u of H(t): amplitudes to every vertex, reusing one set of phase
    /// factors for the whole row.
    pub fn transition_row(&self, u: u64, t: impl Into<Time>) -> Result<Vec<Amplitude>> {
        self.check_vertex(u)?;
        let n = self.order();
        let phases = self.phase_factors(t.into());
        Ok((0..n)
            .map(|v| {
                let d = (v + n - u) % n;
                Amplitude::new(self.entry(&phases, d))
            })
            .collect())
    }

    /// The full transition matrix, built from row 0 by circulant shifts.
    pub fn transition_matrix(&self, t: impl Into<Time>) -> Array2<Complex64> {
        let n = self.order() as usize;
        let row0 = self.transition_row(0, t).expect("vertex 0 exists");
        Array2::from_shape_fn((n, n), |(u, v)| row0[(v + n - u) % n].value())
    }
}

/// Max-entry deviation between H_{A union B}(t) and H_A(t) * H_B(t).
///
/// The two adjacency matrices commute (shared character eigenvectors), so
/// the deviation is analytically zero; what is returned is numerical noise.
pub fn product_law_residual(
    a: &ConnectionSet,
    b: &ConnectionSet,
    t: impl Into<Time>,
) -> Result<f64> {
    let union = a.try_union(b)?;
    let t = t.into();
    let combined = Walk::new(union).transition_matrix(t);
    let product = Walk::new(a.clone())
        .transition_matrix(t)
        .dot(&Walk::new(b.clone()).transition_matrix(t));
    Ok(max_entry_distance(&combined, &product))
}

/// Largest |x - y| over corresponding entries.
pub fn max_entry_distance(x: &Array2<Complex64>, y: &Array2<Complex64>) -> f64 {
    x.iter()
        .zip(y.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Dense adjacency matrix of the circulant graph.
pub fn adjacency_matrix(set: &ConnectionSet) -> Array2<f64> {
    let n = set.n();
    Array2::from_shape_fn((n as usize, n as usize), |(u, v)| {
        let d = (v as u64 + n - u as u64) % n;
        if set.contains(d) {
            1.0
        } else {
            0.0
        }
    })
}

/// Orders above this are refused by the dense oracle.
pub const ORACLE_MAX_ORDER: u64 = 512;

/// exp(-itA) by scaling-and-squaring on the explicit adjacency matrix.
///
/// This is the verification path for the closed form: it never touches the
/// character-sum machinery.
pub fn oracle_matrix_exponential(set: &ConnectionSet, t: f64) -> Result<Array2<Complex64>> {
    let n = set.n();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::OrderTooLargeForOracle {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    let a = adjacency_matrix(set);
    let b = a.mapv(|x| Complex64::new(0.0, -t * x));
    Ok(expm::expm(&b))
}
