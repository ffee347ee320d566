//! Continuous-time quantum walks on circulant graphs, in closed form.
//!
//! A circulant graph is the Cayley graph of Z_n with a symmetric connection
//! set S: vertices a and b are adjacent iff a - b mod n lands in S. Its
//! adjacency matrix diagonalizes in the discrete Fourier basis, so the walk
//! propagator exp(-itA) — and with it every transfer fidelity — has a closed
//! form in character sums. This crate computes those spectra and amplitudes,
//! classifies which circulants move a state from a vertex to its antipode
//! with fidelity approaching 1 (pretty good state transfer) or return to the
//! identity (almost periodicity), and backs every symbolic verdict with
//! numerical sweeps and a dense matrix-exponential oracle.
//!
//! ```
//! use ctqw::{classify, ConnectionSet, Time, VerdictKind, Walk};
//!
//! // The 8-cycle: eigenvalues 2cos(pi*l/4), two of them irrational.
//! let c8 = ConnectionSet::new(8, &[1, 7])?;
//! let verdict = classify(&c8);
//! assert_eq!(verdict.kind, VerdictKind::Pgst);
//!
//! // The classifier's claim is checkable: at t = 12*pi the walk moves
//! // almost all amplitude from vertex 0 to vertex 4.
//! let walk = Walk::new(c8);
//! let amp = walk.amplitude(0, 4, Time::Lattice(6))?;
//! assert!(amp.fidelity() > 0.99);
//! # Ok::<(), ctqw::Error>(())
//! ```

pub mod census;
pub mod classify;
pub mod dynamics;
mod error;
mod expm;
mod numeric;
pub mod ring;
pub mod spectrum;
pub mod sweep;
pub mod verify;

pub use classify::{classify, Certificate, Evidence, PgstStatus, Verdict, VerdictKind};
pub use dynamics::{
    adjacency_matrix, oracle_matrix_exponential, product_law_residual, Amplitude, Time, Walk,
};
pub use error::{Error, Result};
pub use ring::{ConnectionSet, OrbitDecomposition};
pub use spectrum::{circulant_eigenvalues, cycle_eigenvalues, Spectrum, DEFAULT_INT_TOL};
pub use sweep::{
    almost_periodicity_sweep, convergence_report, sweep_dense, sweep_lattice, SweepTrace,
};

// Code blocks in the README and the guide double as doctests so neither can
// drift from the API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            #[allow(dead_code)]
            struct $name;
        };
    }

    chapter!(Readme, "../../../README.md");
    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(CirculantGraphs, "../../../book/src/circulant-graphs.md");
    chapter!(Spectra, "../../../book/src/spectra.md");
    chapter!(Dynamics, "../../../book/src/dynamics.md");
    chapter!(Classification, "../../../book/src/classification.md");
    chapter!(Sweeps, "../../../book/src/sweeps.md");
    chapter!(CommandLine, "../../../book/src/cli.md");
}
