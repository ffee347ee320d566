//! Acceptance suite: end-to-end checks of the closed-form walk, the
//! classification rules, and their numerical witnesses, each at a pinned
//! tolerance. Run with `cargo test --test acceptance -- --nocapture` to see
//! one PASS line per criterion.

use std::f64::consts::{PI, SQRT_2, TAU};

use ctqw::classify::{classify, verify_certificate, Certificate, VerdictKind};
use ctqw::ring::{odd_prime_factors, symmetric_sets};
use ctqw::verify::{self, Config};
use ctqw::{
    almost_periodicity_sweep, census, circulant_eigenvalues, oracle_matrix_exponential,
    sweep_dense, sweep_lattice, ConnectionSet, Walk,
};

fn pass(criterion: u32, detail: &str) {
    println!("PASS criterion {criterion}: {detail}");
}

/// 1. Integrality of the spectrum coincides with the gcd-set property for
///    every symmetric set with n <= 12, at tolerance 1e-6.
#[test]
fn criterion_1_integrality_equivalence_exhaustive() {
    let mut graphs = 0usize;
    for n in 2..=12u64 {
        for set in symmetric_sets(n) {
            let spec = circulant_eigenvalues(&set);
            assert_eq!(
                spec.is_integral_within(1e-6),
                set.is_gcd_set(),
                "disagreement at {set}: max deviation {}",
                spec.max_int_deviation()
            );
            graphs += 1;
        }
    }
    pass(
        1,
        &format!("integrality <=> gcd-set across {graphs} graphs, zero disagreements"),
    );
}

/// 2. Closed-form amplitudes match the dense matrix exponential to 1e-8 on
///    50 random (graph, time) pairs with n <= 64.
#[test]
fn criterion_2_closed_form_vs_dense_oracle() {
    let result = verify::oracle_equivalence(&Config {
        seed: 0xacce97,
        cases: 50,
    });
    assert_eq!(result.cases, 50);
    assert!(
        result.passed,
        "max |closed - dense| = {} > {}",
        result.max_residual, result.tolerance
    );
    pass(
        2,
        &format!(
            "50 random oracle comparisons, max deviation {:.3e} <= 1e-8",
            result.max_residual
        ),
    );
}

/// 3. The transition matrix of a disjoint union is the product of the parts,
///    to 1e-10, on 50 random pairs including lattice times up to k = 1000.
#[test]
fn criterion_3_product_law() {
    let result = verify::product_law(&Config {
        seed: 0xacce97,
        cases: 50,
    });
    assert_eq!(result.cases, 50);
    assert!(
        result.passed,
        "max product-law residual = {} > {}",
        result.max_residual, result.tolerance
    );
    pass(
        3,
        &format!(
            "50 random disjoint unions, max residual {:.3e} <= 1e-10",
            result.max_residual
        ),
    );
}

/// 4. Lattice transfer witnesses for the power-of-two family.
#[test]
fn criterion_4_lattice_transfer_witnesses() {
    // C_8 at k = 6: fidelity (1 - cos(12*pi*sqrt(2)))/2, about 0.9978, and
    // oracle-confirmed.
    let c8 = ConnectionSet::new(8, &[1, 7]).unwrap();
    let walk = Walk::new(c8.clone());
    let trace = sweep_lattice(&walk, 0, 4, 10).unwrap();
    let k6 = trace.samples.iter().find(|s| s.index == 6).unwrap();
    let closed_form = (1.0 - (TAU * 6.0 * SQRT_2).cos()) / 2.0;
    assert!(k6.fidelity >= 0.99, "C_8 k=6 fidelity {}", k6.fidelity);
    assert!((k6.fidelity - closed_form).abs() <= 1e-9);
    let dense = oracle_matrix_exponential(&c8, TAU * 6.0).unwrap();
    assert!((dense[(0, 4)].norm() - k6.fidelity).abs() <= 1e-8);

    // C_16 with S = {1,15}: fidelity 0.95 is reached within k <= 10^6.
    let c16 = Walk::new(ConnectionSet::new(16, &[1, 15]).unwrap());
    let trace16 = sweep_lattice(&c16, 0, 8, 1_000_000).unwrap();
    let first16 = trace16
        .envelope
        .iter()
        .find(|s| s.fidelity >= 0.95)
        .expect("C_16 must reach 0.95 within 10^6");

    // Z_8 with {1,2,6,7}: the complete orbit {2,6} is lattice-trivial, so
    // the fidelity reaches 0.99 by k <= 10^4 (in fact at the same k = 6).
    let z8 = Walk::new(ConnectionSet::new(8, &[1, 2, 6, 7]).unwrap());
    let trace8 = sweep_lattice(&z8, 0, 4, 10_000).unwrap();
    let first8 = trace8
        .envelope
        .iter()
        .find(|s| s.fidelity >= 0.99)
        .expect("Z_8 {1,2,6,7} must reach 0.99 within 10^4");

    pass(
        4,
        &format!(
            "C_8 (k=6, f={:.10}); C_16 first >=0.95 at (k={}, f={:.10}); \
             Z_8 {{1,2,6,7}} first >=0.99 at (k={}, f={:.10})",
            k6.fidelity, first16.index, first16.fidelity, first8.index, first8.fidelity
        ),
    );
}

/// 5. The size-4 partial orbit on Z_16 is almost periodic along the lattice:
///    return fidelity reaches 0.95 within k <= 10^6.
#[test]
fn criterion_5_almost_periodicity_witness() {
    let walk = Walk::new(ConnectionSet::new(16, &[1, 7, 9, 15]).unwrap());
    let trace = almost_periodicity_sweep(&walk, 1_000_000).unwrap();
    let first = trace
        .envelope
        .iter()
        .find(|s| s.fidelity >= 0.95)
        .expect("return fidelity must reach 0.95 within 10^6");
    pass(
        5,
        &format!(
            "Z_16 {{1,7,9,15}} return first >=0.95 at (k={}, f={:.10})",
            first.index, first.fidelity
        ),
    );
}

/// 6. The scaled-embedding construction on Z_24 is recognized with its full
///    certificate, and the sweep confirms transfer at k = 6.
#[test]
fn criterion_6_scaled_embedding_witness() {
    let set = ConnectionSet::new(24, &[2, 3, 10, 14, 21, 22]).unwrap();
    let verdict = classify(&set);
    assert_eq!(verdict.kind, VerdictKind::Pgst);
    assert_eq!(verdict.pair, Some((0, 12)));
    match verdict.certificate.as_ref().unwrap() {
        Certificate::ScaledEmbedding {
            q,
            inner,
            divisors,
            residue,
            four_cycle_boundary,
        } => {
            assert_eq!(*q, 3);
            assert_eq!(inner.n(), 8);
            assert_eq!(inner.elements(), &[1, 7]);
            assert_eq!(divisors, &[2]);
            assert_eq!(*residue, Some(2));
            assert!(!four_cycle_boundary);
        }
        other => panic!("unexpected certificate {other:?}"),
    }
    assert!(verify_certificate(&set, &verdict));

    let walk = Walk::new(set);
    let trace = sweep_lattice(&walk, 0, 12, 10).unwrap();
    let k6 = trace.samples.iter().find(|s| s.index == 6).unwrap();
    assert!(k6.fidelity >= 0.99, "k=6 fidelity {}", k6.fidelity);
    // Same sqrt(2) mechanism as C_8: the gcd-side orbits are lattice-trivial
    // and q copies of the 8-cycle carry the transfer.
    let c8_k6 = (1.0 - (TAU * 6.0 * SQRT_2).cos()) / 2.0;
    assert!((k6.fidelity - c8_k6).abs() <= 1e-9);
    pass(
        6,
        &format!(
            "Z_24 embedding certified (q=3, inner {{1,7}}, D={{2}}), k=6 fidelity {:.10}",
            k6.fidelity
        ),
    );
}

/// 7. The eigenvalue-difference identity vanishes to 1e-9 for every n = m*p
///    up to 60 with random qualifying sets, and no obstruction verdict in the
///    census over n in {6,10,12,14} is contradicted by a k <= 1000 sweep.
#[test]
fn criterion_7_prime_obstruction() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(0xacce97);
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for n in 3..=60u64 {
        for p in odd_prime_factors(n) {
            let m = n / p;
            let pairs: Vec<Vec<u64>> = (1..=n / 2)
                .filter(|&x| x % p != 0)
                .map(|x| if x == n - x { vec![x] } else { vec![x, n - x] })
                .collect();
            for _ in 0..10 {
                let mut elements = Vec::new();
                for pair in &pairs {
                    if rng.random_bool(0.5) {
                        elements.extend_from_slice(pair);
                    }
                }
                if elements.is_empty() {
                    elements.extend_from_slice(&pairs[0]);
                }
                let set = ConnectionSet::new(n, &elements).unwrap();
                let residual = ctqw::spectrum::prime_identity_residual(&set, m, p).unwrap();
                assert!(
                    residual.abs() <= 1e-9,
                    "n={n} p={p} {set}: residual {residual}"
                );
                worst = worst.max(residual.abs());
                checked += 1;
            }
        }
    }

    let rows = census::run(&[6, 10, 12, 14], 1000).unwrap();
    let mut no_pgst_rows = 0usize;
    for row in &rows {
        assert!(!row.contradiction, "census contradiction at {}", row.set);
        if row.verdict.kind == VerdictKind::NoPgst {
            no_pgst_rows += 1;
            let best = row.antipodal_best.expect("even order");
            assert!(
                best.fidelity <= 0.9999,
                "{}: NoPGST but fidelity {} at k={}",
                row.set,
                best.fidelity,
                best.index
            );
        }
    }
    pass(
        7,
        &format!(
            "identity residual <= {worst:.3e} over {checked} random sets; \
             {no_pgst_rows} NoPGST census rows all below 0.9999"
        ),
    );
}

/// 8. Randomized invariant batteries, 100 cases each: unitarity 1e-10,
///    matrix symmetry 1e-12, shift invariance 1e-12, integral periodicity
///    1e-9, envelope monotonicity, parallel-merge determinism.
#[test]
fn criterion_8_invariant_batteries() {
    let config = Config {
        seed: Config::default().seed,
        cases: 100,
    };
    let results = verify::run_all(&config);
    for suite in &results {
        assert!(
            suite.passed,
            "battery {} failed: max residual {} > tolerance {}",
            suite.name, suite.max_residual, suite.tolerance
        );
    }
    let summary: Vec<String> = results
        .iter()
        .map(|s| format!("{}={:.2e}", s.name, s.max_residual))
        .collect();
    pass(
        8,
        &format!(
            "all {} batteries green ({})",
            results.len(),
            summary.join(", ")
        ),
    );
}

/// 9. The 4-cycle boundary: perfect transfer off the lattice at t = pi/2,
///    zero antipodal fidelity on the lattice, and the boundary flag on the
///    verdict.
#[test]
fn criterion_9_four_cycle_boundary() {
    let c4 = ConnectionSet::new(4, &[1, 3]).unwrap();
    let walk = Walk::new(c4.clone());

    let dense = sweep_dense(&walk, 0, 2, TAU, PI / 100.0).unwrap();
    let best = dense.best().unwrap();
    assert!(
        (best.fidelity - 1.0).abs() <= 1e-9,
        "dense best {}",
        best.fidelity
    );
    assert!((best.t - PI / 2.0).abs() <= PI / 100.0 + 1e-12);

    let lattice = sweep_lattice(&walk, 0, 2, 1000).unwrap();
    assert!(lattice.best().unwrap().fidelity <= 1e-9);

    let verdict = classify(&c4);
    assert_eq!(verdict.kind, VerdictKind::AlmostPeriodic);
    assert!(
        verdict.four_cycle_boundary,
        "boundary flag missing: {verdict:?}"
    );
    assert!(verify_certificate(&c4, &verdict));

    // The embedded version carries the same flag.
    let embedded = ConnectionSet::new(12, &[2, 3, 9, 10]).unwrap();
    let v2 = classify(&embedded);
    assert!(v2.four_cycle_boundary);

    // At t = pi/2 the walk really does move all amplitude across.
    let amp = walk.amplitude(0, 2, PI / 2.0).unwrap();
    assert!((amp.fidelity() - 1.0).abs() <= 1e-12);

    pass(
        9,
        &format!(
            "C_4: dense max {:.12} at t={:.6} (pi/2 = {:.6}), lattice max {:.3e}, boundary flagged",
            best.fidelity,
            best.t,
            PI / 2.0,
            lattice.best().unwrap().fidelity
        ),
    );
}
