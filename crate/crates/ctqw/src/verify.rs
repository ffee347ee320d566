//! Randomized invariant batteries over the whole pipeline, runnable from
//! tests and from the command line. Every battery draws from a seeded
//! generator, so a run is reproducible from its seed.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::classify::{classify, verify_certificate, VerdictKind};
use crate::dynamics::{
    max_entry_distance, oracle_matrix_exponential, product_law_residual, Time, Walk,
};
use crate::ring::{proper_divisors, ConnectionSet};
use crate::sweep::{merge, sweep_lattice_range};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(name: &'static str, cases: usize, tolerance: f64, max_residual: f64) -> Self {
        SuiteResult {
            name,
            cases,
            tolerance,
            max_residual,
            passed: max_residual <= tolerance,
        }
    }
}

pub struct Config {
    pub seed: u64,
    pub cases: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0x77a1_4b5e,
            cases: 100,
        }
    }
}

/// A random symmetric non-empty connection set over Z_n.
pub fn random_set(rng: &mut StdRng, n: u64) -> ConnectionSet {
    loop {
        let mut elements = Vec::new();
        for x in 1..=n / 2 {
            if rng.random_bool(0.5) {
                elements.push(x);
                if x != n - x {
                    elements.push(n - x);
                }
            }
        }
        if !elements.is_empty() {
            return ConnectionSet::new(n, &elements).expect("construction is symmetric");
        }
    }
}

fn random_walk(rng: &mut StdRng, n_max: u64) -> Walk {
    let n = rng.random_range(2..=n_max);
    Walk::new(random_set(rng, n))
}

/// Row norms of H(t) stay at 1.
pub fn unitarity(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut worst = 0.0f64;
    for _ in 0..config.cases {
        let walk = random_walk(&mut rng, 64);
        let t = rng.random_range(0.0..1000.0);
        let u = rng.random_range(0..walk.order());
        let row = walk.transition_row(u, t).expect("u < n");
        let norm2: f64 = row.iter().map(|a| a.value().norm_sqr()).sum();
        worst = worst.max((norm2 - 1.0).abs());
    }
    SuiteResult::new("unitarity", config.cases, 1e-10, worst)
}

/// H(t) is symmetric entrywise.
pub fn matrix_symmetry(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x1);
    let mut worst = 0.0f64;
    for _ in 0..config.cases {
        let walk = random_walk(&mut rng, 48);
        let t = rng.random_range(0.0..200.0);
        let n = walk.order();
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        let a = walk.amplitude(u, v, t).expect("in range").value();
        let b = walk.amplitude(v, u, t).expect("in range").value();
        worst = worst.max((a - b).norm());
    }
    SuiteResult::new("matrix-symmetry", config.cases, 1e-12, worst)
}

/// H(t)_{u,v} depends only on (v - u) mod n.
pub fn shift_invariance(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x2);
    let mut worst = 0.0f64;
    for _ in 0..config.cases {
        let walk = random_walk(&mut rng, 48);
        let t = rng.random_range(0.0..200.0);
        let n = walk.order();
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        let a = walk.amplitude(u, v, t).expect("in range").value();
        let b = walk
            .amplitude(0, (v + n - u) % n, t)
            .expect("in range")
            .value();
        worst = worst.max((a - b).norm());
    }
    SuiteResult::new("shift-invariance", config.cases, 1e-12, worst)
}

/// Integral graphs return to the identity at every lattice time.
pub fn integral_periodicity(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x3);
    let mut worst = 0.0f64;
    let mut cases = 0;
    while cases < config.cases {
        let n = rng.random_range(2..=24u64);
        let divisors = proper_divisors(n);
        let chosen: Vec<u64> = divisors
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        if chosen.is_empty() {
            continue;
        }
        let set = ConnectionSet::gcd_set(n, &chosen).expect("proper divisors");
        let walk = Walk::new(set);
        for k in 1..=10u64 {
            let row = walk.transition_row(0, Time::Lattice(k)).expect("vertex 0");
            let dev = row
                .iter()
                .enumerate()
                .map(|(v, a)| {
                    let want = if v == 0 { 1.0 } else { 0.0 };
                    (a.value() - num_complex::Complex64::new(want, 0.0)).norm()
                })
                .fold(0.0, f64::max);
            worst = worst.max(dev);
        }
        cases += 1;
    }
    SuiteResult::new("integral-periodicity", cases, 1e-9, worst)
}

/// Closed-form amplitudes match the dense matrix exponential.
pub fn oracle_equivalence(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x4);
    let cases = config.cases.min(50);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let walk = random_walk(&mut rng, 64);
        let t = rng.random_range(0.0..100.0);
        let dense = oracle_matrix_exponential(walk.set(), t).expect("n <= 512");
        let closed = walk.transition_matrix(t);
        worst = worst.max(max_entry_distance(&dense, &closed));
    }
    SuiteResult::new("oracle-equivalence", cases, 1e-8, worst)
}

/// H restricted to a disjoint union is the product of the parts.
pub fn product_law(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x5);
    let cases = config.cases.min(50);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < cases {
        let n = rng.random_range(4..=32u64);
        let a = random_set(&mut rng, n);
        let b = random_set(&mut rng, n);
        let Ok(_) = a.try_union(&b) else { continue };
        let t = rng.random_range(0.0..50.0);
        worst = worst.max(product_law_residual(&a, &b, t).expect("disjoint"));
        let k = rng.random_range(1..=1000u64);
        worst = worst.max(product_law_residual(&a, &b, Time::Lattice(k)).expect("disjoint"));
        done += 1;
    }
    SuiteResult::new("product-law", cases, 1e-10, worst)
}

/// Envelopes are strictly increasing and fidelities stay in [0, 1].
pub fn envelope_monotonicity(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x6);
    let mut violations = 0.0f64;
    for _ in 0..config.cases {
        let walk = random_walk(&mut rng, 32);
        let n = walk.order();
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        let trace = sweep_lattice_range(&walk, u, v, 1, 300).expect("in range");
        for pair in trace.envelope.windows(2) {
            if pair[1].fidelity <= pair[0].fidelity || pair[1].index <= pair[0].index {
                violations += 1.0;
            }
        }
        if !trace
            .samples
            .iter()
            .all(|s| (0.0..=1.0).contains(&s.fidelity))
        {
            violations += 1.0;
        }
    }
    SuiteResult::new("envelope-monotonicity", config.cases, 0.0, violations)
}

/// Range-split sweeps merge to exactly the serial result.
pub fn parallel_merge_determinism(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x7);
    let mut violations = 0.0f64;
    for _ in 0..config.cases {
        let walk = random_walk(&mut rng, 32);
        let n = walk.order();
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        let k_max = rng.random_range(10..=400u64);
        let serial = sweep_lattice_range(&walk, u, v, 1, k_max).expect("in range");
        let parts = rng.random_range(2..=5u64).min(k_max);
        let chunk = k_max.div_ceil(parts);
        let merged = (0..parts)
            .map(|i| {
                let from = 1 + i * chunk;
                let to = ((i + 1) * chunk).min(k_max);
                sweep_lattice_range(&walk, u, v, from, to).expect("in range")
            })
            .reduce(merge)
            .expect("at least one part");
        if merged.envelope != serial.envelope || merged.samples != serial.samples {
            violations += 1.0;
        }
    }
    SuiteResult::new("parallel-merge-determinism", config.cases, 0.0, violations)
}

/// Classifier sanity on random inputs: odd orders never get a transfer
/// verdict, and every certificate replays.
pub fn classifier_soundness(config: &Config) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x8);
    let mut violations = 0.0f64;
    for _ in 0..config.cases {
        let n = rng.random_range(2..=40u64);
        let set = random_set(&mut rng, n);
        let v = classify(&set);
        if n % 2 == 1 && v.kind == VerdictKind::Pgst {
            violations += 1.0;
        }
        if !verify_certificate(&set, &v) {
            violations += 1.0;
        }
        if classify(&set) != v {
            violations += 1.0;
        }
    }
    SuiteResult::new("classifier-soundness", config.cases, 0.0, violations)
}

/// Run every battery.
pub fn run_all(config: &Config) -> Vec<SuiteResult> {
    vec![
        unitarity(config),
        matrix_symmetry(config),
        shift_invariance(config),
        integral_periodicity(config),
        oracle_equivalence(config),
        product_law(config),
        envelope_monotonicity(config),
        parallel_merge_determinism(config),
        classifier_soundness(config),
    ]
}
