//! Modular arithmetic on Z_n: connection sets, gcd-orbits, divisor lattices,
//! and the partial-orbit decomposition that drives the classifier.
//!
//! Everything here is exact integer arithmetic; n is expected at desk scale,
//! so all operations are plain O(n) scans and trial division.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Greatest common divisor (Euclid).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Proper divisors of `n` (every d | n with d < n), ascending.
pub fn proper_divisors(n: u64) -> Vec<u64> {
    (1..n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Largest odd divisor of `n`.
pub fn odd_part(mut n: u64) -> u64 {
    while n.is_multiple_of(2) {
        n /= 2;
    }
    n
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Odd prime factors of `n`, ascending, by trial division.
pub fn odd_prime_factors(n: u64) -> Vec<u64> {
    let mut rest = odd_part(n);
    let mut out = Vec::new();
    let mut p = 3;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            out.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 2;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && odd_prime_factors(p) == [p]
}

/// The gcd-orbit `{x in 1..n-1 : gcd(x, n) = d}` for a proper divisor d of n.
///
/// Its size is Euler's phi of n/d.
pub fn orbit(n: u64, d: u64) -> Result<Vec<u64>> {
    if d == 0 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, n });
    }
    Ok((1..n).filter(|&x| gcd(x, n) == d).collect())
}

/// A symmetric connection set over Z_n: the edge set of a circulant graph.
///
/// Invariants enforced at construction: elements lie in 1..=n-1, the set is
/// closed under negation mod n, and the storage is sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: u64,
    elements: Vec<u64>,
}

impl ConnectionSet {
    /// Validate and canonicalize a raw element list.
    pub fn new(n: u64, raw: &[u64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall { n, min: 2 });
        }
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut elements = raw.to_vec();
        elements.sort_unstable();
        elements.dedup();
        for &x in &elements {
            if x == 0 {
                return Err(Error::ZeroInSet);
            }
            if x >= n {
                return Err(Error::OutOfRange {
                    element: x,
                    max: n - 1,
                });
            }
        }
        for &x in elements.iter().rev() {
            let neg = (n - x) % n;
            if elements.binary_search(&neg).is_err() {
                return Err(Error::NotSymmetric {
                    element: x,
                    missing: neg,
                });
            }
        }
        Ok(ConnectionSet { n, elements })
    }

    /// The gcd-set `S_n(D)`: the union of the orbits at each divisor in `D`.
    pub fn gcd_set(n: u64, divisors: &[u64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall { n, min: 2 });
        }
        if divisors.is_empty() {
            return Err(Error::EmptyDivisorSet);
        }
        let mut elements = Vec::new();
        let mut ds = divisors.to_vec();
        ds.sort_unstable();
        ds.dedup();
        for d in ds {
            elements.extend(orbit(n, d)?);
        }
        elements.sort_unstable();
        Ok(ConnectionSet { n, elements })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Vertex degree of the circulant graph, |S|.
    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// True iff the set is a union of complete gcd-orbits.
    pub fn is_gcd_set(&self) -> bool {
        for d in proper_divisors(self.n) {
            let orb = orbit(self.n, d).expect("proper divisor");
            let hit = orb.iter().filter(|&&x| self.contains(x)).count();
            if hit != 0 && hit != orb.len() {
                return false;
            }
        }
        true
    }

    /// The divisors whose full orbit lies inside the set.
    pub fn full_orbit_divisors(&self) -> Vec<u64> {
        proper_divisors(self.n)
            .into_iter()
            .filter(|&d| {
                orbit(self.n, d)
                    .expect("proper divisor")
                    .iter()
                    .all(|&x| self.contains(x))
            })
            .collect()
    }

    /// Partition a non-gcd-set into the partial orbit at the least such
    /// divisor, the union of complete orbits, and the rest.
    pub fn decompose(&self) -> Result<OrbitDecomposition> {
        let mut d_min = None;
        for d in proper_divisors(self.n) {
            let orb = orbit(self.n, d).expect("proper divisor");
            let hit = orb.iter().filter(|&&x| self.contains(x)).count();
            if hit != 0 && hit != orb.len() {
                d_min = Some(d);
                break;
            }
        }
        let d = d_min.ok_or(Error::IsIntegral)?;

        let mut mixed = Vec::new();
        let mut integral_part = Vec::new();
        let mut residual = Vec::new();
        let full: Vec<u64> = self.full_orbit_divisors();
        for &x in &self.elements {
            let g = gcd(x, self.n);
            if g == d {
                mixed.push(x);
            } else if full.contains(&g) {
                integral_part.push(x);
            } else {
                residual.push(x);
            }
        }
        Ok(OrbitDecomposition {
            d,
            mixed,
            integral_part,
            residual,
        })
    }

    /// Union with a disjoint set over the same Z_n.
    pub fn try_union(&self, other: &ConnectionSet) -> Result<ConnectionSet> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        if let Some(&x) = self.elements.iter().find(|&&x| other.contains(x)) {
            return Err(Error::NotDisjoint(x));
        }
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        elements.sort_unstable();
        Ok(ConnectionSet {
            n: self.n,
            elements,
        })
    }
}

impl std::fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z_{} {{", self.n)?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ConnectionSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            n: u64,
            set: &'a [u64],
        }
        Raw {
            n: self.n,
            set: &self.elements,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConnectionSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u64,
            set: Vec<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        ConnectionSet::new(raw.n, &raw.set).map_err(D::Error::custom)
    }
}

/// Three-way partition of a non-integral connection set.
///
/// `mixed` is the intersection with the orbit at `d`, the least divisor whose
/// orbit is partially (but not fully) covered; `integral_part` is the union of
/// the complete orbits inside the set; `residual` is everything else, all of
/// it sitting in partial orbits at divisors larger than `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub d: u64,
    pub mixed: Vec<u64>,
    pub integral_part: Vec<u64>,
    pub residual: Vec<u64>,
}

/// Every non-empty symmetric connection set over Z_n, in a deterministic
/// order. The generators are the negation pairs {x, n-x}; there are
/// 2^(number of pairs) - 1 sets.
pub fn symmetric_sets(n: u64) -> Vec<ConnectionSet> {
    let mut pairs: Vec<Vec<u64>> = Vec::new();
    for x in 1..=n / 2 {
        if x == n - x {
            pairs.push(vec![x]);
        } else {
            pairs.push(vec![x, n - x]);
        }
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << pairs.len()) {
        let mut elements = Vec::new();
        for (i, pair) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                elements.extend_from_slice(pair);
            }
        }
        elements.sort_unstable();
        out.push(ConnectionSet { n, elements });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: direct gcd scan over 1..n-1.
    fn orbit_by_scan(n: u64, d: u64) -> Vec<u64> {
        (1..n).filter(|&x| gcd(x, n) == d).collect()
    }

    #[test]
    fn connection_set_accepts_symmetric_input() {
        let s = ConnectionSet::new(8, &[1, 7]).unwrap();
        assert_eq!(s.elements(), &[1, 7]);
        assert_eq!(s.degree(), 2);
    }

    #[test]
    fn connection_set_rejects_asymmetric_input() {
        assert_eq!(
            ConnectionSet::new(8, &[1, 2]),
            Err(Error::NotSymmetric {
                element: 2,
                missing: 6
            })
        );
    }

    #[test]
    fn half_order_element_is_self_paired() {
        let s = ConnectionSet::new(6, &[3]).unwrap();
        assert_eq!(s.elements(), &[3]);
    }

    #[test]
    fn construction_error_paths() {
        assert_eq!(ConnectionSet::new(8, &[]), Err(Error::EmptySet));
        assert_eq!(ConnectionSet::new(8, &[0, 1, 7]), Err(Error::ZeroInSet));
        assert_eq!(
            ConnectionSet::new(8, &[1, 7, 9]),
            Err(Error::OutOfRange { element: 9, max: 7 })
        );
        assert_eq!(
            ConnectionSet::new(1, &[1]),
            Err(Error::OrderTooSmall { n: 1, min: 2 })
        );
    }

    #[test]
    fn duplicates_are_canonicalized() {
        let s = ConnectionSet::new(8, &[7, 1, 1, 7]).unwrap();
        assert_eq!(s.elements(), &[1, 7]);
    }

    #[test]
    fn orbit_matches_gcd_scan() {
        assert_eq!(orbit(8, 1).unwrap(), vec![1, 3, 5, 7]);
        assert_eq!(orbit(12, 3).unwrap(), orbit_by_scan(12, 3));
        assert_eq!(orbit(12, 3).unwrap(), vec![3, 9]);
        assert_eq!(orbit(6, 3).unwrap(), vec![3]);
        for n in 2..=64u64 {
            for d in proper_divisors(n) {
                assert_eq!(orbit(n, d).unwrap(), orbit_by_scan(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn orbit_rejects_non_divisors() {
        assert_eq!(orbit(8, 3), Err(Error::NotADivisor { d: 3, n: 8 }));
        assert_eq!(orbit(8, 8), Err(Error::NotADivisor { d: 8, n: 8 }));
    }

    #[test]
    fn orbits_partition_nonzero_residues() {
        for n in 2..=64u64 {
            let mut seen = vec![false; n as usize];
            for d in proper_divisors(n) {
                for x in orbit(n, d).unwrap() {
                    assert!(!seen[x as usize], "n={n}: {x} covered twice");
                    seen[x as usize] = true;
                }
            }
            assert!(
                seen[1..].iter().all(|&b| b),
                "n={n}: some residue uncovered"
            );
        }
    }

    #[test]
    fn gcd_set_examples() {
        assert_eq!(
            ConnectionSet::gcd_set(12, &[2]).unwrap().elements(),
            &[2, 10]
        );
        assert_eq!(
            ConnectionSet::gcd_set(8, &[1, 2]).unwrap().elements(),
            &[1, 2, 3, 5, 6, 7]
        );
        assert_eq!(ConnectionSet::gcd_set(12, &[]), Err(Error::EmptyDivisorSet));
        assert_eq!(
            ConnectionSet::gcd_set(12, &[5]),
            Err(Error::NotADivisor { d: 5, n: 12 })
        );
    }

    #[test]
    fn gcd_set_recognition() {
        assert!(ConnectionSet::new(8, &[1, 3, 5, 7]).unwrap().is_gcd_set());
        assert!(!ConnectionSet::new(8, &[1, 7]).unwrap().is_gcd_set());
        // {3,9} fills the orbit at 3, but {2,10} only partially fills... scan says
        // S_12(2) = {2,10} is complete, so this union is in fact a gcd-set.
        let s = ConnectionSet::new(12, &[2, 3, 9, 10]).unwrap();
        assert_eq!(orbit_by_scan(12, 2), vec![2, 10]);
        assert!(s.is_gcd_set());
        // A genuinely partial orbit: {1,11} inside S_12(1) = {1,5,7,11}.
        assert!(!ConnectionSet::new(12, &[1, 11]).unwrap().is_gcd_set());
    }

    #[test]
    fn every_constructed_gcd_set_is_recognized() {
        for n in 2..=24u64 {
            let divisors = proper_divisors(n);
            for mask in 1u64..(1 << divisors.len()) {
                let chosen: Vec<u64> = divisors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &d)| d)
                    .collect();
                let s = ConnectionSet::gcd_set(n, &chosen).unwrap();
                assert!(s.is_gcd_set(), "n={n} D={chosen:?}");
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let dec = ConnectionSet::new(8, &[1, 2, 6, 7])
            .unwrap()
            .decompose()
            .unwrap();
        assert_eq!(dec.d, 1);
        assert_eq!(dec.mixed, vec![1, 7]);
        assert_eq!(dec.integral_part, vec![2, 6]);
        assert!(dec.residual.is_empty());

        let dec = ConnectionSet::new(16, &[1, 7, 9, 15])
            .unwrap()
            .decompose()
            .unwrap();
        assert_eq!(dec.d, 1);
        assert_eq!(dec.mixed, vec![1, 7, 9, 15]);
        assert!(dec.integral_part.is_empty());
        assert!(dec.residual.is_empty());

        assert_eq!(
            ConnectionSet::new(8, &[1, 3, 5, 7]).unwrap().decompose(),
            Err(Error::IsIntegral)
        );
    }

    #[test]
    fn decompose_reassembles_and_is_disjoint() {
        for n in 2..=40u64 {
            for s in symmetric_sets(n) {
                let Ok(dec) = s.decompose() else { continue };
                let mut union = dec.mixed.clone();
                union.extend_from_slice(&dec.integral_part);
                union.extend_from_slice(&dec.residual);
                union.sort_unstable();
                assert_eq!(union, s.elements(), "reassembly failed for {s}");
                let total = dec.mixed.len() + dec.integral_part.len() + dec.residual.len();
                assert_eq!(total, s.degree(), "parts overlap for {s}");
                for &x in &dec.residual {
                    assert!(gcd(x, n) > dec.d, "residual {x} at gcd <= d in {s}");
                }
                if dec.d < n / 2 {
                    assert_eq!(dec.mixed.len() % 2, 0, "odd mixed part in {s}");
                }
            }
        }
    }

    #[test]
    fn negation_closure_is_preserved() {
        let closed = |n: u64, xs: &[u64]| xs.iter().all(|&x| xs.contains(&((n - x) % n)));
        for n in [8u64, 12, 16, 20, 24] {
            for d in proper_divisors(n) {
                assert!(closed(n, &orbit(n, d).unwrap()));
            }
            for s in symmetric_sets(n) {
                let Ok(dec) = s.decompose() else { continue };
                assert!(closed(n, &dec.mixed));
                assert!(closed(n, &dec.integral_part));
                assert!(closed(n, &dec.residual));
            }
        }
    }

    #[test]
    fn union_requires_same_order_and_disjointness() {
        let a = ConnectionSet::new(8, &[1, 7]).unwrap();
        let b = ConnectionSet::new(8, &[2, 6]).unwrap();
        assert_eq!(a.try_union(&b).unwrap().elements(), &[1, 2, 6, 7]);
        assert_eq!(a.try_union(&a), Err(Error::NotDisjoint(1)));
        let c = ConnectionSet::new(12, &[1, 11]).unwrap();
        assert_eq!(a.try_union(&c), Err(Error::OrderMismatch(8, 12)));
    }

    #[test]
    fn symmetric_set_census_sizes() {
        assert_eq!(symmetric_sets(2).len(), 1);
        assert_eq!(symmetric_sets(8).len(), 15);
        assert_eq!(symmetric_sets(12).len(), 63);
        for s in symmetric_sets(9) {
            assert!(ConnectionSet::new(9, s.elements()).is_ok());
        }
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(odd_part(24), 3);
        assert_eq!(odd_part(16), 1);
        assert!(is_power_of_two(16));
        assert!(!is_power_of_two(24));
        assert_eq!(odd_prime_factors(60), vec![3, 5]);
        assert_eq!(odd_prime_factors(16), Vec::<u64>::new());
        assert!(is_odd_prime(3));
        assert!(is_odd_prime(31));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(9));
    }
}
