//! Exhaustive small-order census: classify every symmetric connection set,
//! sweep the lattice for numerical witnesses, and flag any row where the
//! numbers contradict the symbolic verdict.

use serde::Serialize;

use crate::classify::{classify, Verdict, VerdictKind};
use crate::dynamics::Walk;
use crate::error::{Error, Result};
use crate::ring::{symmetric_sets, ConnectionSet};
use crate::sweep::{almost_periodicity_sweep, sweep_lattice, Sample};

/// Orders above this blow up the 2^(n/2) set enumeration.
pub const MAX_CENSUS_ORDER: u64 = 24;

/// A verdict certified as NoPGST must stay below this antipodal fidelity
/// on the sweep; anything higher is flagged as a contradiction.
pub const NO_PGST_CEILING: f64 = 0.9999;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub set: ConnectionSet,
    pub verdict: Verdict,
    /// Best antipodal lattice fidelity within k_max; absent for odd orders.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipodal_best: Option<Sample>,
    /// Best return fidelity at vertex 0 within k_max.
    pub return_best: Sample,
    /// True when the numerics contradict the symbolic verdict.
    pub contradiction: bool,
}

/// Census over all symmetric sets for each order in `orders`.
pub fn run(orders: &[u64], k_max: u64) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for &n in orders {
        if n > MAX_CENSUS_ORDER {
            return Err(Error::TooLarge {
                n,
                max: MAX_CENSUS_ORDER,
            });
        }
        if n < 2 {
            return Err(Error::OrderTooSmall { n, min: 2 });
        }
        for set in symmetric_sets(n) {
            rows.push(build_row(set, k_max)?);
        }
    }
    Ok(rows)
}

fn build_row(set: ConnectionSet, k_max: u64) -> Result<CensusRow> {
    let n = set.n();
    let verdict = classify(&set);
    let walk = Walk::new(set.clone());
    let antipodal_best = if n.is_multiple_of(2) {
        sweep_lattice(&walk, 0, n / 2, k_max)?.best()
    } else {
        None
    };
    let return_best = almost_periodicity_sweep(&walk, k_max)?
        .best()
        .expect("non-empty sweep");

    let contradiction = match verdict.kind {
        // A negative verdict contradicted by near-unit antipodal fidelity.
        VerdictKind::NoPgst => antipodal_best.is_some_and(|b| b.fidelity > NO_PGST_CEILING),
        _ => false,
    };
    Ok(CensusRow {
        set,
        verdict,
        antipodal_best,
        return_best,
        contradiction,
    })
}

/// Write the census as CSV with stable columns.
pub fn write_csv<W: std::io::Write>(rows: &[CensusRow], mut w: W) -> std::io::Result<()> {
    writeln!(
        w,
        "n,set,kind,certificate,antipodal_best_k,antipodal_best_fidelity,return_best_k,return_best_fidelity,contradiction"
    )?;
    for row in rows {
        let elements: Vec<String> = row.set.elements().iter().map(u64::to_string).collect();
        let tag = row.verdict.certificate.as_ref().map_or("none", |c| c.tag());
        let (ak, af) = row
            .antipodal_best
            .map_or((String::new(), String::new()), |b| {
                (b.index.to_string(), b.fidelity.to_string())
            });
        writeln!(
            w,
            "{},{},{:?},{},{},{},{},{},{}",
            row.set.n(),
            elements.join(" "),
            row.verdict.kind,
            tag,
            ak,
            af,
            row.return_best.index,
            row.return_best.fidelity,
            row.contradiction
        )?;
    }
    Ok(())
}
