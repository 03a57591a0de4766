//! Code parameters of the periodic regime and the subsystem-code view of the checks.

use super::checks::CheckAssignment;
use super::schedule::{Trace, INIT_ROUNDS};
use crate::error::{Error, Result};
use crate::lattice::ColoredLattice;
use crate::linalg;
use crate::logical::{build_loop_operator, distance_upper_bound, LoopKind};
use num_rational::Ratio;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub rate: Ratio<i64>,
    pub d_upper: Option<usize>,
    pub d_exact: Option<usize>,
    /// Failed cross-checks, empty when every identity holds.
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaugeReport {
    pub gauge_rank: usize,
    pub center_rank: usize,
    pub gauge_qudits: usize,
    pub logical_qudits: usize,
}

/// `1/2 - 3/p + 2/n`.
pub fn rate_formula(p: usize, n: usize) -> Ratio<i64> {
    Ratio::new(1, 2) - Ratio::new(3, p as i64) + Ratio::new(2, n as i64)
}

/// `n, k, k/n` and `d_upper` at `round`, with the genus and counting cross-checks.
pub fn code_parameters(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    trace: &Trace,
    round: usize,
) -> Result<CodeParameters> {
    if round + 1 < INIT_ROUNDS {
        return Err(Error::Initialization(round));
    }
    let rec = trace.round(round)?;
    let n = lat.n();
    let k = n - rec.tableau.rank();
    let rate = Ratio::new(k as i64, n as i64);
    let mut mismatches = Vec::new();
    if k != 2 * lat.genus {
        mismatches.push(format!("k = {k} but 2g = {}", 2 * lat.genus));
    }
    let n_p = lat.n_p() as i64;
    let counted = Ratio::new(n_p * lat.p as i64, 6) - n_p + 2;
    if counted != Ratio::from_integer(k as i64) {
        mismatches.push(format!("k = {k} but n_p p/6 - n_p + 2 = {counted}"));
    }
    let formula = rate_formula(lat.p, n);
    if rate != formula {
        mismatches.push(format!("k/n = {rate} but 1/2 - 3/p + 2/n = {formula}"));
    }
    let mut reps = Vec::new();
    for l in &lat.loops {
        for kind in [LoopKind::Type1, LoopKind::Type2] {
            if let Ok(op) = build_loop_operator(lat, checks, l, round, kind) {
                reps.push(op.operator);
            }
        }
    }
    let d_upper = if reps.is_empty() { None } else { Some(distance_upper_bound(trace, round, &reps, 2)?) };
    Ok(CodeParameters { n, k, rate, d_upper, d_exact: None, mismatches })
}

/// Ranks of the check group and of its center, computed over GF(D).
pub fn gauge_analysis(lat: &ColoredLattice, checks: &CheckAssignment) -> GaugeReport {
    let dim = checks.dim();
    let n = lat.n();
    let mut rows: Vec<Vec<u32>> = (0..lat.edges.len()).map(|e| checks.check(lat, e).symplectic()).collect();
    let pivots = linalg::rref(&mut rows, dim);
    let r = pivots.len();
    // Gram matrix of the symplectic form on a basis of the span
    let form = |a: &[u32], b: &[u32]| -> u32 {
        let mut acc = 0;
        for i in 0..n {
            acc = dim.add(acc, dim.mul(a[n + i], b[i]));
            acc = dim.sub(acc, dim.mul(a[i], b[n + i]));
        }
        acc
    };
    let gram: Vec<Vec<u32>> = rows.iter().map(|a| rows.iter().map(|b| form(a, b)).collect()).collect();
    let gram_rank = linalg::rank(&gram, dim);
    let center_rank = r - gram_rank;
    let gauge_qudits = gram_rank / 2;
    GaugeReport { gauge_rank: r, center_rank, gauge_qudits, logical_qudits: n - center_rank - gauge_qudits }
}
