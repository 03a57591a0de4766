//! Exhaustive dense-matrix cross-checks on tiny registers.
//!
//! Both suites enumerate every stabilizer group generated by at most `n`
//! Paulis from a fixed pool and compare the symplectic machinery against
//! explicit `D^n × D^n` matrices.

use crate::dense::{codespace_projector, eigenprojector, DenseMatrix};
use crate::error::Result;
use crate::field::{Dim, Residue};
use crate::noise::noisy_outcome;
use crate::pauli::PauliOperator;
use crate::stabilizer::{GeneratorSet, OutcomeMode, UpdateRule};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const TOL: f64 = 1e-9;
const MAX_LISTED: usize = 16;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub dim: u32,
    pub n: usize,
    pub groups: usize,
    pub cases: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl OracleReport {
    fn new(suite: &str, dim: Dim, n: usize) -> Self {
        OracleReport { suite: suite.into(), dim: dim.get(), n, ..Default::default() }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
        self.failure_count += 1;
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Every non-identity Pauli on `n` qudits, phase 0.
pub fn all_paulis(dim: Dim, n: usize) -> Vec<PauliOperator> {
    let d = dim.get() as i64;
    let total = (d as usize).pow(2 * n as u32);
    (1..total)
        .map(|mut k| {
            let mut ex = vec![0i64; 2 * n];
            for e in ex.iter_mut() {
                *e = (k % d as usize) as i64;
                k /= d as usize;
            }
            PauliOperator::from_exponents(dim, 0, &ex[..n], &ex[n..]).expect("equal lengths")
        })
        .collect()
}

/// Non-identity Paulis supported on a single qudit. At `D = 2` these include
/// `XZ`, which is not an observable with integer `ω` phases.
pub fn single_qudit_paulis(dim: Dim, n: usize) -> Vec<PauliOperator> {
    all_paulis(dim, n).into_iter().filter(|p| p.weight() == 1).collect()
}

/// Generator pool: every Pauli, with a phase tied to its exponents so that
/// phase tracking is exercised without multiplying the pool size.
fn pool(dim: Dim, n: usize) -> Vec<PauliOperator> {
    all_paulis(dim, n)
        .into_iter()
        .map(|p| {
            let s: i64 = p.x().iter().chain(p.z()).map(|&a| a as i64).sum();
            let ph = dim.reduce(s);
            p.with_phase(ph)
        })
        .filter(|p| p.is_observable())
        .collect()
}

/// All independent commuting generator lists of length `0..=n` drawn from the pool.
pub fn enumerate_groups(dim: Dim, n: usize) -> Vec<GeneratorSet> {
    let pool = pool(dim, n);
    let mut out = vec![GeneratorSet::trivial(dim, n)];
    let mut frontier: Vec<(usize, GeneratorSet)> = vec![(0, GeneratorSet::trivial(dim, n))];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, s) in &frontier {
            for (i, p) in pool.iter().enumerate().skip(*start) {
                if !s.commutes_with_all(p) || s.contains_up_to_phase(p).is_some() {
                    continue;
                }
                let mut gens = s.gens().to_vec();
                gens.push(p.clone());
                if let Ok(g) = GeneratorSet::new(dim, n, gens) {
                    out.push(g.clone());
                    next.push((i + 1, g));
                }
            }
        }
        frontier = next;
    }
    out
}

fn normalized(m: &DenseMatrix) -> Option<DenseMatrix> {
    let t = m.trace().re;
    (t > TOL).then(|| m.scale(Complex64::new(1.0 / t, 0.0)))
}

/// Outcome distribution of measuring `m` on the maximally mixed state of `proj`'s range.
fn dense_distribution(proj: &DenseMatrix, m: &PauliOperator) -> Result<Vec<f64>> {
    let tr = proj.trace().re;
    (0..m.dim().get()).map(|o| Ok(eigenprojector(m, o)?.matmul(proj).trace().re / tr)).collect()
}

/// Measurement update against `Π_o Π_S Π_o`, plus sampled uniformity of random outcomes.
pub fn measurement_suite(dim: Dim, n: usize, trials_per_case: usize) -> Result<OracleReport> {
    let mut rep = OracleReport::new("measurement", dim, n);
    let d = dim.get();
    let meas: Vec<_> = single_qudit_paulis(dim, n).into_iter().filter(|m| m.is_observable()).collect();
    let groups = enumerate_groups(dim, n);
    rep.groups = groups.len();
    for s in &groups {
        let proj = codespace_projector(dim, n, s.gens())?;
        for m in &meas {
            rep.cases += 1;
            let dist = dense_distribution(&proj, m)?;
            let mut random = false;
            for o in 0..d {
                let forced = s.measure(m, OutcomeMode::Forced(o));
                if dist[o as usize] < TOL {
                    if forced.is_ok() {
                        rep.fail(format!("S={:?} M={m}: outcome {o} has zero weight but was accepted", lits(s)));
                    }
                    continue;
                }
                let (post, out) = match forced {
                    Ok(x) => x,
                    Err(e) => {
                        rep.fail(format!("S={:?} M={m} o={o}: {e}", lits(s)));
                        continue;
                    }
                };
                random |= !out.deterministic;
                let pm = eigenprojector(m, o)?;
                let want = normalized(&pm.matmul(&proj).matmul(&pm));
                let got = normalized(&codespace_projector(dim, n, post.gens())?);
                if want.zip(got).map(|(a, b)| a.approx_eq(&b)) != Some(true) {
                    rep.fail(format!("S={:?} M={m} o={o}: post-measurement projector differs", lits(s)));
                }
            }
            if random {
                if dist.iter().any(|&p| (p - 1.0 / d as f64).abs() > TOL) {
                    rep.fail(format!("S={:?} M={m}: random outcome is not uniform in the dense model", lits(s)));
                }
                let mut counts = vec![0usize; d as usize];
                for t in 0..trials_per_case {
                    let mut g = s.clone();
                    let mut rng = ChaCha8Rng::seed_from_u64(t as u64);
                    let (o, rule) = g.measure_with(m, None, |k| rng.gen_range(0..k))?;
                    if rule == UpdateRule::Member {
                        rep.fail(format!("S={:?} M={m}: random case took the member branch", lits(s)));
                    }
                    counts[o.value as usize] += 1;
                }
                let pr = 1.0 / d as f64;
                let mean = trials_per_case as f64 * pr;
                let sigma = (trials_per_case as f64 * pr * (1.0 - pr)).sqrt();
                for (o, &c) in counts.iter().enumerate() {
                    if (c as f64 - mean).abs() > 5.0 * sigma {
                        rep.fail(format!("S={:?} M={m}: outcome {o} drawn {c} times of {trials_per_case}", lits(s)));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Frame rule against dense error-then-measure, for every group, single-qudit
/// error and measured Pauli.
pub fn frame_suite(dim: Dim, n: usize) -> Result<OracleReport> {
    let mut rep = OracleReport::new("frame", dim, n);
    let d = dim.get() as usize;
    let errors = single_qudit_paulis(dim, n);
    let meas: Vec<_> = all_paulis(dim, n).into_iter().filter(|m| m.is_observable()).collect();
    let groups = enumerate_groups(dim, n);
    rep.groups = groups.len();
    for s in &groups {
        let proj = codespace_projector(dim, n, s.gens())?;
        let tab = s.canonical_form()?;
        for e in &errors {
            let ed = crate::dense::dense_matrix(e)?;
            let edag = crate::dense::dense_matrix(&e.inverse())?;
            let rho = ed.matmul(&proj).matmul(&edag);
            for m in &meas {
                rep.cases += 1;
                // noiseless distribution from the stabilizer side
                let clean: Vec<f64> = match (s.commutes_with_all(m), tab.phase_of(m)) {
                    (true, Some(a)) => (0..d).map(|o| if o == a as usize { 1.0 } else { 0.0 }).collect(),
                    _ => vec![1.0 / d as f64; d],
                };
                let mut shifted = vec![0.0; d];
                for (o, &p) in clean.iter().enumerate() {
                    let o2: Residue = noisy_outcome(m, o as Residue, e)?;
                    shifted[o2 as usize] += p;
                }
                let dense = dense_distribution(&rho, m)?;
                if shifted.iter().zip(&dense).any(|(a, b)| (a - b).abs() > TOL) {
                    rep.fail(format!("S={:?} E={e} M={m}: frame {shifted:?} vs dense {dense:?}", lits(s)));
                }
            }
        }
    }
    Ok(rep)
}

fn lits(s: &GeneratorSet) -> Vec<String> {
    s.gens().iter().map(|g| g.to_string()).collect()
}

/// Both suites for every `n ≤ max_n` and listed dimension.
pub fn run_all(max_n: usize, dims: &[Dim]) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for &dim in dims {
        for n in 1..=max_n {
            let d = dim.get() as usize;
            out.push(measurement_suite(dim, n, 10 * d * d)?);
            out.push(frame_suite(dim, n)?);
        }
    }
    Ok(out)
}
