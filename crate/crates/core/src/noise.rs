//! Pauli error injection, frame propagation through check outcomes, plaquette
//! inference and the space-time syndrome lattice.

use crate::error::{Error, Result};
use crate::field::{Dim, Residue};
use crate::floquet::checks::{require_conditions, CheckAssignment};
use crate::floquet::schedule::{expected_plaquette, run_schedule, RoundRecord, Trace, INIT_ROUNDS};
use crate::lattice::{Color, ColoredLattice};
use crate::pauli::PauliOperator;
use crate::stabilizer::{GeneratorSet, OutcomeMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Independent X-type and Z-type channels on every qudit, applied once per round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    p: f64,
    dim: Dim,
}

impl NoiseModel {
    pub fn new(p: f64, dim: Dim) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Unsupported(format!("error probability {p} is outside [0, 1]")));
        }
        Ok(NoiseModel { p, dim })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }
}

// keeps noise draws apart from the outcome streams of sampled schedules
const NOISE_STREAM: u64 = 1 << 32;

/// Error applied right before `round`. Reproducible in `(seed, round)`.
pub fn sample_round_errors(model: &NoiseModel, seed: u64, round: usize, n: usize) -> PauliOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(NOISE_STREAM | round as u64);
    let d = model.dim.get() as i64;
    let draw = |rng: &mut ChaCha8Rng| if rng.gen_bool(model.p) { rng.gen_range(1..d) } else { 0 };
    let mut x = vec![0i64; n];
    let mut z = vec![0i64; n];
    for i in 0..n {
        x[i] = draw(&mut rng);
        z[i] = draw(&mut rng);
    }
    PauliOperator::from_exponents(model.dim, 0, &x, &z).expect("equal lengths")
}

/// Outcome of `m` on the state `F|ψ⟩` when `m|ψ⟩ = ω^o |ψ⟩`.
pub fn noisy_outcome(m: &PauliOperator, o: Residue, frame: &PauliOperator) -> Result<Residue> {
    Ok(m.dim().add(o, m.commutation(frame)?))
}

/// Product of every error injected so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliFrame {
    op: PauliOperator,
}

impl PauliFrame {
    pub fn new(dim: Dim, n: usize) -> Self {
        PauliFrame { op: PauliOperator::identity(dim, n) }
    }

    pub fn apply(&mut self, e: &PauliOperator) -> Result<()> {
        self.op = self.op.multiply(e)?;
        Ok(())
    }

    pub fn operator(&self) -> &PauliOperator {
        &self.op
    }
}

#[derive(Debug, Clone)]
pub struct NoisyTrace {
    /// All-zero noiseless reference run.
    pub baseline: Trace,
    /// Same schedule on the corrupted state, outcomes shifted by the frame.
    pub noisy: Trace,
    /// `errors[r]` was applied right before round `r`.
    pub errors: Vec<PauliOperator>,
}

impl NoisyTrace {
    pub fn frame(&self, round: usize) -> PauliOperator {
        let mut f = PauliOperator::identity(self.noisy.dim, self.noisy.n);
        for e in self.errors.iter().take(round + 1) {
            f.mul_assign_unchecked(e);
        }
        f
    }
}

/// Runs the schedule with sampled noise before every round.
pub fn run_noisy_schedule(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    rounds: usize,
    model: &NoiseModel,
    seed: u64,
) -> Result<NoisyTrace> {
    if model.dim != checks.dim() {
        return Err(Error::DimensionMismatch(model.dim.get(), checks.dim().get()));
    }
    let n = lat.n();
    run_with_errors(lat, checks, rounds, |r| sample_round_errors(model, seed, r, n))
}

/// Runs the schedule, applying `inject(r)` right before round `r`.
///
/// The tracked group is conjugated by each error and every outcome is forced to
/// its frame-shifted value, so deterministic outcomes double as a consistency check.
pub fn run_with_errors(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    rounds: usize,
    mut inject: impl FnMut(usize) -> PauliOperator,
) -> Result<NoisyTrace> {
    require_conditions(lat, checks)?;
    let baseline = run_schedule(lat, checks, rounds, OutcomeMode::AllZero)?;
    let dim = checks.dim();
    let n = lat.n();
    let mut frame = PauliFrame::new(dim, n);
    let mut isg = GeneratorSet::trivial(dim, n);
    let mut errors = Vec::with_capacity(rounds);
    let mut out = Vec::with_capacity(rounds);
    for base in &baseline.rounds {
        let e = inject(base.round);
        if e.n() != n || e.dim() != dim {
            return Err(Error::DimensionMismatch(e.dim().get(), dim.get()));
        }
        frame.apply(&e)?;
        let gens = isg
            .gens()
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.shift_phase(e.commutation_unchecked(&g));
                g
            })
            .collect();
        isg = GeneratorSet::from_parts_unchecked(dim, n, gens);
        let mut outcomes = Vec::with_capacity(base.outcomes.len());
        for &(edge, o) in &base.outcomes {
            let m = checks.check(lat, edge);
            let forced = noisy_outcome(&m, o, frame.operator())?;
            let (res, _) = isg.measure_with(&m, Some(forced), |_| 0)?;
            outcomes.push((edge, res.value));
        }
        let tableau = isg.canonical_form()?;
        out.push(RoundRecord { round: base.round, color: base.color, outcomes, isg: isg.clone(), tableau });
        errors.push(e);
    }
    let noisy = Trace { dim, n, rounds: out };
    Ok(NoisyTrace { baseline, noisy, errors })
}

/// Plaquette color whose eigenvalues are read after round `r`: red, blue, green for `r ≡ 0, 1, 2`.
pub fn inferred_color(r: usize) -> Color {
    Color::of_round(r + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceRound {
    pub round: usize,
    pub color: Color,
    /// `(plaquette, value)` with the noiseless value subtracted.
    pub values: Vec<(usize, Residue)>,
}

/// Reads each inferable plaquette's eigenvalue from the tracked group for every
/// round from the end of initialization on.
pub fn infer_plaquette_values(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    trace: &NoisyTrace,
) -> Result<Vec<InferenceRound>> {
    let rounds = trace.noisy.rounds.len();
    if rounds <= INIT_ROUNDS {
        return Err(Error::Initialization(rounds));
    }
    let dim = checks.dim();
    let mut out = Vec::new();
    for r in INIT_ROUNDS..rounds {
        let color = inferred_color(r);
        let noisy = &trace.noisy.rounds[r].tableau;
        let base = &trace.baseline.rounds[r].tableau;
        let mut values = Vec::new();
        for f in lat.plaquettes_of_color(color) {
            let a = expected_plaquette(lat, checks, f);
            let (Some(x), Some(y)) = (noisy.phase_of(&a), base.phase_of(&a)) else {
                return Err(Error::UnformedPlaquette(f));
            };
            values.push((f, dim.sub(x, y)));
        }
        out.push(InferenceRound { round: r, color, values });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeNode {
    pub plaquette: usize,
    pub round: usize,
    /// Change since the plaquette's previous inference; nonzero is a detection.
    pub value: Residue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeLattice {
    #[serde(rename = "D")]
    pub dim: u32,
    pub p: f64,
    pub seed: u64,
    pub rounds: usize,
    pub nodes: Vec<SyndromeNode>,
    pub edges: Vec<[usize; 2]>,
}

impl SpaceTimeLattice {
    pub fn detections(&self) -> impl Iterator<Item = &SyndromeNode> {
        self.nodes.iter().filter(|n| n.value != 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn export(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn import(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Detection values (differences of consecutive inferences) with temporal
/// edges to face-adjacent plaquettes one round later.
pub fn build_space_time_lattice(
    lat: &ColoredLattice,
    dim: Dim,
    inferred: &[InferenceRound],
    p: f64,
    seed: u64,
    rounds: usize,
) -> SpaceTimeLattice {
    let mut last = vec![0 as Residue; lat.n_p()];
    let mut nodes = Vec::new();
    let mut index = std::collections::HashMap::new();
    for ir in inferred {
        let mut vals = ir.values.clone();
        vals.sort_unstable();
        for (f, v) in vals {
            index.insert((ir.round, f), nodes.len());
            nodes.push(SyndromeNode { plaquette: f, round: ir.round, value: dim.sub(v, last[f]) });
            last[f] = v;
        }
    }
    let mut edges = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        let mut nb = lat.plaquette_neighbors(node.plaquette);
        nb.sort_unstable();
        nb.dedup();
        for g in nb {
            if let Some(&j) = index.get(&(node.round + 1, g)) {
                edges.push([i, j]);
            }
        }
    }
    SpaceTimeLattice { dim: dim.get(), p, seed, rounds, nodes, edges }
}

/// Noisy run, inference and lattice in one call.
pub fn syndrome_lattice(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    rounds: usize,
    model: &NoiseModel,
    seed: u64,
) -> Result<SpaceTimeLattice> {
    let tr = run_noisy_schedule(lat, checks, rounds, model, seed)?;
    let inf = infer_plaquette_values(lat, checks, &tr)?;
    Ok(build_space_time_lattice(lat, checks.dim(), &inf, model.p, seed, rounds))
}
