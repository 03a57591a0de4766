//! Stabilizer groups as ordered generator lists with exact phases, their
//! canonical tableaux, and the three measurement-update rules.

use crate::dense;
use crate::error::{Error, Result};
use crate::field::{Dim, Residue};
use crate::pauli::PauliOperator;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    dim: Dim,
    n: usize,
    gens: Vec<PauliOperator>,
}

/// Reduced echelon form of a group; rows are genuine group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalTableau {
    pub dim: Dim,
    pub n: usize,
    pub rows: Vec<PauliOperator>,
    pub pivots: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeasurementOutcome {
    pub value: Residue,
    pub deterministic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeMode {
    Forced(Residue),
    AllZero,
    Sampled(u64),
}

/// Which branch of the update theorem a measurement took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateRule {
    Member,
    Append,
    Replace,
}

#[inline]
fn entry(p: &PauliOperator, col: usize) -> Residue {
    let n = p.n();
    if col < n {
        p.x()[col]
    } else {
        p.z()[col - n]
    }
}

impl CanonicalTableau {
    /// Row-reduces by group multiplication. Errors if a nontrivial scalar shows up.
    pub fn from_rows(dim: Dim, n: usize, mut rows: Vec<PauliOperator>) -> Result<Self> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..2 * n {
            if r == rows.len() {
                break;
            }
            let Some(i) = (r..rows.len()).find(|&i| entry(&rows[i], col) != 0) else {
                continue;
            };
            rows.swap(r, i);
            let v = entry(&rows[r], col);
            if v != 1 {
                rows[r] = rows[r].power(dim.inv(v).expect("nonzero") as i64);
            }
            let pivot_inv = rows[r].inverse();
            for j in 0..rows.len() {
                if j == r {
                    continue;
                }
                let w = entry(&rows[j], col);
                if w != 0 {
                    let f = pivot_inv.power(w as i64);
                    rows[j].mul_assign_unchecked(&f);
                }
            }
            pivots.push(col);
            r += 1;
        }
        for extra in &rows[r..] {
            if extra.phase() != 0 {
                return Err(Error::InvalidGenerators(format!(
                    "the group contains the scalar w^{}",
                    extra.phase()
                )));
            }
        }
        rows.truncate(r);
        Ok(CanonicalTableau { dim, n, rows, pivots })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `o` with `ω^{-o} P` in the group, i.e. the eigenvalue exponent of `P`.
    pub fn phase_of(&self, p: &PauliOperator) -> Option<Residue> {
        let mut q = p.clone();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let v = entry(&q, col);
            if v != 0 {
                q.mul_assign_unchecked(&row.inverse().power(v as i64));
            }
        }
        q.is_scalar().then(|| q.phase())
    }

    /// Symplectic part of the membership test only.
    pub fn spans(&self, p: &PauliOperator) -> bool {
        self.phase_of(p).is_some()
    }
}

impl fmt::Display for CanonicalTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl GeneratorSet {
    /// The trivial group on `n` qudits.
    pub fn trivial(dim: Dim, n: usize) -> Self {
        GeneratorSet { dim, n, gens: Vec::new() }
    }

    /// Validates sizes, observability, pairwise commutation and absence of nontrivial scalars.
    pub fn new(dim: Dim, n: usize, gens: Vec<PauliOperator>) -> Result<Self> {
        for g in &gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(dim.get(), g.dim().get()));
            }
            if g.n() != n {
                return Err(Error::LengthMismatch(n, g.n()));
            }
            if !g.is_observable() {
                return Err(Error::NotObservable(g.to_string()));
            }
        }
        for i in 0..gens.len() {
            let sup = gens[i].support();
            for j in i + 1..gens.len() {
                if gens[i].commutation_on(&sup, &gens[j]) != 0 {
                    return Err(Error::InvalidGenerators(format!("generators {i} and {j} do not commute")));
                }
            }
        }
        let s = GeneratorSet { dim, n, gens };
        s.canonical_form()?;
        Ok(s)
    }

    pub(crate) fn from_parts_unchecked(dim: Dim, n: usize, gens: Vec<PauliOperator>) -> Self {
        GeneratorSet { dim, n, gens }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[PauliOperator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn canonical_form(&self) -> Result<CanonicalTableau> {
        CanonicalTableau::from_rows(self.dim, self.n, self.gens.clone())
    }

    pub fn rank(&self) -> usize {
        self.canonical_form().map(|t| t.rank()).unwrap_or(0)
    }

    pub fn groups_equal(&self, other: &GeneratorSet) -> bool {
        match (self.canonical_form(), other.canonical_form()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    fn check_operand(&self, p: &PauliOperator) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim.get(), p.dim().get()));
        }
        if p.n() != self.n {
            return Err(Error::LengthMismatch(self.n, p.n()));
        }
        Ok(())
    }

    /// The unique `o` with `ω^{-o} P ∈ S`, which is the eigenvalue exponent
    /// `P` takes on every state stabilized by `S`.
    pub fn contains_up_to_phase(&self, p: &PauliOperator) -> Option<Residue> {
        if self.check_operand(p).is_err() {
            return None;
        }
        self.canonical_form().ok()?.phase_of(p)
    }

    pub fn commutes_with_all(&self, p: &PauliOperator) -> bool {
        let sup = p.support();
        self.gens.iter().all(|g| p.commutation_on(&sup, g) == 0)
    }

    pub fn measure(&self, p: &PauliOperator, mode: OutcomeMode) -> Result<(GeneratorSet, MeasurementOutcome)> {
        let mut s = self.clone();
        let o = s.measure_mut(p, mode)?;
        Ok((s, o))
    }

    pub fn measure_mut(&mut self, p: &PauliOperator, mode: OutcomeMode) -> Result<MeasurementOutcome> {
        match mode {
            OutcomeMode::Forced(o) => self.measure_with(p, Some(o % self.dim.get()), |_| 0).map(|r| r.0),
            OutcomeMode::AllZero => self.measure_with(p, None, |_| 0).map(|r| r.0),
            OutcomeMode::Sampled(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                self.measure_with(p, None, |d| rng.gen_range(0..d)).map(|r| r.0)
            }
        }
    }

    /// Core update. `forced` pins the outcome; otherwise undetermined outcomes
    /// come from `draw(D)`.
    pub fn measure_with(
        &mut self,
        p: &PauliOperator,
        forced: Option<Residue>,
        mut draw: impl FnMut(u32) -> Residue,
    ) -> Result<(MeasurementOutcome, UpdateRule)> {
        self.check_operand(p)?;
        if !p.is_observable() {
            return Err(Error::NotObservable(p.to_string()));
        }
        let dim = self.dim;
        let sup = p.support();
        let comm: Vec<Residue> = self.gens.iter().map(|g| p.commutation_on(&sup, g)).collect();
        let star = comm.iter().position(|&c| c != 0);
        let Some(star) = star else {
            if let Some(a) = self.canonical_form()?.phase_of(p) {
                if let Some(f) = forced {
                    if f != a {
                        return Err(Error::OutcomeContradiction { forced: f, deterministic: a });
                    }
                }
                return Ok((MeasurementOutcome { value: a, deterministic: true }, UpdateRule::Member));
            }
            let o = forced.unwrap_or_else(|| draw(dim.get()) % dim.get());
            self.gens.push(p.clone().with_phase(dim.sub(p.phase(), o)));
            return Ok((MeasurementOutcome { value: o, deterministic: false }, UpdateRule::Append));
        };
        let o = forced.unwrap_or_else(|| draw(dim.get()) % dim.get());
        let inv = dim.inv(comm[star]).expect("nonzero");
        let gstar = self.gens[star].clone();
        for (i, &c) in comm.iter().enumerate() {
            if i == star || c == 0 {
                continue;
            }
            let t = dim.neg(dim.mul(c, inv));
            self.gens[i].mul_power_assign(&gstar, t);
        }
        self.gens[star] = p.clone().with_phase(dim.sub(p.phase(), o));
        Ok((MeasurementOutcome { value: o, deterministic: false }, UpdateRule::Replace))
    }

    /// Dense-oracle codespace dimension, `tr ∏_g (1/D) Σ_j g^j`.
    pub fn codespace_dimension_oracle(&self) -> Result<usize> {
        let proj = dense::codespace_projector(self.dim, self.n, &self.gens)?;
        Ok(proj.trace().re.round() as usize)
    }

    /// Parses a fixture: header `D=<d> n=<n>`, `#` comments, one literal per line.
    pub fn parse_fixture(text: &str) -> Result<GeneratorSet> {
        let mut header: Option<(Dim, usize)> = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lineno + 1, msg };
            match header {
                None => {
                    let mut d = None;
                    let mut n = None;
                    for tok in line.split_whitespace() {
                        if let Some(v) = tok.strip_prefix("D=") {
                            d = v.parse::<u32>().ok();
                        } else if let Some(v) = tok.strip_prefix("n=") {
                            n = v.parse::<usize>().ok();
                        }
                    }
                    let (Some(d), Some(n)) = (d, n) else {
                        return Err(perr(format!("expected header `D=<d> n=<n>`, got {line:?}")));
                    };
                    header = Some((Dim::new(d)?, n));
                }
                Some((dim, n)) => {
                    let p = PauliOperator::parse_literal(line, dim, n).map_err(|e| match e {
                        Error::Parse { msg, .. } => perr(msg),
                        other => other,
                    })?;
                    gens.push(p);
                }
            }
        }
        let (dim, n) = header.ok_or_else(|| Error::Parse { line: 0, msg: "missing header".into() })?;
        GeneratorSet::new(dim, n, gens)
    }

    pub fn to_fixture(&self) -> String {
        let mut s = format!("D={} n={}\n", self.dim, self.n);
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{codespace_projector, dense_matrix, eigenprojector};

    fn d(v: u32) -> Dim {
        Dim::new(v).unwrap()
    }

    fn op(dim: Dim, l: i64, x: &[i64], z: &[i64]) -> PauliOperator {
        PauliOperator::from_exponents(dim, l, x, z).unwrap()
    }

    fn xx_zz(dim: Dim) -> GeneratorSet {
        GeneratorSet::new(dim, 2, vec![op(dim, 0, &[1, 1], &[0, 0]), op(dim, 0, &[0, 0], &[1, -1])]).unwrap()
    }

    #[test]
    fn membership_phase_readback() {
        let dim = d(3);
        let z = op(dim, 0, &[0], &[1]);
        let s = GeneratorSet::new(dim, 1, vec![z.clone()]).unwrap();
        assert_eq!(s.contains_up_to_phase(&z), Some(0));
        let s = GeneratorSet::new(dim, 1, vec![op(dim, -2, &[0], &[1])]).unwrap();
        assert_eq!(s.contains_up_to_phase(&z), Some(2));

        let s = xx_zz(dim);
        let prod = s.gens()[0].multiply(&s.gens()[1]).unwrap();
        for c in 0..3 {
            let p = op(dim, c, &[1, 1], &[1, -1]);
            let expect = dim.sub(c as u32, prod.phase());
            assert_eq!(s.contains_up_to_phase(&p), Some(expect));
        }
        assert_eq!(s.contains_up_to_phase(&op(dim, 0, &[1, 0], &[0, 0])), None);
    }

    #[test]
    fn measurement_rules() {
        let dim = d(3);
        let z = op(dim, 0, &[0], &[1]);
        let s = GeneratorSet::new(dim, 1, vec![z.clone()]).unwrap();
        let (s2, o) = s.measure(&z, OutcomeMode::AllZero).unwrap();
        assert_eq!(o, MeasurementOutcome { value: 0, deterministic: true });
        assert_eq!(s2, s);
        assert!(s.measure(&z, OutcomeMode::Forced(1)).is_err());

        let t = GeneratorSet::trivial(dim, 1);
        let (t2, o) = t.measure(&z, OutcomeMode::Forced(2)).unwrap();
        assert!(!o.deterministic);
        assert_eq!(t2.gens(), &[op(dim, -2, &[0], &[1])]);

        let s = xx_zz(dim);
        let z0 = op(dim, 0, &[0, 0], &[1, 0]);
        let (s3, _) = s.measure(&z0, OutcomeMode::Forced(0)).unwrap();
        let expect = GeneratorSet::new(dim, 2, vec![z0.clone(), op(dim, 0, &[0, 0], &[1, -1])]).unwrap();
        assert!(s3.groups_equal(&expect));
        assert_eq!(s3.rank(), 2);
    }

    #[test]
    fn rank_and_equality() {
        let dim = d(3);
        let s = GeneratorSet::new(dim, 1, vec![op(dim, 0, &[0], &[1]), op(dim, 0, &[0], &[2])]).unwrap();
        assert_eq!(s.rank(), 1);
        let a = xx_zz(dim);
        let g0 = a.gens()[0].clone();
        let g1 = a.gens()[1].clone();
        let b = GeneratorSet::new(dim, 2, vec![g1.power(2), g0.multiply(&g1).unwrap(), g0.power(2)]).unwrap();
        assert!(a.groups_equal(&b));
        let z = GeneratorSet::new(dim, 1, vec![op(dim, 0, &[0], &[1])]).unwrap();
        let wz = GeneratorSet::new(dim, 1, vec![op(dim, 1, &[0], &[1])]).unwrap();
        assert!(!z.groups_equal(&wz));
        let pz = codespace_projector(dim, 1, z.gens()).unwrap();
        let pwz = codespace_projector(dim, 1, wz.gens()).unwrap();
        assert!(!pz.approx_eq(&pwz));
    }

    #[test]
    fn invalid_sets_rejected() {
        let dim = d(3);
        let x = op(dim, 0, &[1], &[0]);
        let z = op(dim, 0, &[0], &[1]);
        assert!(GeneratorSet::new(dim, 1, vec![x, z.clone()]).is_err());
        assert!(GeneratorSet::new(dim, 1, vec![z.clone(), z.with_phase(1)]).is_err());
        let d2 = d(2);
        assert!(GeneratorSet::new(d2, 1, vec![op(d2, 0, &[1], &[1])]).is_err());
    }

    #[test]
    fn codespace_dimensions() {
        let dim = d(3);
        assert_eq!(GeneratorSet::trivial(dim, 1).codespace_dimension_oracle().unwrap(), 3);
        let z = GeneratorSet::new(dim, 1, vec![op(dim, 0, &[0], &[1])]).unwrap();
        assert_eq!(z.codespace_dimension_oracle().unwrap(), 1);
        let s = xx_zz(dim);
        assert_eq!(s.codespace_dimension_oracle().unwrap(), 1);
        assert_eq!(s.rank(), 2);
        let half = GeneratorSet::new(dim, 2, vec![s.gens()[0].clone()]).unwrap();
        assert_eq!(half.codespace_dimension_oracle().unwrap(), 3);
    }

    #[test]
    fn post_measurement_projector_matches_dense() {
        let dim = d(3);
        let s = xx_zz(dim);
        let z0 = op(dim, 0, &[0, 0], &[1, 0]);
        for o in 0..3 {
            let (s2, _) = s.measure(&z0, OutcomeMode::Forced(o)).unwrap();
            let before = codespace_projector(dim, 2, s.gens()).unwrap();
            let pi = eigenprojector(&z0, o).unwrap();
            let after = codespace_projector(dim, 2, s2.gens()).unwrap();
            let lhs = pi.matmul(&before).matmul(&pi);
            assert!(lhs.approx_eq(&after.scale(num_complex::Complex64::new(1.0 / 3.0, 0.0))));
        }
        let _ = dense_matrix(&z0).unwrap();
    }

    #[test]
    fn fixture_round_trip() {
        let s = xx_zz(d(3));
        let text = format!("# pair\n{}", s.to_fixture());
        assert_eq!(GeneratorSet::parse_fixture(&text).unwrap(), s);
        assert!(GeneratorSet::parse_fixture("D=4 n=1\n").is_err());
    }

    mod props {
        use super::*;
        use crate::dense::{codespace_projector, eigenprojector};
        use num_complex::Complex64;
        use proptest::prelude::*;

        fn pauli(d: u32, n: usize) -> impl Strategy<Value = PauliOperator> {
            (prop::collection::vec(0..d as i64, n), prop::collection::vec(0..d as i64, n)).prop_map(move |(x, z)| {
                PauliOperator::from_exponents(Dim::new(d).unwrap(), 0, &x, &z).unwrap()
            })
        }

        /// A random group grown by sampled measurements from the trivial one.
        fn grown(d: u32, n: usize) -> impl Strategy<Value = (GeneratorSet, PauliOperator)> {
            (prop::collection::vec(pauli(d, n), 0..2 * n), pauli(d, n), any::<u64>()).prop_map(move |(ps, m, seed)| {
                let mut s = GeneratorSet::trivial(Dim::new(d).unwrap(), n);
                for (i, p) in ps.iter().enumerate() {
                    if !p.is_identity() && p.is_observable() {
                        s.measure_mut(p, OutcomeMode::Sampled(seed ^ i as u64)).unwrap();
                    }
                }
                (s, m)
            })
        }

        fn case() -> impl Strategy<Value = (GeneratorSet, PauliOperator)> {
            (prop::sample::select(vec![2u32, 3, 5]), 1usize..5).prop_flat_map(|(d, n)| grown(d, n))
        }

        fn small_case() -> impl Strategy<Value = (GeneratorSet, PauliOperator)> {
            (prop::sample::select(vec![2u32, 3]), 1usize..4).prop_flat_map(|(d, n)| grown(d, n))
        }

        proptest! {
            #[test]
            fn measurement_invariants((s, m) in case(), seed in any::<u64>()) {
                prop_assume!(!m.is_identity() && m.is_observable());
                let before = s.rank();
                let mut t = s.clone();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (o, rule) = t.measure_with(&m, None, |k| rand::Rng::gen_range(&mut rng, 0..k)).unwrap();
                for (i, a) in t.gens().iter().enumerate() {
                    for b in &t.gens()[i + 1..] {
                        prop_assert_eq!(a.commutation(b).unwrap(), 0);
                    }
                }
                prop_assert_eq!(t.contains_up_to_phase(&m), Some(o.value));
                let expected_rank = if rule == UpdateRule::Append { before + 1 } else { before };
                prop_assert_eq!(t.rank(), expected_rank);
                prop_assert_eq!(o.deterministic, rule == UpdateRule::Member);
                let (_, again) = t.measure(&m, OutcomeMode::AllZero).unwrap();
                prop_assert!(again.deterministic);
                prop_assert_eq!(again.value, o.value);
            }

            #[test]
            fn canonical_form_ignores_presentation((s, _) in case(), rot in 0usize..8, e in 1i64..5) {
                prop_assume!(s.len() >= 2);
                let mut gens = s.gens().to_vec();
                let k = rot % gens.len();
                gens.rotate_left(k);
                let extra = gens[1].power(e);
                gens[0] = gens[0].multiply(&extra).unwrap();
                let t = GeneratorSet::new(s.dim(), s.n(), gens).unwrap();
                prop_assert_eq!(t.canonical_form().unwrap(), s.canonical_form().unwrap());
            }

            #[test]
            fn dense_agreement((s, m) in small_case(), o in 0u32..3) {
                prop_assume!(!m.is_identity() && m.is_observable());
                let dim = s.dim();
                let o = o % dim.get();
                let d = dim.get() as usize;
                prop_assert_eq!(s.codespace_dimension_oracle().unwrap(), d.pow((s.n() - s.rank()) as u32));
                let proj = codespace_projector(dim, s.n(), s.gens()).unwrap();
                let pm = eigenprojector(&m, o).unwrap();
                let cond = pm.matmul(&proj).matmul(&pm);
                match s.measure(&m, OutcomeMode::Forced(o)) {
                    Ok((t, _)) => {
                        prop_assert_eq!(t.codespace_dimension_oracle().unwrap(), d.pow((t.n() - t.rank()) as u32));
                        let post = codespace_projector(dim, t.n(), t.gens()).unwrap();
                        let scale = post.trace().re / cond.trace().re;
                        prop_assert!(cond.scale(Complex64::new(scale, 0.0)).approx_eq(&post));
                    }
                    Err(Error::OutcomeContradiction { .. }) => prop_assert!(cond.trace().re < 1e-9),
                    Err(e) => prop_assert!(false, "{e}"),
                }
            }
        }
    }
}
