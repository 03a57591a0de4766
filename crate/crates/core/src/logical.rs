//! Loop logical operators, pairing into conjugate pairs, and distance bounds.

use crate::error::{Error, Result};
use crate::field::Residue;
use crate::floquet::checks::CheckAssignment;
use crate::floquet::schedule::{Trace, INIT_ROUNDS};
use crate::lattice::{Color, ColoredLattice, Loop};
use crate::pauli::PauliOperator;
use crate::stabilizer::{CanonicalTableau, GeneratorSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoopKind {
    /// Supported on the current round's edges, carrying next-round Paulis.
    Type1,
    /// Supported on the next round's edges, carrying current-round Paulis.
    Type2,
}

impl LoopKind {
    pub fn name(self) -> &'static str {
        match self {
            LoopKind::Type1 => "type1",
            LoopKind::Type2 => "type2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopOperator {
    pub loop_name: String,
    pub kind: LoopKind,
    pub round: usize,
    pub color: Color,
    /// `(edge, exponent)` in walk order starting at the seed edge.
    pub exponents: Vec<(usize, Residue)>,
    pub operator: PauliOperator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalPair {
    pub index: usize,
    pub xbar: PauliOperator,
    pub zbar: PauliOperator,
}

/// Builds the type-1 or type-2 operator on `lp` for the ISG of `round`.
pub fn build_loop_operator(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    lp: &Loop,
    round: usize,
    kind: LoopKind,
) -> Result<LoopOperator> {
    if round + 1 < INIT_ROUNDS {
        return Err(Error::Initialization(round));
    }
    if !lat.is_nontrivial_loop(lp) {
        return Err(Error::TrivialLoop(lp.name.clone()));
    }
    let dim = checks.dim();
    let l = Color::of_round(round);
    // (support color, carried color); the remaining color enters the recursion
    let (support, carried) = match kind {
        LoopKind::Type1 => (l, l.next()),
        LoopKind::Type2 => (l.next(), l),
    };
    let third = Color::from_index(3 - support.index() - carried.index());
    let walk = lat.loop_walk(lp)?;
    let m = lp.edges.len();
    let contributing: Vec<usize> = (0..m).filter(|&i| lat.edges[lp.edges[i]].color == support).collect();
    if contributing.is_empty() {
        return Err(Error::Unsupported(format!("loop {} has no {support} edges", lp.name)));
    }
    let seed = *contributing.iter().min_by_key(|&&i| lp.edges[i]).expect("nonempty");
    let start = contributing.iter().position(|&i| i == seed).expect("present");
    let order: Vec<usize> = (0..contributing.len()).map(|k| contributing[(start + k) % contributing.len()]).collect();

    let ratio = |i: usize, j: usize| -> Result<Residue> {
        let v = walk[(i + 1) % m];
        let vp = walk[j];
        let num = checks.vertex_pauli(lat, v, third).commutation(&checks.vertex_pauli(lat, v, carried), dim);
        let den = checks.vertex_pauli(lat, vp, third).commutation(&checks.vertex_pauli(lat, vp, carried), dim);
        let inv = dim.inv(den).ok_or_else(|| {
            Error::ConditionsViolated(format!("vertex {vp}: {third} and {carried} factors commute"))
        })?;
        Ok(dim.neg(dim.mul(num, inv)))
    };

    let mut exps = vec![1 as Residue];
    for k in 1..order.len() {
        let prev = exps[k - 1];
        exps.push(dim.mul(prev, ratio(order[k - 1], order[k])?));
    }
    let closing = dim.mul(*exps.last().expect("nonempty"), ratio(*order.last().expect("nonempty"), order[0])?);
    if closing != 1 {
        return Err(Error::WrapAround { loop_name: lp.name.clone(), ratio: closing });
    }

    let mut op = PauliOperator::identity(dim, lat.n());
    let mut exponents = Vec::with_capacity(order.len());
    for (&i, &beta) in order.iter().zip(&exps) {
        let e = lp.edges[i];
        let ed = &lat.edges[e];
        for w in [ed.v, ed.u] {
            let p = checks.vertex_pauli(lat, w, carried);
            let single = PauliOperator::embed(dim, p, w, lat.n())?.power(beta as i64);
            op.mul_assign_unchecked(&single);
        }
        exponents.push((e, beta));
    }
    Ok(LoopOperator { loop_name: lp.name.clone(), kind, round, color: l, exponents, operator: op })
}

/// `L` commutes with every generator and is not in the group up to phase.
pub fn verify_logical(isg: &GeneratorSet, l: &PauliOperator) -> bool {
    if l.n() != isg.n() || l.dim() != isg.dim() {
        return false;
    }
    isg.commutes_with_all(l) && isg.contains_up_to_phase(l).is_none()
}

/// Raises `q1` to `c(q1,q2)^{-1}` so the pair satisfies `c(X̄, Z̄) = 1`.
pub fn pair_and_normalize(q1: &PauliOperator, q2: &PauliOperator, index: usize) -> Result<LogicalPair> {
    let dim = q1.dim();
    let c = q1.commutation(q2)?;
    let a = dim.inv(c).ok_or(Error::CommutingPair)?;
    Ok(LogicalPair { index, xbar: q1.power(a as i64), zbar: q2.clone() })
}

/// Greedy symplectic Gram-Schmidt over candidate logicals.
pub fn symplectic_pairs(candidates: &[PauliOperator]) -> Result<Vec<LogicalPair>> {
    let mut pool: Vec<PauliOperator> = candidates.to_vec();
    let mut pairs = Vec::new();
    while let Some(q1) = (!pool.is_empty()).then(|| pool.remove(0)) {
        let Some(j) = pool.iter().position(|q| q1.commutation(q).map(|c| c != 0).unwrap_or(false)) else {
            continue;
        };
        let q2 = pool.remove(j);
        let pair = pair_and_normalize(&q1, &q2, pairs.len())?;
        for r in pool.iter_mut() {
            let cz = r.commutation(&pair.zbar)?;
            let cx = r.commutation(&pair.xbar)?;
            let mut next = r.clone();
            next.mul_power_assign(&pair.xbar.inverse(), cz);
            next.mul_power_assign(&pair.zbar, cx);
            *r = next;
        }
        pool.retain(|r| !r.is_scalar());
        pairs.push(pair);
    }
    Ok(pairs)
}

/// All constructible loop operators of both kinds at `round`, in loop order.
pub fn loop_operators(lat: &ColoredLattice, checks: &CheckAssignment, round: usize) -> Vec<Result<LoopOperator>> {
    let mut out = Vec::new();
    for lp in &lat.loops {
        for kind in [LoopKind::Type1, LoopKind::Type2] {
            out.push(build_loop_operator(lat, checks, lp, round, kind));
        }
    }
    out
}

/// Conjugate logical pairs at `round` built from the lattice's loops.
pub fn logical_pairs(lat: &ColoredLattice, checks: &CheckAssignment, round: usize) -> Result<Vec<LogicalPair>> {
    let ops = loop_operators(lat, checks, round)
        .into_iter()
        .map(|r| r.map(|l| l.operator))
        .collect::<Result<Vec<_>>>()?;
    symplectic_pairs(&ops)
}

fn weight_after(cur: &PauliOperator, g: &PauliOperator, e: Residue) -> usize {
    let d = cur.dim();
    let mut w = 0;
    for i in 0..cur.n() {
        let x = d.add(cur.x()[i], d.mul(g.x()[i], e));
        let z = d.add(cur.z()[i], d.mul(g.z()[i], e));
        if x != 0 || z != 0 {
            w += 1;
        }
    }
    w
}

fn overlaps(a: &PauliOperator, b: &[usize]) -> bool {
    b.iter().any(|&i| a.x()[i] != 0 || a.z()[i] != 0)
}

/// Minimum weight over the representatives after greedy descent by products
/// of up to `depth` generator powers (depth 1 or 2).
pub fn distance_upper_bound(trace: &Trace, round: usize, logicals: &[PauliOperator], depth: usize) -> Result<usize> {
    if round + 1 < INIT_ROUNDS {
        return Err(Error::Initialization(round));
    }
    let rec = trace.round(round)?;
    let gens = &rec.tableau.rows;
    let dim = trace.dim;
    let mut best = usize::MAX;
    for l in logicals {
        let mut cur = l.clone();
        let mut w = cur.weight();
        loop {
            let sup = cur.support();
            let mut improved: Option<PauliOperator> = None;
            for g in gens.iter().filter(|g| overlaps(g, &sup)) {
                for e in 1..dim.get() {
                    if weight_after(&cur, g, e) < w {
                        let mut c = cur.clone();
                        c.mul_power_assign(g, e);
                        w = c.weight();
                        improved = Some(c);
                    }
                }
            }
            if improved.is_none() && depth >= 2 {
                let near: Vec<&PauliOperator> = gens.iter().filter(|g| overlaps(g, &sup)).collect();
                'outer: for (a, g1) in near.iter().enumerate() {
                    for e1 in 1..dim.get() {
                        let mut c1 = cur.clone();
                        c1.mul_power_assign(g1, e1);
                        for g2 in &near[a + 1..] {
                            for e2 in 1..dim.get() {
                                if weight_after(&c1, g2, e2) < w {
                                    let mut c = c1.clone();
                                    c.mul_power_assign(g2, e2);
                                    w = c.weight();
                                    improved = Some(c);
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            match improved {
                Some(c) => cur = c,
                None => break,
            }
        }
        best = best.min(w);
    }
    Ok(best)
}

/// Default cap on `n` for exhaustive search.
pub const BRUTE_FORCE_MAX_N: usize = 20;

/// Exact distance at `round` for qubit codes by iterative deepening up to `w_max`.
pub fn brute_force_distance(trace: &Trace, round: usize, w_max: usize) -> Result<Option<usize>> {
    brute_force_distance_bounded(trace, round, w_max, BRUTE_FORCE_MAX_N)
}

pub fn brute_force_distance_bounded(trace: &Trace, round: usize, w_max: usize, max_n: usize) -> Result<Option<usize>> {
    let dim = trace.dim;
    let n = trace.n;
    if dim.get() != 2 || n > max_n {
        return Err(Error::Unsupported(format!(
            "exhaustive distance search needs D = 2 and n <= {max_n} (got D = {dim}, n = {n})"
        )));
    }
    let rec = trace.round(round)?;
    let tab: &CanonicalTableau = &rec.tableau;
    let gens: Vec<(u64, u64)> = tab
        .rows
        .iter()
        .map(|g| {
            let mut x = 0u64;
            let mut z = 0u64;
            for i in 0..n {
                x |= (g.x()[i] as u64) << i;
                z |= (g.z()[i] as u64) << i;
            }
            (x, z)
        })
        .collect();
    for w in 1..=w_max.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            for code in 0..3u64.pow(w as u32) {
                let (mut x, mut z) = (0u64, 0u64);
                let mut c = code;
                for &q in &support {
                    match c % 3 {
                        0 => x |= 1 << q,
                        1 => z |= 1 << q,
                        _ => {
                            x |= 1 << q;
                            z |= 1 << q;
                        }
                    }
                    c /= 3;
                }
                if gens.iter().all(|&(gx, gz)| ((x & gz).count_ones() + (z & gx).count_ones()) % 2 == 0) {
                    let xs: Vec<i64> = (0..n).map(|i| ((x >> i) & 1) as i64).collect();
                    let zs: Vec<i64> = (0..n).map(|i| ((z >> i) & 1) as i64).collect();
                    let p = PauliOperator::from_exponents(dim, 0, &xs, &zs)?;
                    if tab.phase_of(&p).is_none() {
                        return Ok(Some(w));
                    }
                }
            }
            // next combination
            let mut i = w;
            while i > 0 && support[i - 1] == n - w + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            support[i - 1] += 1;
            for j in i..w {
                support[j] = support[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Dim;
    use crate::floquet::checks::{circle_square_checks, qubit_honeycomb_checks};
    use crate::floquet::schedule::run_schedule;
    use crate::lattice::build_torus_honeycomb;
    use crate::stabilizer::OutcomeMode;

    #[test]
    fn pair_normalization() {
        let d5 = Dim::new(5).unwrap();
        let q1 = PauliOperator::from_exponents(d5, 0, &[0], &[3]).unwrap();
        let q2 = PauliOperator::from_exponents(d5, 0, &[1], &[0]).unwrap();
        assert_eq!(q1.commutation(&q2).unwrap(), 3);
        let p = pair_and_normalize(&q1, &q2, 0).unwrap();
        assert_eq!(p.xbar, q1.power(2));
        assert_eq!(p.xbar.commutation(&p.zbar).unwrap(), 1);
        let d3 = Dim::new(3).unwrap();
        let z = PauliOperator::from_exponents(d3, 0, &[0], &[1]).unwrap();
        assert_eq!(pair_and_normalize(&z, &z, 0).unwrap_err(), Error::CommutingPair);
    }

    #[test]
    fn torus_loop_operators_are_logical() {
        let lat = build_torus_honeycomb(6, 8).unwrap();
        let ca = circle_square_checks(&lat, Dim::new(3).unwrap()).unwrap();
        let tr = run_schedule(&lat, &ca, 8, OutcomeMode::AllZero).unwrap();
        let r = 6;
        let v1 = build_loop_operator(&lat, &ca, lat.loop_by_name("vertical").unwrap(), r, LoopKind::Type1).unwrap();
        assert_eq!(v1.operator.weight(), 8);
        let h2 = build_loop_operator(&lat, &ca, lat.loop_by_name("horizontal").unwrap(), r, LoopKind::Type2).unwrap();
        assert_eq!(h2.operator.weight(), 8);
        for op in loop_operators(&lat, &ca, r) {
            assert!(verify_logical(&tr.rounds[r].isg, &op.unwrap().operator));
        }
    }

    #[test]
    fn qubit_exponents_are_one() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = qubit_honeycomb_checks(&lat).unwrap();
        for op in loop_operators(&lat, &ca, 5) {
            assert!(op.unwrap().exponents.iter().all(|&(_, b)| b == 1));
        }
    }

    #[test]
    fn small_w_max_gives_none() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = qubit_honeycomb_checks(&lat).unwrap();
        let tr = run_schedule(&lat, &ca, 7, OutcomeMode::AllZero).unwrap();
        assert_eq!(brute_force_distance(&tr, 6, 1).unwrap(), None);
    }

    #[test]
    fn exact_distance_never_exceeds_bound() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = qubit_honeycomb_checks(&lat).unwrap();
        let tr = run_schedule(&lat, &ca, 9, OutcomeMode::AllZero).unwrap();
        for r in 4..9 {
            let reps: Vec<_> = loop_operators(&lat, &ca, r).into_iter().map(|o| o.unwrap().operator).collect();
            let up = distance_upper_bound(&tr, r, &reps, 2).unwrap();
            let exact = brute_force_distance(&tr, r, up).unwrap().expect("found within the bound");
            assert!(exact <= up);
        }
        assert!(brute_force_distance_bounded(&tr, 6, 2, 10).is_err());
    }

    #[test]
    fn pair_algebra_on_the_torus() {
        let lat = build_torus_honeycomb(6, 8).unwrap();
        let ca = circle_square_checks(&lat, Dim::new(5).unwrap()).unwrap();
        let tr = run_schedule(&lat, &ca, 8, OutcomeMode::AllZero).unwrap();
        let pairs = logical_pairs(&lat, &ca, 7).unwrap();
        assert_eq!(pairs.len(), 2);
        for p in &pairs {
            assert_eq!(p.xbar.commutation(&p.zbar).unwrap(), 1);
            assert!(verify_logical(&tr.rounds[7].isg, &p.xbar) && verify_logical(&tr.rounds[7].isg, &p.zbar));
            for q in &pairs {
                if p.index != q.index {
                    for (a, b) in [(&p.xbar, &q.zbar), (&p.xbar, &q.xbar), (&p.zbar, &q.zbar)] {
                        assert_eq!(a.commutation(b).unwrap(), 0);
                    }
                }
            }
        }
        let x = PauliOperator::embed(Dim::new(5).unwrap(), crate::pauli::SinglePauli::new(1, 0), 0, 96).unwrap();
        assert!(!verify_logical(&tr.rounds[7].isg, &x));
        let a = crate::floquet::expected_plaquette(&lat, &ca, 0);
        assert!(!verify_logical(&tr.rounds[7].isg, &a));
    }
}
