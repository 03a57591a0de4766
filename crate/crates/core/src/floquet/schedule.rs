//! The period-3 measurement schedule and the instantaneous stabilizer groups it produces.

use super::checks::{require_conditions, CheckAssignment};
use crate::error::{Error, Result};
use crate::field::{Dim, Residue};
use crate::lattice::{Color, ColoredLattice};
use crate::pauli::PauliOperator;
use crate::stabilizer::{CanonicalTableau, GeneratorSet, OutcomeMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::io::Write;

/// Initialization length: rounds `0..INIT_ROUNDS` precede the periodic regime.
pub const INIT_ROUNDS: usize = 5;

#[derive(Debug, Clone)]
pub struct RoundRecord {
    pub round: usize,
    pub color: Color,
    /// `(edge, outcome)` in measurement order.
    pub outcomes: Vec<(usize, Residue)>,
    pub isg: GeneratorSet,
    pub tableau: CanonicalTableau,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub dim: Dim,
    pub n: usize,
    pub rounds: Vec<RoundRecord>,
}

#[derive(Serialize)]
struct RoundExport<'a> {
    round: usize,
    color: &'a str,
    outcomes: Vec<[usize; 2]>,
    tableau: Vec<String>,
}

impl Trace {
    pub fn round(&self, r: usize) -> Result<&RoundRecord> {
        self.rounds
            .get(r)
            .ok_or_else(|| Error::Unsupported(format!("round {r} is beyond the {} recorded rounds", self.rounds.len())))
    }

    /// JSON Lines, one record per round.
    pub fn export(&self, mut w: impl Write) -> Result<()> {
        for rec in &self.rounds {
            let row = RoundExport {
                round: rec.round,
                color: rec.color.name(),
                outcomes: rec.outcomes.iter().map(|&(e, o)| [e, o as usize]).collect(),
                tableau: rec.tableau.rows.iter().map(|p| p.to_string()).collect(),
            };
            serde_json::to_writer(&mut w, &row)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn export_string(&self) -> String {
        let mut buf = Vec::new();
        self.export(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }
}

/// Color-`c` edges in measurement order: plaquettes of color `c.next()` by id,
/// each one's color-`c` boundary edges in cycle order.
pub fn measurement_order(lat: &ColoredLattice, c: Color) -> Vec<usize> {
    let mut out = Vec::new();
    for f in lat.plaquettes_of_color(c.next()) {
        for &e in lat.plaquette_edges(f) {
            if lat.edges[e].color == c {
                out.push(e);
            }
        }
    }
    out
}

/// Runs `rounds` rounds from the trivial group.
pub fn run_schedule(lat: &ColoredLattice, checks: &CheckAssignment, rounds: usize, mode: OutcomeMode) -> Result<Trace> {
    require_conditions(lat, checks)?;
    run_schedule_with_order(lat, checks, rounds, mode, |_, c| measurement_order(lat, c))
}

/// Like [`run_schedule`] with a caller-chosen within-round order; skips condition checks.
pub fn run_schedule_with_order(
    lat: &ColoredLattice,
    checks: &CheckAssignment,
    rounds: usize,
    mode: OutcomeMode,
    mut order: impl FnMut(usize, Color) -> Vec<usize>,
) -> Result<Trace> {
    let dim = checks.dim();
    let n = lat.n();
    let ops: Vec<PauliOperator> = (0..lat.edges.len()).map(|e| checks.check(lat, e)).collect();
    let mut isg = GeneratorSet::trivial(dim, n);
    let mut out = Vec::with_capacity(rounds);
    for r in 0..rounds {
        let color = Color::of_round(r);
        let mut rng = match mode {
            OutcomeMode::Sampled(seed) => {
                let mut g = ChaCha8Rng::seed_from_u64(seed);
                g.set_stream(r as u64);
                Some(g)
            }
            _ => None,
        };
        let mut outcomes = Vec::new();
        for e in order(r, color) {
            let forced = match mode {
                OutcomeMode::Forced(o) => Some(o),
                _ => None,
            };
            let (o, _) = match rng.as_mut() {
                Some(g) => isg.measure_with(&ops[e], forced, |d| g.gen_range(0..d))?,
                None => isg.measure_with(&ops[e], forced, |_| 0)?,
            };
            outcomes.push((e, o.value));
        }
        let tableau = isg.canonical_form()?;
        out.push(RoundRecord { round: r, color, outcomes, isg: isg.clone(), tableau });
    }
    Ok(Trace { dim, n, rounds: out })
}

/// Product of the checks of color `c` on the boundary of plaquette `f`, in cycle order.
pub fn boundary_check_product(lat: &ColoredLattice, checks: &CheckAssignment, f: usize, c: Color) -> PauliOperator {
    let mut p = PauliOperator::identity(checks.dim(), lat.n());
    for &e in lat.plaquette_edges(f) {
        if lat.edges[e].color == c {
            p.mul_assign_unchecked(&checks.check(lat, e));
        }
    }
    p
}

/// Formed plaquette stabilizer of a color-`l` plaquette: the product of its
/// `l.next()` boundary checks followed by its `l.prev()` boundary checks.
pub fn expected_plaquette(lat: &ColoredLattice, checks: &CheckAssignment, f: usize) -> PauliOperator {
    let l = lat.plaquettes[f].color;
    let mut p = boundary_check_product(lat, checks, f, l.next());
    p.mul_assign_unchecked(&boundary_check_product(lat, checks, f, l.prev()));
    p
}

/// Unformed plaquette of color `l`: the product of its `l.next()` boundary
/// checks, which survives the round measuring `l.prev()`.
pub fn unformed_plaquette(lat: &ColoredLattice, checks: &CheckAssignment, f: usize) -> PauliOperator {
    let l = lat.plaquettes[f].color;
    boundary_check_product(lat, checks, f, l.next())
}

/// Independent generator list for round `r ≤ 4`, following the initialization sequence
/// `⟨C_g⟩, ⟨A_b', C_r⟩, ⟨A_g', A_b, C_b⟩, ⟨A_r', A_g, A_b, C_g⟩, ⟨A_r, A_g, A_b, C_r⟩`.
pub fn expected_initial_isg(lat: &ColoredLattice, checks: &CheckAssignment, r: usize) -> Result<GeneratorSet> {
    if r >= INIT_ROUNDS {
        return Err(Error::Unsupported(format!("round {r} is past initialization")));
    }
    let color = Color::of_round(r);
    let mut gens: Vec<PauliOperator> = lat.edges_of_color(color).map(|e| checks.check(lat, e)).collect();
    // (plaquette color, first round it is unformed, first round it is formed)
    let stages = [(Color::Blue, 1, 2), (Color::Green, 2, 3), (Color::Red, 3, 4)];
    for (pc, unformed_at, formed_at) in stages {
        if r >= formed_at {
            gens.extend(lat.plaquettes_of_color(pc).map(|f| expected_plaquette(lat, checks, f)));
        } else if r >= unformed_at {
            gens.extend(lat.plaquettes_of_color(pc).map(|f| unformed_plaquette(lat, checks, f)));
        }
    }
    GeneratorSet::new(checks.dim(), lat.n(), gens)
}

/// Plaquettes whose stabilizer is formed in the given trace round.
pub fn formed_plaquettes(lat: &ColoredLattice, checks: &CheckAssignment, trace: &Trace, r: usize) -> Result<Vec<usize>> {
    let t = &trace.round(r)?.tableau;
    Ok((0..lat.n_p()).filter(|&f| t.spans(&expected_plaquette(lat, checks, f))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::checks::{circle_square_checks, qubit_honeycomb_checks};
    use crate::lattice::build_torus_honeycomb;

    #[test]
    fn first_round_is_green_checks() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = circle_square_checks(&lat, Dim::new(3).unwrap()).unwrap();
        let tr = run_schedule(&lat, &ca, 6, OutcomeMode::AllZero).unwrap();
        let g: Vec<_> = lat.edges_of_color(Color::Green).map(|e| ca.check(&lat, e)).collect();
        let expect = GeneratorSet::new(ca.dim(), lat.n(), g).unwrap();
        assert!(tr.rounds[0].isg.groups_equal(&expect));
        for r in 0..INIT_ROUNDS {
            let e = expected_initial_isg(&lat, &ca, r).unwrap();
            assert!(tr.rounds[r].isg.groups_equal(&e), "round {r}");
        }
    }

    #[test]
    fn measurement_order_covers_each_edge_once() {
        let lat = build_torus_honeycomb(6, 8).unwrap();
        for c in Color::ALL {
            let mut o = measurement_order(&lat, c);
            o.sort_unstable();
            let all: Vec<_> = lat.edges_of_color(c).collect();
            assert_eq!(o, all);
        }
    }

    #[test]
    fn circle_square_plaquette_table() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let dim = Dim::new(3).unwrap();
        let ca = circle_square_checks(&lat, dim).unwrap();
        for f in 0..lat.n_p() {
            let a = expected_plaquette(&lat, &ca, f);
            assert_eq!(a.weight(), 6);
            for &v in &lat.plaquettes[f].vertices {
                let s = a.single(v);
                let circle = lat.mark(v) == Some(crate::lattice::Mark::Circle);
                let want = match (lat.plaquettes[f].color, circle) {
                    (Color::Green, _) => (2, 0),
                    (Color::Red, true) => (2, 2),
                    (Color::Red, false) => (2, 1),
                    (Color::Blue, true) => (2, 1),
                    (Color::Blue, false) => (2, 2),
                };
                assert_eq!((s.a, s.b), want, "plaquette {f} vertex {v}");
            }
            for e in 0..lat.edges.len() {
                assert_eq!(a.commutation(&ca.check(&lat, e)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn qubit_periodicity_small() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = qubit_honeycomb_checks(&lat).unwrap();
        let tr = run_schedule(&lat, &ca, 10, OutcomeMode::AllZero).unwrap();
        for r in 4..7 {
            assert_eq!(tr.rounds[r].tableau, tr.rounds[r + 3].tableau);
        }
        assert_eq!(tr.rounds[6].tableau.rank(), lat.n() - 2);
    }

    #[test]
    fn export_has_one_line_per_round() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = qubit_honeycomb_checks(&lat).unwrap();
        let tr = run_schedule(&lat, &ca, 4, OutcomeMode::AllZero).unwrap();
        let s = tr.export_string();
        assert_eq!(s.lines().count(), 4);
        let v: serde_json::Value = serde_json::from_str(s.lines().next().unwrap()).unwrap();
        assert_eq!(v["color"], "green");
    }

    #[test]
    fn formed_plaquettes_persist() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = circle_square_checks(&lat, Dim::new(3).unwrap()).unwrap();
        let tr = run_schedule(&lat, &ca, 12, OutcomeMode::AllZero).unwrap();
        for r in 0..12 {
            for f in formed_plaquettes(&lat, &ca, &tr, r).unwrap() {
                let a = expected_plaquette(&lat, &ca, f);
                for later in &tr.rounds[r..] {
                    assert!(later.isg.contains_up_to_phase(&a).is_some(), "plaquette {f} lost after round {r}");
                }
            }
        }
    }

    #[test]
    fn sampled_seeds_differ_only_in_phase() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let ca = circle_square_checks(&lat, Dim::new(3).unwrap()).unwrap();
        let a = run_schedule(&lat, &ca, 9, OutcomeMode::Sampled(1)).unwrap();
        let b = run_schedule(&lat, &ca, 9, OutcomeMode::Sampled(2)).unwrap();
        let mut phases_differ = false;
        for (x, y) in a.rounds.iter().zip(&b.rounds) {
            let sx: Vec<_> = x.tableau.rows.iter().map(|p| p.symplectic()).collect();
            let sy: Vec<_> = y.tableau.rows.iter().map(|p| p.symplectic()).collect();
            assert_eq!(sx, sy, "round {}", x.round);
            phases_differ |= x.tableau != y.tableau;
        }
        assert!(phases_differ);
    }

    #[test]
    fn three_plaquettes_at_a_vertex_cancel() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        for ca in [circle_square_checks(&lat, Dim::new(3).unwrap()).unwrap(), qubit_honeycomb_checks(&lat).unwrap()] {
            for v in 0..lat.n() {
                let mut prod = PauliOperator::identity(ca.dim(), lat.n());
                for c in Color::ALL {
                    let a = expected_plaquette(&lat, &ca, lat.plaquette_at(v, c));
                    prod.mul_assign_unchecked(&PauliOperator::embed(ca.dim(), a.single(v), v, lat.n()).unwrap());
                }
                assert!(prod.is_scalar(), "vertex {v}: {prod}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::seq::SliceRandom;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn within_round_order_is_irrelevant(seed in any::<u64>(), qubit in any::<bool>()) {
                let lat = build_torus_honeycomb(3, 3).unwrap();
                let ca = if qubit {
                    qubit_honeycomb_checks(&lat).unwrap()
                } else {
                    circle_square_checks(&lat, Dim::new(3).unwrap()).unwrap()
                };
                let base = run_schedule(&lat, &ca, 9, OutcomeMode::AllZero).unwrap();
                let shuffled = run_schedule_with_order(&lat, &ca, 9, OutcomeMode::AllZero, |r, c| {
                    let mut o = measurement_order(&lat, c);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ r as u64);
                    o.shuffle(&mut rng);
                    o
                })
                .unwrap();
                for (a, b) in base.rounds.iter().zip(&shuffled.rounds) {
                    prop_assert_eq!(&a.tableau, &b.tableau, "round {}", a.round);
                }
            }
        }
    }
}
