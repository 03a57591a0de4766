//! [[n, k, d]] and the subsystem view for the 96-qudit torus and the genus-2 fixture.
//!
//! ```bash
//! cargo run --release -p floqudit --example code_parameters
//! ```

use floqudit::floquet::{circle_square_checks, code_parameters, gauge_analysis, run_schedule};
use floqudit::{build_torus_honeycomb, ColoredLattice, Dim, OutcomeMode};

fn main() -> floqudit::Result<()> {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hyperbolic_8_3_genus2.lattice");
    let lattices = [("torus 6x8", build_torus_honeycomb(6, 8)?), ("{8,3} genus 2", ColoredLattice::load(fixture)?)];
    for (name, lat) in &lattices {
        for d in [3, 5] {
            let ca = circle_square_checks(lat, Dim::new(d)?)?;
            let tr = run_schedule(lat, &ca, 12, OutcomeMode::AllZero)?;
            let cp = code_parameters(lat, &ca, &tr, 9)?;
            let g = gauge_analysis(lat, &ca);
            println!(
                "{name} D={d}: [[{}, {}, <= {}]] rate {}  gauge rank {} center {} gauge qudits {} subsystem logicals {}",
                cp.n,
                cp.k,
                cp.d_upper.map_or("?".into(), |w| w.to_string()),
                cp.rate,
                g.gauge_rank,
                g.center_rank,
                g.gauge_qudits,
                g.logical_qudits
            );
            for m in &cp.mismatches {
                println!("  mismatch: {m}");
            }
        }
    }
    Ok(())
}
