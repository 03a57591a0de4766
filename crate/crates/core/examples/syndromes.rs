//! Single-error detection patterns and a noisy space-time syndrome lattice.
//!
//! ```bash
//! cargo run --release -p floqudit --example syndromes
//! ```

use floqudit::floquet::circle_square_checks;
use floqudit::noise::{build_space_time_lattice, infer_plaquette_values, run_with_errors, syndrome_lattice};
use floqudit::{build_torus_honeycomb, Dim, NoiseModel, PauliOperator, SinglePauli};

fn main() -> floqudit::Result<()> {
    let dim = Dim::new(3)?;
    let lat = build_torus_honeycomb(3, 3)?;
    let ca = circle_square_checks(&lat, dim)?;
    let (v, before) = (4, 6);
    for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
        let e = PauliOperator::embed(dim, SinglePauli::new(a, b), v, lat.n())?;
        let id = PauliOperator::identity(dim, lat.n());
        let tr = run_with_errors(&lat, &ca, 12, |r| if r == before { e.clone() } else { id.clone() })?;
        let st = build_space_time_lattice(&lat, dim, &infer_plaquette_values(&lat, &ca, &tr)?, 0.0, 0, 12);
        let hits: Vec<_> = st.detections().map(|n| (n.plaquette, n.round, n.value)).collect();
        println!("X^{a}Z^{b} on qudit {v} before round {before}: (plaquette, round, value) {hits:?}");
    }

    let model = NoiseModel::new(0.02, dim)?;
    let st = syndrome_lattice(&lat, &ca, 15, &model, 7)?;
    println!(
        "p = 0.02, seed 7: {} nodes, {} edges, {} detections",
        st.nodes.len(),
        st.edges.len(),
        st.detections().count()
    );
    Ok(())
}
