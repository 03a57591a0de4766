//! The period-3 schedule on a small torus: ISG ranks, formed plaquettes,
//! periodicity after initialization, and the trace export.
//!
//! ```bash
//! cargo run -p floqudit --example isg_evolution
//! ```

use floqudit::floquet::{circle_square_checks, expected_initial_isg, formed_plaquettes, run_schedule, INIT_ROUNDS};
use floqudit::{build_torus_honeycomb, Dim, OutcomeMode};

fn main() -> floqudit::Result<()> {
    let lat = build_torus_honeycomb(3, 3)?;
    let ca = circle_square_checks(&lat, Dim::new(3)?)?;
    let tr = run_schedule(&lat, &ca, 12, OutcomeMode::AllZero)?;
    for rec in &tr.rounds {
        let formed = formed_plaquettes(&lat, &ca, &tr, rec.round)?;
        let listed = if rec.round < INIT_ROUNDS {
            let e = expected_initial_isg(&lat, &ca, rec.round)?;
            format!("  matches initial list: {}", rec.isg.groups_equal(&e))
        } else {
            String::new()
        };
        println!(
            "round {:>2} {:<5} rank {:>2}  formed plaquettes {:>2}{listed}",
            rec.round,
            rec.color.name(),
            rec.tableau.rank(),
            formed.len()
        );
    }
    for r in 4..9 {
        println!("S_{r} == S_{}: {}", r + 3, tr.rounds[r].tableau == tr.rounds[r + 3].tableau);
    }
    let first = tr.export_string().lines().next().unwrap_or_default().chars().take(120).collect::<String>();
    println!("trace export, first record: {first}...");
    Ok(())
}
