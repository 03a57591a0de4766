//! Type-1 and type-2 loop operators, their pairing, and distance bounds.
//!
//! ```bash
//! cargo run --release -p floqudit --example logical_loops
//! ```

use floqudit::floquet::{circle_square_checks, qubit_honeycomb_checks, run_schedule};
use floqudit::logical::{brute_force_distance, distance_upper_bound, logical_pairs, loop_operators, verify_logical};
use floqudit::{build_torus_honeycomb, Dim, OutcomeMode};

fn main() -> floqudit::Result<()> {
    let lat = build_torus_honeycomb(6, 8)?;
    let ca = circle_square_checks(&lat, Dim::new(3)?)?;
    let tr = run_schedule(&lat, &ca, 8, OutcomeMode::AllZero)?;
    let round = 6;
    for op in loop_operators(&lat, &ca, round) {
        let op = op?;
        let exps: Vec<_> = op.exponents.iter().map(|&(_, b)| b).collect();
        println!(
            "{:<10} {} at round {round} ({}): weight {}, exponents {exps:?}, logical={}",
            op.loop_name,
            op.kind.name(),
            op.color,
            op.operator.weight(),
            verify_logical(&tr.rounds[round].isg, &op.operator)
        );
    }
    let pairs = logical_pairs(&lat, &ca, round)?;
    for p in &pairs {
        println!("pair {}: c(X, Z) = {}", p.index, p.xbar.commutation(&p.zbar)?);
    }
    let reps: Vec<_> = pairs.iter().flat_map(|p| [p.xbar.clone(), p.zbar.clone()]).collect();
    println!("d_upper = {}", distance_upper_bound(&tr, round, &reps, 2)?);

    let small = build_torus_honeycomb(3, 3)?;
    let q = qubit_honeycomb_checks(&small)?;
    let tq = run_schedule(&small, &q, 8, OutcomeMode::AllZero)?;
    println!("qubit 3x3: exact distance {:?}", brute_force_distance(&tq, 6, 6)?);
    Ok(())
}
