//! Validating the three commutation conditions for the builtin check assignments.
//!
//! ```bash
//! cargo run -p floqudit --example check_conditions
//! ```

use floqudit::floquet::{
    circle_square_checks, circle_square_paulis, ellison_style_checks, qubit_honeycomb_checks, validate_conditions,
};
use floqudit::{build_torus_honeycomb, Color, Dim};

fn main() -> floqudit::Result<()> {
    let lat = build_torus_honeycomb(6, 8)?;
    for d in [3, 5, 7] {
        let dim = Dim::new(d)?;
        let rep = validate_conditions(&lat, &circle_square_checks(&lat, dim)?);
        println!("circle-square D={d}: {}", if rep.passes() { "pass" } else { "FAIL" });
        for (c, (circ, sq)) in Color::ALL.iter().zip(circle_square_paulis(dim)) {
            println!("  {c:<5} circle {:?}  square {:?}", (circ.a, circ.b), (sq.a, sq.b));
        }
    }
    let q = validate_conditions(&lat, &qubit_honeycomb_checks(&lat)?);
    println!("qubit honeycomb D=2: {}", if q.passes() { "pass" } else { "FAIL" });

    let e = validate_conditions(&lat, &ellison_style_checks(&lat, Dim::new(3)?, Some(1))?);
    println!("direction-labelled D=3 e=1: c1={} c2={} c3={}", e.condition1, e.condition2, e.condition3);
    for v in e.violations.iter().take(3) {
        println!("  condition {} at {}: {}", v.condition, v.element, v.detail);
    }
    Ok(())
}
