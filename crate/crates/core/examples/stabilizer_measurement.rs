//! Measuring Paulis against a phase-tracked stabilizer group, checked
//! against the dense codespace projector.
//!
//! ```bash
//! cargo run -p floqudit --example stabilizer_measurement
//! ```

use floqudit::{Dim, GeneratorSet, OutcomeMode, PauliOperator};

fn rows(s: &GeneratorSet) -> floqudit::Result<String> {
    Ok(s.canonical_form()?.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ; "))
}

fn main() -> floqudit::Result<()> {
    let d3 = Dim::new(3)?;
    let lit = |s: &str| PauliOperator::parse_literal(s, d3, 2);
    let s = GeneratorSet::new(d3, 2, vec![lit("X@0 * X@1")?])?;
    println!("S = <XX>, codespace dimension {}", s.codespace_dimension_oracle()?);

    // commutes, not a member: appended with the drawn outcome
    let (s, o) = s.measure(&lit("Z@0 * Z^2@1")?, OutcomeMode::Forced(1))?;
    println!("measure ZZ^-1 -> {o:?}");
    println!("S = {}", rows(&s)?);
    println!("codespace dimension {}", s.codespace_dimension_oracle()?);

    // member: the outcome is read back from the group
    let (_, o) = s.measure(&lit("X^2@0 * X^2@1")?, OutcomeMode::AllZero)?;
    println!("measure (XX)^2 -> {o:?}");

    // anticommutes: replaces a generator, outcome is sampled
    for seed in 0..3 {
        let (t, o) = s.measure(&lit("Z@0")?, OutcomeMode::Sampled(seed))?;
        println!("seed {seed}: measure Z@0 -> {}, S = {}", o.value, rows(&t)?);
    }
    Ok(())
}
