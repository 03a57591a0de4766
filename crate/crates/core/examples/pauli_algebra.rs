//! Generalized Pauli arithmetic at D = 3: products, powers, commutation.
//!
//! ```bash
//! cargo run -p floqudit --example pauli_algebra
//! ```

use floqudit::{Dim, PauliOperator};

fn main() -> floqudit::Result<()> {
    let d3 = Dim::new(3)?;
    let xx = PauliOperator::parse_literal("X@0 * X@1", d3, 2)?;
    let zz = PauliOperator::parse_literal("Z@0 * Z^2@1", d3, 2)?;
    let x0 = PauliOperator::parse_literal("X@0", d3, 2)?;
    let z0 = PauliOperator::parse_literal("Z@0", d3, 2)?;

    println!("XX = {xx}");
    println!("Z Z^-1 = {zz}");
    println!("c(XX, ZZ^-1) = {}", xx.commutation(&zz)?);
    println!("c(Z, X) = {}   (ZX = w XZ)", z0.commutation(&x0)?);
    println!("Z * X = {}", z0.multiply(&x0)?);

    let y = x0.multiply(&z0)?;
    println!("(XZ)^2 = {}", y.power(2));
    println!("(XZ)^3 = {}", y.power(3));
    println!("(XZ)^-1 = {}", y.inverse());
    println!("XZ observable at D=3? {}", y.is_observable());
    Ok(())
}
