//! The exhaustive dense-matrix suites behind the measurement and frame rules.
//!
//! ```bash
//! cargo run --release -p floqudit --example dense_oracle
//! ```

use floqudit::oracle::run_all;
use floqudit::Dim;

fn main() -> floqudit::Result<()> {
    let dims = [Dim::new(2)?, Dim::new(3)?];
    for r in run_all(2, &dims)? {
        println!(
            "{:<11} D={} n={}: {:>5} groups, {:>8} cases, {} failures",
            r.suite, r.dim, r.n, r.groups, r.cases, r.failure_count
        );
    }
    Ok(())
}
