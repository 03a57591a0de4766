//! Torus honeycombs and the bundled {8,3} genus-2 lattice: counts, loops, file round-trip.
//!
//! ```bash
//! cargo run -p floqudit --example lattices
//! ```

use floqudit::{build_torus_honeycomb, ColoredLattice};

fn describe(name: &str, lat: &ColoredLattice) {
    let c = lat.combinatorics();
    println!(
        "{name}: p={} genus={} n={} |E|={} n_p={} edges/color={:?} faces/color={:?}",
        lat.p, c.genus, c.n, c.n_e, c.n_p, c.edges_per_color, c.faces_per_color
    );
    for l in &lat.loops {
        println!("  loop {:<10} {:>2} edges, nontrivial={}", l.name, l.edges.len(), lat.is_nontrivial_loop(l));
    }
    let loops: Vec<_> = lat.loops.iter().collect();
    println!("  homology rank of declared loops: {}", lat.homology_rank(&loops));
}

fn main() -> floqudit::Result<()> {
    let t = build_torus_honeycomb(6, 8)?;
    describe("torus 6x8", &t);

    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hyperbolic_8_3_genus2.lattice");
    let h = ColoredLattice::load(fixture)?;
    describe("{8,3} fixture", &h);

    let text = build_torus_honeycomb(3, 3)?.to_file_string();
    let back = ColoredLattice::parse(&text)?;
    println!("3x3 round-trip equal: {}", back.to_file_string() == text);

    match build_torus_honeycomb(4, 4) {
        Ok(_) => println!("4x4 unexpectedly built"),
        Err(e) => println!("4x4 rejected: {e}"),
    }
    Ok(())
}
