//! Honeycomb lattices on the torus.
//!
//! Hexagons carry axial coordinates `(q, r)` with `0 ≤ q < L1`, `0 ≤ r < L2`
//! and color `(q - r) mod 3`. Vertices are the triangles of the dual
//! triangular lattice: `Up(q,r) = {(q,r), (q+1,r), (q,r+1)}` (circle) and
//! `Down(q,r) = {(q+1,r), (q,r+1), (q+1,r+1)}` (square). Coordinates are
//! identified by `(q + L1, r) ~ (q, r)` and `(q, r + L2) ~ (q + s, r)`, with a
//! half-width brick-wall shift `s = L2/2` for even `L2` and `s = 0` otherwise.

use super::{Color, ColoredLattice, Direction, Edge, Loop, Mark, Plaquette};
use crate::error::{Error, Result};

struct Torus {
    l1: i64,
    l2: i64,
    shift: i64,
}

impl Torus {
    fn norm(&self, q: i64, r: i64) -> (i64, i64) {
        let k = r.div_euclid(self.l2);
        let r = r.rem_euclid(self.l2);
        ((q + k * self.shift).rem_euclid(self.l1), r)
    }

    fn up(&self, q: i64, r: i64) -> usize {
        let (q, r) = self.norm(q, r);
        (2 * (r * self.l1 + q)) as usize
    }

    fn down(&self, q: i64, r: i64) -> usize {
        self.up(q, r) + 1
    }

    fn hex(&self, q: i64, r: i64) -> usize {
        let (q, r) = self.norm(q, r);
        (r * self.l1 + q) as usize
    }
}

fn color(v: i64) -> Color {
    Color::from_index(v.rem_euclid(3) as usize)
}

/// Builds the `L1 × L2` honeycomb, with canonical `horizontal` and `vertical` loops.
pub fn build_torus_honeycomb(l1: usize, l2: usize) -> Result<ColoredLattice> {
    if l1 * l2 < 4 || l1 < 2 || l2 < 2 {
        return Err(Error::InvalidLattice(format!("torus {l1}x{l2} is too small")));
    }
    let shift = if l2 % 2 == 0 { l2 / 2 } else { 0 } as i64;
    let t = Torus { l1: l1 as i64, l2: l2 as i64, shift };
    let (l1i, l2i) = (l1 as i64, l2 as i64);
    let n = 2 * l1 * l2;

    // A consistent three-coloring of the faces needs the color to survive
    // both identifications.
    if l1i % 3 != 0 || (shift + l2i) % 3 != 0 {
        return Err(Error::InvalidLattice(format!(
            "torus {l1}x{l2} admits no proper face 3-coloring under this layout (two adjacent hexagons would share a color)"
        )));
    }

    let mut marks = vec![Mark::Circle; n];
    let mut edges = Vec::with_capacity(3 * n / 2);
    for r in 0..l2i {
        for q in 0..l1i {
            marks[t.down(q, r)] = Mark::Square;
            let d = t.down(q, r);
            edges.push(Edge { v: t.up(q, r), u: d, color: color(q - r), direction: Some(Direction::Y) });
            edges.push(Edge { v: t.up(q + 1, r), u: d, color: color(q - r - 1), direction: Some(Direction::X) });
            edges.push(Edge { v: t.up(q, r + 1), u: d, color: color(q - r + 1), direction: Some(Direction::Z) });
        }
    }

    let mut plaquettes = vec![
        Plaquette { color: Color::Green, vertices: Vec::new() };
        l1 * l2
    ];
    for r in 0..l2i {
        for q in 0..l1i {
            plaquettes[t.hex(q, r)] = Plaquette {
                color: color(q - r),
                vertices: vec![
                    t.up(q, r),
                    t.down(q - 1, r),
                    t.up(q - 1, r),
                    t.down(q - 1, r - 1),
                    t.up(q, r - 1),
                    t.down(q, r - 1),
                ],
            };
        }
    }

    let find = |a: usize, b: usize| -> usize {
        edges
            .iter()
            .position(|e| (e.v == a && e.u == b) || (e.v == b && e.u == a))
            .expect("adjacent triangles")
    };

    let mut horizontal = Vec::with_capacity(2 * l1);
    for q in 0..l1i {
        horizontal.push(find(t.up(q, 0), t.down(q, 0)));
        horizontal.push(find(t.down(q, 0), t.up(q + 1, 0)));
    }
    let mut vertical = Vec::with_capacity(2 * l2);
    if shift == 0 {
        for r in 0..l2i {
            vertical.push(find(t.up(0, r), t.down(0, r)));
            vertical.push(find(t.down(0, r), t.up(0, r + 1)));
        }
    } else {
        // armchair path drifting one column left every two rows
        let mut q = 1;
        for k in 0..l2i / 2 {
            let r = 2 * k;
            vertical.push(find(t.up(q, r), t.down(q, r)));
            vertical.push(find(t.down(q, r), t.up(q, r + 1)));
            vertical.push(find(t.up(q, r + 1), t.down(q - 1, r + 1)));
            vertical.push(find(t.down(q - 1, r + 1), t.up(q - 1, r + 2)));
            q -= 1;
        }
    }
    let loops = vec![
        Loop { name: "horizontal".into(), edges: horizontal },
        Loop { name: "vertical".into(), edges: vertical },
    ];

    ColoredLattice::new(6, 1, n, Some(marks), edges, plaquettes, loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_by_eight() {
        let lat = build_torus_honeycomb(6, 8).unwrap();
        let c = lat.combinatorics();
        assert_eq!((c.n, c.n_e, c.n_p, c.genus), (96, 144, 48, 1));
        assert_eq!(c.edges_per_color, [48, 48, 48]);
        assert_eq!(c.faces_per_color, [16, 16, 16]);
        let h = lat.loop_by_name("horizontal").unwrap();
        let v = lat.loop_by_name("vertical").unwrap();
        assert_eq!((h.edges.len(), v.edges.len()), (12, 16));
        assert_eq!(lat.homology_rank(&[h, v]), 2);
    }

    #[test]
    fn three_by_three() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let c = lat.combinatorics();
        assert_eq!((c.n, c.n_p), (18, 9));
        assert_eq!(c.faces_per_color, [3, 3, 3]);
    }

    #[test]
    fn four_by_four_rejected() {
        assert!(build_torus_honeycomb(4, 4).is_err());
        assert!(build_torus_honeycomb(1, 2).is_err());
    }

    #[test]
    fn file_round_trip() {
        let lat = build_torus_honeycomb(3, 3).unwrap();
        let text = lat.to_file_string();
        let back = ColoredLattice::parse(&text).unwrap();
        assert_eq!(back, lat);
        assert_eq!(back.to_file_string(), text);
    }

    mod props {
        use super::*;
        use crate::lattice::Color;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]
            #[test]
            fn admissible_tori_are_valid_and_round_trip(l1 in 1usize..10, l2 in 1usize..10) {
                let Ok(lat) = build_torus_honeycomb(l1, l2) else {
                    return Ok(());
                };
                let c = lat.combinatorics();
                prop_assert_eq!((c.n, c.n_p, c.genus), (2 * l1 * l2, l1 * l2, 1));
                for col in Color::ALL {
                    prop_assert_eq!(lat.plaquettes_of_color(col).count(), c.n_p / 3);
                }
                let text = lat.to_file_string();
                let back = ColoredLattice::parse(&text).unwrap();
                prop_assert_eq!(back.to_file_string(), text);
                let loops: Vec<_> = lat.loops.iter().collect();
                prop_assert_eq!(lat.homology_rank(&loops), 2);
            }
        }
    }
}
