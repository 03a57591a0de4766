//! Three-colorable `{p,3}` lattices on closed surfaces.

mod io;
mod torus;

pub use torus::build_torus_honeycomb;

use crate::error::{Error, Result};
use crate::field::Dim;
use crate::linalg;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Green = 0,
    Red = 1,
    Blue = 2,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Green, Color::Red, Color::Blue];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Color {
        Color::ALL[i % 3]
    }

    /// Color measured in the round after this one.
    pub fn next(self) -> Color {
        Color::from_index(self.index() + 1)
    }

    pub fn prev(self) -> Color {
        Color::from_index(self.index() + 2)
    }

    /// Round color: green at r ≡ 0, red at r ≡ 1, blue at r ≡ 2.
    pub fn of_round(r: usize) -> Color {
        Color::from_index(r % 3)
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Green => "green",
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "green" | "g" => Ok(Color::Green),
            "red" | "r" => Ok(Color::Red),
            "blue" | "b" => Ok(Color::Blue),
            _ => Err(Error::Parse { line: 0, msg: format!("unknown color {s:?}") }),
        }
    }
}

/// Vertex bipartition: circle `o` or square `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    Circle,
    Square,
}

/// Geometric edge direction used by the direction-labelled check instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub v: usize,
    pub u: usize,
    pub color: Color,
    pub direction: Option<Direction>,
}

impl Edge {
    pub fn other(&self, w: usize) -> usize {
        if w == self.v {
            self.u
        } else {
            self.v
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.v == w || self.u == w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaquette {
    pub color: Color,
    /// Boundary cycle.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub name: String,
    /// Edge indices in walk order.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredLattice {
    pub p: usize,
    pub genus: usize,
    pub marks: Option<Vec<Mark>>,
    pub edges: Vec<Edge>,
    pub plaquettes: Vec<Plaquette>,
    pub loops: Vec<Loop>,
    n: usize,
    incident: Vec<[usize; 3]>,
    plaquette_edges: Vec<Vec<usize>>,
    vertex_plaquettes: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combinatorics {
    pub n: usize,
    pub n_e: usize,
    pub n_p: usize,
    pub edges_per_color: [usize; 3],
    pub faces_per_color: [usize; 3],
    pub genus: usize,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidLattice(msg.into())
}

impl ColoredLattice {
    /// Assembles and fully validates a lattice.
    pub fn new(
        p: usize,
        genus: usize,
        n: usize,
        marks: Option<Vec<Mark>>,
        edges: Vec<Edge>,
        plaquettes: Vec<Plaquette>,
        loops: Vec<Loop>,
    ) -> Result<Self> {
        let mut lat = ColoredLattice {
            p,
            genus,
            marks,
            edges,
            plaquettes,
            loops,
            n,
            incident: Vec::new(),
            plaquette_edges: Vec::new(),
            vertex_plaquettes: Vec::new(),
        };
        lat.validate()?;
        Ok(lat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_p(&self) -> usize {
        self.plaquettes.len()
    }

    pub fn mark(&self, v: usize) -> Option<Mark> {
        self.marks.as_ref().map(|m| m[v])
    }

    /// Index of the color-`c` edge at vertex `v`.
    pub fn edge_at(&self, v: usize, c: Color) -> usize {
        self.incident[v][c.index()]
    }

    /// Boundary edges of plaquette `f`, edge `i` joining vertices `i` and `i+1`.
    pub fn plaquette_edges(&self, f: usize) -> &[usize] {
        &self.plaquette_edges[f]
    }

    /// The color-`c` plaquette containing vertex `v`.
    pub fn plaquette_at(&self, v: usize, c: Color) -> usize {
        self.vertex_plaquettes[v][c.index()]
    }

    pub fn edges_of_color(&self, c: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].color == c)
    }

    pub fn plaquettes_of_color(&self, c: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.plaquettes.len()).filter(move |&f| self.plaquettes[f].color == c)
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n {
            return None;
        }
        self.incident[a].iter().copied().find(|&e| self.edges[e].other(a) == b && self.edges[e].touches(b))
    }

    /// Plaquettes sharing a boundary edge with `f`.
    pub fn plaquette_neighbors(&self, f: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &e in &self.plaquette_edges[f] {
            let ed = &self.edges[e];
            for w in [ed.v, ed.u] {
                for c in Color::ALL {
                    let g = self.vertex_plaquettes[w][c.index()];
                    if g != f && self.plaquette_edges[g].contains(&e) && !out.contains(&g) {
                        out.push(g);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn loop_by_name(&self, name: &str) -> Option<&Loop> {
        self.loops.iter().find(|l| l.name == name)
    }

    pub fn validate(&mut self) -> Result<()> {
        let (n, p) = (self.n, self.p);
        if p < 4 || p % 2 != 0 {
            return Err(bad(format!("face size p={p} must be even and at least 4")));
        }
        if n == 0 {
            return Err(bad("no vertices"));
        }
        if let Some(m) = &self.marks {
            if m.len() != n {
                return Err(bad(format!("{} marks for {n} vertices", m.len())));
            }
        }
        // degree 3, one edge per color
        let mut incident = vec![[usize::MAX; 3]; n];
        for (i, e) in self.edges.iter().enumerate() {
            if e.v >= n || e.u >= n {
                return Err(bad(format!("edge {i} references a vertex outside 0..{n}")));
            }
            if e.v == e.u {
                return Err(bad(format!("edge {i} is a self-loop at vertex {}", e.v)));
            }
            for w in [e.v, e.u] {
                let slot = &mut incident[w][e.color.index()];
                if *slot != usize::MAX {
                    return Err(bad(format!("vertex {w} has two {} edges ({} and {i})", e.color, *slot)));
                }
                *slot = i;
            }
        }
        for (v, inc) in incident.iter().enumerate() {
            let deg = inc.iter().filter(|&&e| e != usize::MAX).count();
            if deg != 3 {
                return Err(bad(format!("vertex {v} has degree {deg}, expected 3 with one edge per color")));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let dup = incident[e.v].iter().any(|&f| f != i && self.edges[f].touches(e.u));
            if dup {
                return Err(bad(format!("vertices {} and {} are joined twice", e.v, e.u)));
            }
        }
        self.incident = incident;

        if let Some(marks) = &self.marks {
            for (i, e) in self.edges.iter().enumerate() {
                if marks[e.v] == marks[e.u] {
                    return Err(bad(format!("edge {i} joins two vertices with the same mark")));
                }
            }
        }

        // faces
        let mut plaquette_edges = Vec::with_capacity(self.plaquettes.len());
        let mut vertex_plaquettes = vec![[usize::MAX; 3]; n];
        let mut edge_faces = vec![Vec::new(); self.edges.len()];
        for (f, pl) in self.plaquettes.iter().enumerate() {
            if pl.vertices.len() != p {
                return Err(bad(format!("plaquette {f} has {} vertices, expected {p}", pl.vertices.len())));
            }
            let mut pe = Vec::with_capacity(p);
            for i in 0..p {
                let (a, b) = (pl.vertices[i], pl.vertices[(i + 1) % p]);
                if a >= n {
                    return Err(bad(format!("plaquette {f} references vertex {a} outside 0..{n}")));
                }
                let e = self.find_edge(a, b).ok_or_else(|| bad(format!("plaquette {f}: vertices {a} and {b} are not adjacent")))?;
                if self.edges[e].color == pl.color {
                    return Err(bad(format!("plaquette {f} has boundary edge {e} of its own color {}", pl.color)));
                }
                pe.push(e);
                edge_faces[e].push(f);
                let slot = &mut vertex_plaquettes[a][pl.color.index()];
                if *slot != usize::MAX {
                    return Err(bad(format!("vertex {a} lies on two {} plaquettes ({} and {f})", pl.color, *slot)));
                }
                *slot = f;
            }
            for i in 0..p {
                if self.edges[pe[i]].color == self.edges[pe[(i + 1) % p]].color {
                    return Err(bad(format!("plaquette {f}: boundary edge colors do not alternate")));
                }
            }
            plaquette_edges.push(pe);
        }
        for (v, vp) in vertex_plaquettes.iter().enumerate() {
            if vp.contains(&usize::MAX) {
                return Err(bad(format!("vertex {v} is not on one plaquette of every color")));
            }
        }
        for (e, faces) in edge_faces.iter().enumerate() {
            if faces.len() != 2 {
                return Err(bad(format!("edge {e} borders {} plaquettes, expected 2", faces.len())));
            }
            let ed = &self.edges[e];
            let c = ed.color.index();
            if vertex_plaquettes[ed.v][c] == vertex_plaquettes[ed.u][c] {
                return Err(bad(format!("edge {e}: both endpoints lie on the same {} plaquette", ed.color)));
            }
        }
        self.plaquette_edges = plaquette_edges;
        self.vertex_plaquettes = vertex_plaquettes;

        // counting identities
        let n_e = self.edges.len();
        let n_p = self.plaquettes.len();
        if 2 * n_e != 3 * n {
            return Err(bad(format!("|E| = {n_e} but 3n/2 = {}", 3 * n / 2)));
        }
        if n_p * p != 3 * n {
            return Err(bad(format!("n_p = {n_p} but 3n/p = {}", 3 * n / p)));
        }
        let chi = n as i64 - n_e as i64 + n_p as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(bad(format!("Euler characteristic {chi} is not that of a closed orientable surface")));
        }
        let g = ((2 - chi) / 2) as usize;
        if g != self.genus {
            return Err(bad(format!("declared genus {} but Euler relation gives {g}", self.genus)));
        }
        // 4(g-1) = n_p (p - 2 - 2p/3), scaled by 3
        if 12 * (g as i64 - 1) != n_p as i64 * (p as i64 - 6) {
            return Err(bad("face-count identity 4(g-1) = n_p(p-2-2p/3) fails"));
        }

        for l in &self.loops {
            self.loop_walk(l)?;
            if !self.is_nontrivial_loop(l) {
                return Err(Error::TrivialLoop(l.name.clone()));
            }
        }
        Ok(())
    }

    pub fn combinatorics(&self) -> Combinatorics {
        let mut epc = [0; 3];
        for e in &self.edges {
            epc[e.color.index()] += 1;
        }
        let mut fpc = [0; 3];
        for f in &self.plaquettes {
            fpc[f.color.index()] += 1;
        }
        Combinatorics {
            n: self.n,
            n_e: self.edges.len(),
            n_p: self.plaquettes.len(),
            edges_per_color: epc,
            faces_per_color: fpc,
            genus: self.genus,
        }
    }

    /// Vertex sequence `w_0..w_{m-1}` of a closed loop, edge `i` joining `w_i` and `w_{i+1}`.
    pub fn loop_walk(&self, l: &Loop) -> Result<Vec<usize>> {
        let m = l.edges.len();
        if m < 2 {
            return Err(bad(format!("loop {} has fewer than two edges", l.name)));
        }
        for &e in &l.edges {
            if e >= self.edges.len() {
                return Err(bad(format!("loop {} references edge {e} out of range", l.name)));
            }
        }
        let (e0, e1) = (&self.edges[l.edges[0]], &self.edges[l.edges[1]]);
        let start = if e1.touches(e0.u) { e0.v } else { e0.u };
        let mut walk = Vec::with_capacity(m);
        let mut cur = start;
        for &e in &l.edges {
            let ed = &self.edges[e];
            if !ed.touches(cur) {
                return Err(bad(format!("loop {}: edge {e} does not continue the walk at vertex {cur}", l.name)));
            }
            walk.push(cur);
            cur = ed.other(cur);
        }
        if cur != start {
            return Err(bad(format!("loop {} is not closed", l.name)));
        }
        Ok(walk)
    }

    /// Nontriviality in the GF(2) cycle space: the edge vector is a cycle that
    /// is not a sum of plaquette boundaries.
    pub fn is_nontrivial_loop(&self, l: &Loop) -> bool {
        let gf2 = Dim::new(2).expect("2 is prime");
        let mut v = vec![0u32; self.edges.len()];
        for &e in &l.edges {
            if e >= v.len() {
                return false;
            }
            v[e] ^= 1;
        }
        let mut deg = vec![0u32; self.n];
        for (e, &b) in v.iter().enumerate() {
            if b == 1 {
                deg[self.edges[e].v] ^= 1;
                deg[self.edges[e].u] ^= 1;
            }
        }
        if deg.iter().any(|&d| d != 0) || v.iter().all(|&b| b == 0) {
            return false;
        }
        let boundaries: Vec<Vec<u32>> = self
            .plaquette_edges
            .iter()
            .map(|pe| {
                let mut row = vec![0u32; self.edges.len()];
                for &e in pe {
                    row[e] ^= 1;
                }
                row
            })
            .collect();
        !linalg::in_span(&boundaries, &v, gf2)
    }

    /// Rank over GF(2) of the given loops modulo plaquette boundaries.
    pub fn homology_rank(&self, loops: &[&Loop]) -> usize {
        let gf2 = Dim::new(2).expect("2 is prime");
        let mut rows: Vec<Vec<u32>> = self
            .plaquette_edges
            .iter()
            .map(|pe| {
                let mut row = vec![0u32; self.edges.len()];
                for &e in pe {
                    row[e] ^= 1;
                }
                row
            })
            .collect();
        let base = linalg::rank(&rows, gf2);
        for l in loops {
            let mut row = vec![0u32; self.edges.len()];
            for &e in &l.edges {
                row[e] ^= 1;
            }
            rows.push(row);
        }
        linalg::rank(&rows, gf2) - base
    }
}
