//! Line-oriented lattice file format.
//!
//! ```text
//! p=8 genus=2
//! vertex 0 o
//! edge 0 1 green
//! face blue 0 1 2 3 4 5 6 7
//! loop a 0 8 1 16
//! ```
//!
//! Marks are `o` (circle) or `s` (square). An `edge` line may end with a
//! direction token `x`, `y` or `z`.

use super::{Color, ColoredLattice, Direction, Edge, Loop, Mark, Plaquette};
use crate::error::{Error, Result};
use std::fmt::Write;
use std::path::Path;

fn num(tok: Option<&str>, what: &str, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad {what} {tok:?}") })
}

impl ColoredLattice {
    pub fn parse(text: &str) -> Result<ColoredLattice> {
        let mut header: Option<(usize, usize)> = None;
        let mut marks: Vec<Option<Mark>> = Vec::new();
        let mut seen: Vec<bool> = Vec::new();
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        let mut loops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line, msg };
            let mut toks = body.split_whitespace();
            let head = toks.next().unwrap_or("");
            if header.is_none() {
                let (mut p, mut g) = (None, None);
                for tok in body.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("p=") {
                        p = v.parse().ok();
                    } else if let Some(v) = tok.strip_prefix("genus=") {
                        g = v.parse().ok();
                    }
                }
                match (p, g) {
                    (Some(p), Some(g)) => header = Some((p, g)),
                    _ => return Err(perr(format!("expected header `p=<p> genus=<g>`, got {body:?}"))),
                }
                continue;
            }
            match head {
                "vertex" => {
                    let id = num(toks.next(), "vertex id", line)?;
                    let mark = match toks.next() {
                        None => None,
                        Some("o") => Some(Mark::Circle),
                        Some("s") => Some(Mark::Square),
                        Some(t) => return Err(perr(format!("bad mark {t:?}"))),
                    };
                    if id >= seen.len() {
                        seen.resize(id + 1, false);
                        marks.resize(id + 1, None);
                    }
                    if seen[id] {
                        return Err(perr(format!("vertex {id} declared twice")));
                    }
                    seen[id] = true;
                    marks[id] = mark;
                }
                "edge" => {
                    let v = num(toks.next(), "edge endpoint", line)?;
                    let u = num(toks.next(), "edge endpoint", line)?;
                    let color: Color = toks
                        .next()
                        .ok_or_else(|| perr("missing edge color".into()))?
                        .parse()
                        .map_err(|_| perr("bad edge color".into()))?;
                    let direction = match toks.next() {
                        None => None,
                        Some("x") => Some(Direction::X),
                        Some("y") => Some(Direction::Y),
                        Some("z") => Some(Direction::Z),
                        Some(t) => return Err(perr(format!("bad edge direction {t:?}"))),
                    };
                    edges.push(Edge { v, u, color, direction });
                }
                "face" => {
                    let color: Color = toks
                        .next()
                        .ok_or_else(|| perr("missing face color".into()))?
                        .parse()
                        .map_err(|_| perr("bad face color".into()))?;
                    let vertices = toks
                        .map(|t| t.parse().map_err(|_| perr(format!("bad vertex {t:?}"))))
                        .collect::<Result<Vec<usize>>>()?;
                    faces.push(Plaquette { color, vertices });
                }
                "loop" => {
                    let name = toks.next().ok_or_else(|| perr("missing loop name".into()))?.to_string();
                    let es = toks
                        .map(|t| t.parse().map_err(|_| perr(format!("bad edge index {t:?}"))))
                        .collect::<Result<Vec<usize>>>()?;
                    loops.push(Loop { name, edges: es });
                }
                other => return Err(perr(format!("unknown record {other:?}"))),
            }
        }
        let (p, genus) = header.ok_or_else(|| Error::Parse { line: 0, msg: "missing header".into() })?;
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidLattice(format!("vertex {v} is not declared")));
        }
        let n = seen.len();
        let marks = if marks.iter().all(Option::is_some) && n > 0 {
            Some(marks.into_iter().map(Option::unwrap).collect())
        } else if marks.iter().all(Option::is_none) {
            None
        } else {
            return Err(Error::InvalidLattice("either all vertices carry a mark or none do".into()));
        };
        ColoredLattice::new(p, genus, n, marks, edges, faces, loops)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ColoredLattice> {
        ColoredLattice::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p={} genus={}", self.p, self.genus);
        for v in 0..self.n() {
            match self.mark(v) {
                Some(Mark::Circle) => { let _ = writeln!(s, "vertex {v} o"); }
                Some(Mark::Square) => { let _ = writeln!(s, "vertex {v} s"); }
                None => { let _ = writeln!(s, "vertex {v}"); }
            }
        }
        for e in &self.edges {
            let _ = write!(s, "edge {} {} {}", e.v, e.u, e.color);
            match e.direction {
                Some(Direction::X) => s.push_str(" x"),
                Some(Direction::Y) => s.push_str(" y"),
                Some(Direction::Z) => s.push_str(" z"),
                None => {}
            }
            s.push('\n');
        }
        for f in &self.plaquettes {
            let _ = write!(s, "face {}", f.color);
            for v in &f.vertices {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        for l in &self.loops {
            let _ = write!(s, "loop {}", l.name);
            for e in &l.edges {
                let _ = write!(s, " {e}");
            }
            s.push('\n');
        }
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_string())?;
        Ok(())
    }
}
