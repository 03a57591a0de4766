//! Two-qudit check assignments, the three commutation conditions, and the builtin instances.

use crate::error::{Error, Result};
use crate::field::{Dim, Residue};
use crate::lattice::{Color, ColoredLattice, Direction, Mark};
use crate::pauli::{PauliOperator, SinglePauli};
use serde::Serialize;
use std::fmt::Write;

/// Per edge, the single-qudit factors on `edge.v` and `edge.u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckAssignment {
    dim: Dim,
    factors: Vec<(SinglePauli, SinglePauli)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub element: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    /// At most 32 per condition.
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

const MAX_LISTED: usize = 32;

fn single_mul(dim: Dim, a: SinglePauli, b: SinglePauli) -> SinglePauli {
    let p = a.to_operator(dim).multiply(&b.to_operator(dim)).expect("same shape");
    SinglePauli { a: p.x()[0], b: p.z()[0], phase: p.phase() }
}

impl CheckAssignment {
    pub fn new(lat: &ColoredLattice, dim: Dim, factors: Vec<(SinglePauli, SinglePauli)>) -> Result<Self> {
        if factors.len() != lat.edges.len() {
            return Err(Error::InvalidChecks(format!(
                "{} checks for {} edges",
                factors.len(),
                lat.edges.len()
            )));
        }
        let d = dim.get();
        let factors: Vec<_> = factors
            .into_iter()
            .map(|(p, q)| {
                let r = |s: SinglePauli| SinglePauli { a: s.a % d, b: s.b % d, phase: s.phase % d };
                (r(p), r(q))
            })
            .collect();
        for (e, (p, q)) in factors.iter().enumerate() {
            if p.is_identity() || q.is_identity() {
                return Err(Error::InvalidChecks(format!("check on edge {e} has an identity factor")));
            }
        }
        let ca = CheckAssignment { dim, factors };
        for e in 0..lat.edges.len() {
            if !ca.check(lat, e).is_observable() {
                return Err(Error::InvalidChecks(format!("check on edge {e} is not an observable")));
            }
        }
        Ok(ca)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn factors(&self, e: usize) -> (SinglePauli, SinglePauli) {
        self.factors[e]
    }

    /// `M_{(v,u)} = [P_v]_v [P_u]_u`.
    pub fn check(&self, lat: &ColoredLattice, e: usize) -> PauliOperator {
        let ed = &lat.edges[e];
        let (p, q) = self.factors[e];
        PauliOperator::two_qudit(self.dim, p, ed.v, q, ed.u, lat.n()).expect("edge endpoints are in range")
    }

    /// `P_{v_l}`: the factor that the color-`c` check at `v` places on `v`.
    pub fn vertex_pauli(&self, lat: &ColoredLattice, v: usize, c: Color) -> SinglePauli {
        let e = lat.edge_at(v, c);
        let (p, q) = self.factors[e];
        if lat.edges[e].v == v {
            p
        } else {
            q
        }
    }

    /// Parses `check <v> <u> <color> <a_v> <b_v> <a_u> <b_u>` lines. An optional
    /// `D=<d>` header overrides `dim`.
    pub fn parse(text: &str, lat: &ColoredLattice, dim: Option<Dim>) -> Result<Self> {
        let mut dim = dim;
        let mut factors: Vec<Option<(SinglePauli, SinglePauli)>> = vec![None; lat.edges.len()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line, msg };
            if let Some(d) = body.strip_prefix("D=") {
                let d: u32 = d.trim().parse().map_err(|_| perr(format!("bad header {body:?}")))?;
                let d = Dim::new(d)?;
                if let Some(given) = dim {
                    if given != d {
                        return Err(Error::DimensionMismatch(given.get(), d.get()));
                    }
                }
                dim = Some(d);
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != 8 || toks[0] != "check" {
                return Err(perr(format!("expected `check <v> <u> <color> <a_v> <b_v> <a_u> <b_u>`, got {body:?}")));
            }
            let nums: Vec<i64> = toks[1..3]
                .iter()
                .chain(&toks[4..8])
                .map(|t| t.parse::<i64>().map_err(|_| perr(format!("bad number {t:?}"))))
                .collect::<Result<_>>()?;
            let color: Color = toks[3].parse().map_err(|_| perr(format!("bad color {:?}", toks[3])))?;
            let dd = dim.ok_or_else(|| perr("dimension unknown: pass it explicitly or add a `D=<d>` header".into()))?;
            let (v, u) = (nums[0] as usize, nums[1] as usize);
            let e = lat.find_edge(v, u).ok_or_else(|| perr(format!("no edge between {v} and {u}")))?;
            if lat.edges[e].color != color {
                return Err(perr(format!("edge {v}-{u} is {}, not {color}", lat.edges[e].color)));
            }
            let pv = SinglePauli { a: dd.reduce(nums[2]), b: dd.reduce(nums[3]), phase: 0 };
            let pu = SinglePauli { a: dd.reduce(nums[4]), b: dd.reduce(nums[5]), phase: 0 };
            let pair = if lat.edges[e].v == v { (pv, pu) } else { (pu, pv) };
            if factors[e].replace(pair).is_some() {
                return Err(perr(format!("edge {v}-{u} assigned twice")));
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse { line: 0, msg: "dimension unknown".into() })?;
        let mut out = Vec::with_capacity(factors.len());
        for (e, f) in factors.into_iter().enumerate() {
            let ed = &lat.edges[e];
            out.push(f.ok_or_else(|| Error::InvalidChecks(format!("edge {e} ({}-{}) has no check", ed.v, ed.u)))?);
        }
        CheckAssignment::new(lat, dim, out)
    }

    /// Inverse of [`CheckAssignment::parse`]. Factor phases are not part of the format.
    pub fn to_file_string(&self, lat: &ColoredLattice) -> String {
        let mut s = format!("D={}\n", self.dim);
        for (e, ed) in lat.edges.iter().enumerate() {
            let (p, q) = self.factors[e];
            let _ = writeln!(s, "check {} {} {} {} {} {} {}", ed.v, ed.u, ed.color, p.a, p.b, q.a, q.b);
        }
        s
    }
}

/// Checks the three conditions edge by edge and vertex by vertex.
pub fn validate_conditions(lat: &ColoredLattice, checks: &CheckAssignment) -> ConditionReport {
    let dim = checks.dim;
    let mut rep = ConditionReport { condition1: true, condition2: true, condition3: true, violations: Vec::new() };
    let mut counts = [0usize; 3];
    let mut push = |rep: &mut ConditionReport, cond: u8, element: String, detail: String| {
        match cond {
            1 => rep.condition1 = false,
            2 => rep.condition2 = false,
            _ => rep.condition3 = false,
        }
        let k = &mut counts[cond as usize - 1];
        if *k < MAX_LISTED {
            rep.violations.push(Violation { condition: cond, element, detail });
        }
        *k += 1;
    };

    for (e, ed) in lat.edges.iter().enumerate() {
        let l = ed.color;
        // the partner color in the cyclic pairing (g,b), (r,g), (b,r)
        let partner = l.prev();
        let cv = checks.vertex_pauli(lat, ed.v, l).commutation(&checks.vertex_pauli(lat, ed.v, partner), dim);
        let cu = checks.vertex_pauli(lat, ed.u, l).commutation(&checks.vertex_pauli(lat, ed.u, partner), dim);
        if dim.add(cv, cu) != 0 {
            push(
                &mut rep,
                1,
                format!("edge {e} ({}-{}, {l})", ed.v, ed.u),
                format!("c(P_v{l},P_v{partner}) = {cv} but c(P_u{l},P_u{partner}) = {cu}"),
            );
        }
    }
    for v in 0..lat.n() {
        for l in Color::ALL {
            let c = checks.vertex_pauli(lat, v, l).commutation(&checks.vertex_pauli(lat, v, l.next()), dim);
            if c == 0 {
                push(&mut rep, 2, format!("vertex {v}"), format!("{l} and {} factors commute", l.next()));
            }
        }
    }
    let vertex_product = |v: usize| -> SinglePauli {
        let g = checks.vertex_pauli(lat, v, Color::Green);
        let r = checks.vertex_pauli(lat, v, Color::Red);
        let b = checks.vertex_pauli(lat, v, Color::Blue);
        single_mul(dim, single_mul(dim, g, r), b)
    };
    for (e, ed) in lat.edges.iter().enumerate() {
        let pv = vertex_product(ed.v);
        let pu = vertex_product(ed.u);
        if !pv.is_identity() || !pu.is_identity() || dim.add(pv.phase, pu.phase) != 0 {
            push(
                &mut rep,
                3,
                format!("edge {e} ({}-{})", ed.v, ed.u),
                format!(
                    "vertex products w^{} X^{} Z^{} and w^{} X^{} Z^{}",
                    pv.phase, pv.a, pv.b, pu.phase, pu.a, pu.b
                ),
            );
        }
    }
    rep
}

/// Fails with [`Error::ConditionsViolated`] unless all conditions hold.
pub fn require_conditions(lat: &ColoredLattice, checks: &CheckAssignment) -> Result<ConditionReport> {
    let rep = validate_conditions(lat, checks);
    if !rep.passes() {
        let first = rep
            .violations
            .first()
            .map(|v| format!("condition {} at {}: {}", v.condition, v.element, v.detail))
            .unwrap_or_default();
        return Err(Error::ConditionsViolated(first));
    }
    Ok(rep)
}

/// Factors on the circle and square endpoint, indexed by color:
/// green `X^{-2} ⊗ X^{-2}`, red `XZ ⊗ XZ^{-1}`, blue `XZ^{-1} ⊗ XZ`.
pub fn circle_square_paulis(dim: Dim) -> [(SinglePauli, SinglePauli); 3] {
    let r = |v: i64| dim.reduce(v);
    let s = |a: i64, b: i64| SinglePauli { a: r(a), b: r(b), phase: 0 };
    [(s(-2, 0), s(-2, 0)), (s(1, 1), s(1, -1)), (s(1, -1), s(1, 1))]
}

/// The three structural conditions on the circle-square factors.
pub fn verify_circle_square_conditions(dim: Dim) -> Result<()> {
    let t = circle_square_paulis(dim);
    for i in 0..3 {
        for j in i + 1..3 {
            let c = dim.add(t[i].0.commutation(&t[j].0, dim), t[i].1.commutation(&t[j].1, dim));
            if c != 0 {
                return Err(Error::ConditionsViolated(format!(
                    "{} and {} two-qudit checks do not commute",
                    Color::from_index(i),
                    Color::from_index(j)
                )));
            }
            for (side, (p, q)) in [("circle", (t[i].0, t[j].0)), ("square", (t[i].1, t[j].1))] {
                if p.commutation(&q, dim) == 0 {
                    return Err(Error::ConditionsViolated(format!(
                        "{side} factors of {} and {} commute",
                        Color::from_index(i),
                        Color::from_index(j)
                    )));
                }
            }
        }
    }
    for side in 0..2 {
        let pick = |k: usize| if side == 0 { t[k].0 } else { t[k].1 };
        let xs = (0..3).fold(0, |acc, k| dim.add(acc, pick(k).a));
        let zs = (0..3).fold(0, |acc, k| dim.add(acc, pick(k).b));
        if xs != 0 || zs != 0 {
            return Err(Error::ConditionsViolated("exponent sums are not 0 mod D".into()));
        }
    }
    Ok(())
}

/// The circle-square instance for prime `D ≥ 3`.
pub fn circle_square_checks(lat: &ColoredLattice, dim: Dim) -> Result<CheckAssignment> {
    if dim.get() < 3 {
        return Err(Error::Unsupported("the circle-square instance needs D >= 3".into()));
    }
    if lat.marks.is_none() {
        return Err(Error::Unsupported("the circle-square instance needs a circle/square vertex marking".into()));
    }
    verify_circle_square_conditions(dim)?;
    let t = circle_square_paulis(dim);
    let factors = lat
        .edges
        .iter()
        .map(|ed| {
            let (circ, sq) = t[ed.color.index()];
            if lat.mark(ed.v) == Some(Mark::Circle) {
                (circ, sq)
            } else {
                (sq, circ)
            }
        })
        .collect();
    let ca = CheckAssignment::new(lat, dim, factors)?;
    require_conditions(lat, &ca)?;
    Ok(ca)
}

/// Qubit instance: every vertex carries `X` (green), `XZ` (red), `Z` (blue).
pub fn qubit_honeycomb_checks(lat: &ColoredLattice) -> Result<CheckAssignment> {
    let dim = Dim::new(2)?;
    let per = [SinglePauli::new(1, 0), SinglePauli::new(1, 1), SinglePauli::new(0, 1)];
    let factors = lat.edges.iter().map(|ed| (per[ed.color.index()], per[ed.color.index()])).collect();
    CheckAssignment::new(lat, dim, factors)
}

/// Direction-labelled instance: `x` edges get `X ⊗ X`, `y` edges
/// `(XZ^e)^† ⊗ (XZ^e)^†` and `z` edges `Z^e ⊗ Z^e`.
///
/// The exponent `e` must be given and nonzero mod `D`; `Z^D` itself is the identity.
/// The result is returned whether or not it satisfies the conditions, so the
/// validator can report on it.
pub fn ellison_style_checks(lat: &ColoredLattice, dim: Dim, z_exponent: Option<Residue>) -> Result<CheckAssignment> {
    let e = z_exponent.ok_or_else(|| {
        Error::Unsupported("the literal Z^D check is the identity; supply an explicit Z exponent".into())
    })?;
    let e = e % dim.get();
    if e == 0 {
        return Err(Error::Unsupported(format!("Z exponent {e} is 0 mod {dim}, which makes Z^e the identity")));
    }
    let xz = PauliOperator::embed(dim, SinglePauli::new(1, e), 0, 1)?.inverse();
    let y = SinglePauli { a: xz.x()[0], b: xz.z()[0], phase: xz.phase() };
    let mut factors = Vec::with_capacity(lat.edges.len());
    for (i, ed) in lat.edges.iter().enumerate() {
        let p = match ed.direction {
            Some(Direction::X) => SinglePauli::new(1, 0),
            Some(Direction::Y) => y,
            Some(Direction::Z) => SinglePauli::new(0, e),
            None => return Err(Error::Unsupported(format!("edge {i} has no direction label"))),
        };
        factors.push((p, p));
    }
    CheckAssignment::new(lat, dim, factors)
}
