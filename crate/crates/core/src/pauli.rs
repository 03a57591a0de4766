//! Generalized n-qudit Pauli operators `ω^l ⊗_i X^{x_i} Z^{z_i}` over a prime dimension.
//!
//! Operators are kept in normal form: on every qudit the `X` factor sits to the
//! left of the `Z` factor, and the global phase is an exponent of `ω = e^{2πi/D}`.
//! Moving `Z^b` past `X^a` costs `ω^{ab}` (from `ZX = ωXZ`), which fixes the
//! product rule
//!
//! ```text
//! (ω^l X^x Z^z)(ω^l' X^x' Z^z') = ω^{l + l' + Σ z_i x'_i} X^{x+x'} Z^{z+z'}
//! ```
//!
//! and the commutation function `c(P, Q) = Σ_i (z_i x'_i - x_i z'_i)` with
//! `PQ = ω^c QP`.

use crate::error::{Error, Result};
use crate::field::{Dim, Residue};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    dim: Dim,
    phase: Residue,
    x: Vec<Residue>,
    z: Vec<Residue>,
}

/// A single-qudit factor `ω^phase X^a Z^b`, used for embedding and check definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SinglePauli {
    pub a: Residue,
    pub b: Residue,
    pub phase: Residue,
}

impl SinglePauli {
    pub const fn new(a: Residue, b: Residue) -> Self {
        SinglePauli { a, b, phase: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Single-qudit commutation `c(P_{a,b}, P_{a',b'}) = -ab' + ba'`.
    pub fn commutation(&self, other: &SinglePauli, dim: Dim) -> Residue {
        dim.sub(dim.mul(self.b, other.a), dim.mul(self.a, other.b))
    }

    pub fn to_operator(self, dim: Dim) -> PauliOperator {
        PauliOperator::embed(dim, self, 0, 1).expect("index 0 of a single qudit")
    }
}

impl PauliOperator {
    pub fn identity(dim: Dim, n: usize) -> Self {
        PauliOperator {
            dim,
            phase: 0,
            x: vec![0; n],
            z: vec![0; n],
        }
    }

    /// Builds an operator from raw exponents; every entry is reduced mod `D`.
    pub fn from_exponents(dim: Dim, phase: i64, x: &[i64], z: &[i64]) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch(x.len(), z.len()));
        }
        Ok(PauliOperator {
            dim,
            phase: dim.reduce(phase),
            x: x.iter().map(|&v| dim.reduce(v)).collect(),
            z: z.iter().map(|&v| dim.reduce(v)).collect(),
        })
    }

    /// `[P]_v`: identity everywhere except `P` on qudit `v`.
    pub fn embed(dim: Dim, single: SinglePauli, v: usize, n: usize) -> Result<Self> {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        let mut p = PauliOperator::identity(dim, n);
        p.phase = single.phase % dim.get();
        p.x[v] = single.a % dim.get();
        p.z[v] = single.b % dim.get();
        Ok(p)
    }

    /// Two-qudit operator `[P]_v [Q]_u` with `v != u`.
    pub fn two_qudit(dim: Dim, pv: SinglePauli, v: usize, pu: SinglePauli, u: usize, n: usize) -> Result<Self> {
        let mut p = PauliOperator::embed(dim, pv, v, n)?;
        if u >= n {
            return Err(Error::IndexOutOfRange { index: u, n });
        }
        let q = PauliOperator::embed(dim, pu, u, n)?;
        p.mul_assign_unchecked(&q);
        Ok(p)
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn phase(&self) -> Residue {
        self.phase
    }

    #[inline]
    pub fn x(&self) -> &[Residue] {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &[Residue] {
        &self.z
    }

    pub fn single(&self, v: usize) -> SinglePauli {
        SinglePauli {
            a: self.x[v],
            b: self.z[v],
            phase: 0,
        }
    }

    pub fn with_phase(mut self, phase: Residue) -> Self {
        self.phase = phase % self.dim.get();
        self
    }

    /// Multiplies the operator by `ω^delta`.
    pub fn shift_phase(&mut self, delta: Residue) {
        self.phase = self.dim.add(self.phase, delta % self.dim.get());
    }

    /// True iff the symplectic part vanishes (the operator is `ω^l I`).
    pub fn is_scalar(&self) -> bool {
        self.x.iter().all(|&v| v == 0) && self.z.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_scalar()
    }

    /// Number of qudits carrying a non-identity factor.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(a, b)| **a != 0 || **b != 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.x[i] != 0 || self.z[i] != 0).collect()
    }

    /// Symplectic coordinates `(x_0..x_{n-1}, z_0..z_{n-1})`.
    pub fn symplectic(&self) -> Vec<Residue> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }

    /// Rebuilds an operator with phase 0 from symplectic coordinates.
    pub fn from_symplectic(dim: Dim, v: &[Residue]) -> Self {
        let n = v.len() / 2;
        PauliOperator {
            dim,
            phase: 0,
            x: v[..n].iter().map(|&a| a % dim.get()).collect(),
            z: v[n..].iter().map(|&b| b % dim.get()).collect(),
        }
    }

    fn check_compatible(&self, other: &PauliOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim.get(), other.dim.get()));
        }
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// `c(P, Q)` with `PQ = ω^c QP`; phases do not contribute.
    pub fn commutation(&self, other: &PauliOperator) -> Result<Residue> {
        self.check_compatible(other)?;
        Ok(self.commutation_unchecked(other))
    }

    pub(crate) fn commutation_unchecked(&self, other: &PauliOperator) -> Residue {
        let d = self.dim.get() as u64;
        let mut pos = 0u64;
        let mut neg = 0u64;
        for i in 0..self.x.len() {
            pos += self.z[i] as u64 * other.x[i] as u64;
            neg += self.x[i] as u64 * other.z[i] as u64;
        }
        self.dim.sub((pos % d) as Residue, (neg % d) as Residue)
    }

    /// Commutation restricted to the support of `self`, for sparse left operands.
    pub(crate) fn commutation_on(&self, support: &[usize], other: &PauliOperator) -> Residue {
        let d = self.dim.get() as u64;
        let mut pos = 0u64;
        let mut neg = 0u64;
        for &i in support {
            pos += self.z[i] as u64 * other.x[i] as u64;
            neg += self.x[i] as u64 * other.z[i] as u64;
        }
        self.dim.sub((pos % d) as Residue, (neg % d) as Residue)
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool> {
        Ok(self.commutation(other)? == 0)
    }

    /// Group product `self · other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOperator) {
        let dim = self.dim;
        let d = dim.get() as u64;
        let mut cross = 0u64;
        for i in 0..self.x.len() {
            cross += self.z[i] as u64 * other.x[i] as u64;
            self.x[i] = dim.add(self.x[i], other.x[i]);
            self.z[i] = dim.add(self.z[i], other.z[i]);
        }
        self.phase = dim.add(dim.add(self.phase, other.phase), (cross % d) as Residue);
    }

    /// `self · other^e` for `e ∈ [D]`, without materializing intermediate clones.
    pub(crate) fn mul_power_assign(&mut self, other: &PauliOperator, e: Residue) {
        if e == 0 {
            return;
        }
        let p = other.power(e as i64);
        self.mul_assign_unchecked(&p);
    }

    /// `P^e`; negative exponents go through [`PauliOperator::inverse`].
    ///
    /// Uses `(X^a Z^b)^e = ω^{ab·e(e-1)/2} X^{ea} Z^{eb}` per qudit.
    pub fn power(&self, e: i64) -> PauliOperator {
        if e < 0 {
            return self.inverse().power(-e);
        }
        let dim = self.dim;
        let e = e as u64;
        let er = (e % dim.get() as u64) as Residue;
        let tri = dim.triangle(e);
        let mut ab = 0u64;
        for i in 0..self.x.len() {
            ab += self.x[i] as u64 * self.z[i] as u64;
        }
        let ab = (ab % dim.get() as u64) as Residue;
        let phase = dim.add(dim.mul(er, self.phase), dim.mul(ab, tri));
        PauliOperator {
            dim,
            phase,
            x: self.x.iter().map(|&a| dim.mul(a, er)).collect(),
            z: self.z.iter().map(|&b| dim.mul(b, er)).collect(),
        }
    }

    /// The exact group inverse: `P · P^{-1} = I` with phase 0.
    pub fn inverse(&self) -> PauliOperator {
        let dim = self.dim;
        let mut ab = 0u64;
        for i in 0..self.x.len() {
            ab += self.x[i] as u64 * self.z[i] as u64;
        }
        let ab = (ab % dim.get() as u64) as Residue;
        PauliOperator {
            dim,
            phase: dim.add(dim.neg(self.phase), ab),
            x: self.x.iter().map(|&a| dim.neg(a)).collect(),
            z: self.z.iter().map(|&b| dim.neg(b)).collect(),
        }
    }

    /// An operator is a valid observable iff `P^D = I`; this fails only for
    /// `D = 2` operators with an odd number of `XZ` factors.
    pub fn is_observable(&self) -> bool {
        self.power(self.dim.get() as i64).is_identity()
    }

    /// Parses the textual literal format (see [`fmt::Display`]). Bare `X` and `Z`
    /// mean exponent 1, and `X^2@3` may be written without spaces.
    pub fn parse_literal(s: &str, dim: Dim, n: usize) -> Result<PauliOperator> {
        let perr = |msg: String| Error::Parse { line: 0, msg };
        let mut out = PauliOperator::identity(dim, n);
        let s = s.trim();
        if s.is_empty() {
            return Err(perr("empty Pauli literal".into()));
        }
        for term in s.split('*') {
            let mut phase = 0i64;
            let mut a = 0i64;
            let mut b = 0i64;
            let mut site: Option<usize> = None;
            let spaced = term.replace('@', " @ ");
            let mut tokens = spaced.split_whitespace().peekable();
            if tokens.peek().is_none() {
                return Err(perr(format!("empty term in {s:?}")));
            }
            while let Some(tok) = tokens.next() {
                if tok == "@" {
                    let v = tokens.next().ok_or_else(|| perr(format!("missing site in {term:?}")))?;
                    site = Some(v.parse().map_err(|_| perr(format!("bad site {v:?}")))?);
                } else if let Some(rest) = tok.strip_prefix("w^") {
                    phase += parse_int(rest).ok_or_else(|| perr(format!("bad phase {tok:?}")))?;
                } else if let Some(rest) = tok.strip_prefix("X^") {
                    a += parse_int(rest).ok_or_else(|| perr(format!("bad X exponent {tok:?}")))?;
                } else if let Some(rest) = tok.strip_prefix("Z^") {
                    b += parse_int(rest).ok_or_else(|| perr(format!("bad Z exponent {tok:?}")))?;
                } else if tok == "X" {
                    a += 1;
                } else if tok == "Z" {
                    b += 1;
                } else if tok == "I" {
                } else {
                    return Err(perr(format!("unexpected token {tok:?}")));
                }
            }
            let term_op = match site {
                Some(v) => {
                    if v >= n {
                        return Err(Error::IndexOutOfRange { index: v, n });
                    }
                    let single = SinglePauli {
                        a: dim.reduce(a),
                        b: dim.reduce(b),
                        phase: dim.reduce(phase),
                    };
                    PauliOperator::embed(dim, single, v, n)?
                }
                None => {
                    if a != 0 || b != 0 {
                        return Err(perr(format!("term {term:?} has exponents but no site")));
                    }
                    PauliOperator::identity(dim, n).with_phase(dim.reduce(phase))
                }
            };
            out.mul_assign_unchecked(&term_op);
        }
        Ok(out)
    }
}

fn parse_int(s: &str) -> Option<i64> {
    let s = s.trim_start_matches('{').trim_end_matches('}');
    s.parse().ok()
}

/// Canonical literal: `w^l X^a Z^b @ v` per non-identity qudit joined by ` * `,
/// with the global phase on the first term; scalars print as `w^l`.
impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        if support.is_empty() {
            return write!(f, "w^{}", self.phase);
        }
        for (k, &v) in support.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            let phase = if k == 0 { self.phase } else { 0 };
            write!(f, "w^{} X^{} Z^{} @ {}", phase, self.x[v], self.z[v], v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: u32) -> Dim {
        Dim::new(v).unwrap()
    }

    fn one(dim: Dim, a: i64, b: i64, l: i64) -> PauliOperator {
        PauliOperator::from_exponents(dim, l, &[a], &[b]).unwrap()
    }

    #[test]
    fn z_then_x_picks_up_omega() {
        for dv in [2, 3, 5, 7] {
            let dim = d(dv);
            let z = one(dim, 0, 1, 0);
            let x = one(dim, 1, 0, 0);
            assert_eq!(z.commutation(&x).unwrap(), 1);
            assert_eq!(x.commutation(&x).unwrap(), 0);
            assert_eq!(z.multiply(&x).unwrap(), one(dim, 1, 1, 1));
            assert_eq!(x.multiply(&z).unwrap(), one(dim, 1, 1, 0));
        }
    }

    #[test]
    fn qutrit_examples() {
        let dim = d(3);
        let xz = one(dim, 1, 1, 0);
        let xzi = one(dim, 1, -1, 0);
        assert_eq!(xz.commutation(&xzi).unwrap(), 2);
        assert_eq!(xz.multiply(&xzi).unwrap(), one(dim, 2, 0, 1));
        assert_eq!(xz.power(2), one(dim, 2, 2, 1));
    }

    #[test]
    fn powers_and_inverses() {
        for dv in [2, 3, 5] {
            let dim = d(dv);
            let x = one(dim, 1, 0, 0);
            assert!(x.power(dv as i64).is_identity());
            let z = one(dim, 0, 1, 0);
            assert_eq!(z.inverse(), one(dim, 0, dv as i64 - 1, 0));
        }
        let dim = d(2);
        let xz = one(dim, 1, 1, 0);
        assert!(xz.multiply(&xz.inverse()).unwrap().is_identity());
        assert!(!xz.is_observable());
        let yy = PauliOperator::from_exponents(dim, 0, &[1, 1], &[1, 1]).unwrap();
        assert!(yy.is_observable());
    }

    #[test]
    fn embeddings() {
        let dim = d(3);
        let id = PauliOperator::embed(dim, SinglePauli::default(), 2, 5).unwrap();
        assert_eq!(id.weight(), 0);
        let z0 = PauliOperator::embed(dim, SinglePauli::new(0, 1), 0, 2).unwrap();
        assert_eq!((z0.weight(), z0.x(), z0.z()), (1, &[0, 0][..], &[1, 0][..]));
        let xz3 = PauliOperator::embed(dim, SinglePauli::new(1, 1), 3, 4).unwrap();
        assert_eq!(xz3.weight(), 1);
        assert_eq!(xz3.single(3), SinglePauli::new(1, 1));
        assert!(PauliOperator::embed(dim, SinglePauli::new(1, 0), 4, 4).is_err());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = PauliOperator::identity(d(3), 2);
        let b = PauliOperator::identity(d(3), 3);
        let c = PauliOperator::identity(d(5), 2);
        assert!(a.commutation(&b).is_err());
        assert!(a.multiply(&c).is_err());
    }

    #[test]
    fn literal_round_trip_and_examples() {
        let dim = d(3);
        let p = PauliOperator::parse_literal("w^1 X^2 Z^0 @ 3", dim, 4).unwrap();
        assert_eq!(p.phase(), 1);
        assert_eq!(p.single(3), SinglePauli::new(2, 0));
        assert_eq!(p.to_string(), "w^1 X^2 Z^0 @ 3");
        let q = PauliOperator::parse_literal("w^2 X^1 Z^1 @ 0 * w^0 X^1 Z^2 @ 1", dim, 2).unwrap();
        assert_eq!(PauliOperator::parse_literal(&q.to_string(), dim, 2).unwrap(), q);
        let s = PauliOperator::parse_literal("w^2", dim, 2).unwrap();
        assert!(s.is_scalar());
        assert_eq!(s.to_string(), "w^2");
        assert!(PauliOperator::parse_literal("X^1 @ 9", dim, 2).is_err());
        assert!(PauliOperator::parse_literal("Q^1 @ 0", dim, 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dim_n() -> impl Strategy<Value = (u32, usize)> {
            (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..6)
        }

        fn pauli(d: u32, n: usize) -> impl Strategy<Value = PauliOperator> {
            (0..d as i64, prop::collection::vec(0..d as i64, n), prop::collection::vec(0..d as i64, n)).prop_map(
                move |(l, x, z)| PauliOperator::from_exponents(Dim::new(d).unwrap(), l, &x, &z).unwrap(),
            )
        }

        fn triple() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
            dim_n().prop_flat_map(|(d, n)| (pauli(d, n), pauli(d, n), pauli(d, n)))
        }

        proptest! {
            #[test]
            fn antisymmetric((p, q, _) in triple()) {
                let d = p.dim();
                prop_assert_eq!(p.commutation(&q).unwrap(), d.neg(q.commutation(&p).unwrap()));
            }

            #[test]
            fn bilinear((p, q, r) in triple()) {
                let d = p.dim();
                let qr = q.multiply(&r).unwrap();
                prop_assert_eq!(
                    p.commutation(&qr).unwrap(),
                    d.add(p.commutation(&q).unwrap(), p.commutation(&r).unwrap())
                );
            }

            #[test]
            fn associative((p, q, r) in triple()) {
                let a = p.multiply(&q).unwrap().multiply(&r).unwrap();
                let b = p.multiply(&q.multiply(&r).unwrap()).unwrap();
                prop_assert_eq!(a, b);
            }

            #[test]
            fn inverse_and_swap((p, q, _) in triple()) {
                prop_assert!(p.multiply(&p.inverse()).unwrap().is_identity());
                // PQ = w^c QP
                let c = p.commutation(&q).unwrap();
                let mut qp = q.multiply(&p).unwrap();
                qp.shift_phase(c);
                prop_assert_eq!(p.multiply(&q).unwrap(), qp);
            }

            #[test]
            fn power_keeps_weight((p, _, _) in triple(), e in 1i64..7) {
                let d = p.dim().get() as i64;
                let e = 1 + (e - 1) % (d - 1);
                let pe = p.power(e);
                prop_assert_eq!(pe.weight(), p.weight());
                let mut slow = PauliOperator::identity(p.dim(), p.n());
                for _ in 0..e {
                    slow = slow.multiply(&p).unwrap();
                }
                prop_assert_eq!(pe, slow);
            }

            #[test]
            fn literal_round_trip((p, _, _) in triple()) {
                prop_assert_eq!(PauliOperator::parse_literal(&p.to_string(), p.dim(), p.n()).unwrap(), p);
            }
        }
    }
}
