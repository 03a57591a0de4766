//! Residue arithmetic modulo a prime qudit dimension.

use crate::error::{Error, Result};
use std::fmt;

/// A residue in `[D] = {0, .., D-1}`.
pub type Residue = u32;

/// Upper bound (exclusive) on supported dimensions.
pub const MAX_DIM: u32 = 1 << 16;

/// Prime qudit dimension `D`; every constructor checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u32);

impl Dim {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 || d >= MAX_DIM || !is_prime(d) {
            return Err(Error::NotPrime(d));
        }
        Ok(Dim(d))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces any signed integer into `[D]`.
    #[inline]
    pub fn reduce(self, v: i64) -> Residue {
        v.rem_euclid(self.0 as i64) as Residue
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u64 * b as u64) % self.0 as u64) as Residue
    }

    pub fn pow(self, base: Residue, mut e: u64) -> Residue {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Residue) -> Option<Residue> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.0 - 2) as u64))
        }
    }

    /// `e(e-1)/2 mod D` without overflow for any `e < 2^32`.
    pub fn triangle(self, e: u64) -> Residue {
        let t = if e % 2 == 0 {
            (e / 2) as u128 * (e.saturating_sub(1)) as u128
        } else {
            e as u128 * ((e - 1) / 2) as u128
        };
        (t % self.0 as u128) as Residue
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut i = 2u32;
    while i * i <= d {
        if d % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}
