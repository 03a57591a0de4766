//! Dense-matrix oracle for small systems. Qudit 0 is the most significant
//! tensor factor. Only used to cross-check the symplectic machinery.

use crate::error::{Error, Result};
use crate::field::Dim;
use crate::pauli::PauliOperator;
use num_complex::Complex64;
use std::f64::consts::PI;

pub const DEFAULT_ORACLE_BOUND: usize = 27;
pub const ORACLE_BOUND_ENV: &str = "FLOQUDIT_ORACLE_BOUND";
const TOL: f64 = 1e-9;

/// Size cap on `D^n`, overridable through `FLOQUDIT_ORACLE_BOUND`.
pub fn oracle_bound() -> usize {
    std::env::var(ORACLE_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

pub fn omega(dim: Dim, k: i64) -> Complex64 {
    let d = dim.get() as i64;
    Complex64::from_polar(1.0, 2.0 * PI * (k.rem_euclid(d)) as f64 / d as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub size: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(size: usize) -> Self {
        DenseMatrix {
            size,
            data: vec![Complex64::new(0.0, 0.0); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.data[i * size + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.size + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.size + c] = v;
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        DenseMatrix {
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> DenseMatrix {
        DenseMatrix {
            size: self.size,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (n, m) = (self.size, other.size);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.size).map(|i| self.get(i, i)).sum()
    }

    pub fn approx_eq(&self, other: &DenseMatrix) -> bool {
        self.size == other.size && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() < TOL)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.norm() < TOL)
    }
}

fn check_size(dim: Dim, n: usize) -> Result<usize> {
    let bound = oracle_bound();
    let mut size = 1usize;
    for _ in 0..n {
        size = size.saturating_mul(dim.get() as usize);
    }
    if size > bound {
        return Err(Error::OracleBound { size, bound });
    }
    Ok(size)
}

fn single(dim: Dim, a: u32, b: u32) -> DenseMatrix {
    let d = dim.get() as usize;
    let mut m = DenseMatrix::zeros(d);
    for j in 0..d {
        m.set((j + a as usize) % d, j, omega(dim, (b as i64) * j as i64));
    }
    m
}

/// Exact matrix of `ω^l ⊗_i X^{x_i} Z^{z_i}`.
pub fn dense_matrix(p: &PauliOperator) -> Result<DenseMatrix> {
    let dim = p.dim();
    check_size(dim, p.n())?;
    let mut m = DenseMatrix::identity(1);
    for v in 0..p.n() {
        m = m.kron(&single(dim, p.x()[v], p.z()[v]));
    }
    Ok(m.scale(omega(dim, p.phase() as i64)))
}

/// Projector onto the `ω^o` eigenspace of `P`: `(1/D) Σ_j ω^{-oj} P^j`.
pub fn eigenprojector(p: &PauliOperator, o: u32) -> Result<DenseMatrix> {
    let dim = p.dim();
    let d = dim.get();
    let base = dense_matrix(&p.clone().with_phase(dim.sub(p.phase(), o % d)))?;
    let mut acc = DenseMatrix::identity(base.size);
    let mut sum = acc.clone();
    for _ in 1..d {
        acc = acc.matmul(&base);
        sum = sum.add(&acc);
    }
    Ok(sum.scale(Complex64::new(1.0 / d as f64, 0.0)))
}

/// Projector onto the joint `+1` eigenspace of all generators.
pub fn codespace_projector(dim: Dim, n: usize, gens: &[PauliOperator]) -> Result<DenseMatrix> {
    let size = check_size(dim, n)?;
    let mut proj = DenseMatrix::identity(size);
    for g in gens {
        proj = proj.matmul(&eigenprojector(g, 0)?);
    }
    Ok(proj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_matrices() {
        let d2 = Dim::new(2).unwrap();
        let x = PauliOperator::from_exponents(d2, 0, &[1], &[0]).unwrap();
        let m = dense_matrix(&x).unwrap();
        assert!((m.get(0, 1) - Complex64::new(1.0, 0.0)).norm() < TOL);
        assert!(m.get(0, 0).norm() < TOL);

        let d3 = Dim::new(3).unwrap();
        let z = PauliOperator::from_exponents(d3, 0, &[0], &[1]).unwrap();
        let m = dense_matrix(&z).unwrap();
        for j in 0..3 {
            assert!((m.get(j, j) - omega(d3, j as i64)).norm() < TOL);
        }
        let w = PauliOperator::identity(d3, 1).with_phase(1);
        assert!(dense_matrix(&w).unwrap().approx_eq(&DenseMatrix::identity(3).scale(omega(d3, 1))));
    }

    #[test]
    fn bound_is_enforced() {
        let d3 = Dim::new(3).unwrap();
        let p = PauliOperator::identity(d3, 4);
        assert!(matches!(dense_matrix(&p), Err(Error::OracleBound { .. })));
    }

    #[test]
    fn zx_is_omega_xz() {
        let d = Dim::new(5).unwrap();
        let z = dense_matrix(&PauliOperator::from_exponents(d, 0, &[0], &[1]).unwrap()).unwrap();
        let x = dense_matrix(&PauliOperator::from_exponents(d, 0, &[1], &[0]).unwrap()).unwrap();
        assert!(z.matmul(&x).approx_eq(&x.matmul(&z).scale(omega(d, 1))));
    }

    #[test]
    fn products_and_commutation_match_matrices_exhaustively() {
        for d in [2, 3] {
            let dim = Dim::new(d).unwrap();
            for n in 1..=2 {
                let all: Vec<_> = crate::oracle::all_paulis(dim, n)
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| p.with_phase(dim.reduce(i as i64)))
                    .collect();
                let mats: Vec<_> = all.iter().map(|p| dense_matrix(p).unwrap()).collect();
                for (p, mp) in all.iter().zip(&mats) {
                    for (q, mq) in all.iter().zip(&mats) {
                        let prod = dense_matrix(&p.multiply(q).unwrap()).unwrap();
                        assert!(prod.approx_eq(&mp.matmul(mq)), "D={d} {p} * {q}");
                        let c = p.commutation(q).unwrap() as i64;
                        assert!(mp.matmul(mq).approx_eq(&mq.matmul(mp).scale(omega(dim, c))), "D={d} c({p}, {q})");
                    }
                }
            }
        }
    }

    #[test]
    fn three_qudit_products_sampled() {
        use rand::{Rng, SeedableRng};
        let dim = Dim::new(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let rand_pauli = |rng: &mut rand_chacha::ChaCha8Rng| {
            let x: Vec<i64> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let z: Vec<i64> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            PauliOperator::from_exponents(dim, rng.gen_range(0..3), &x, &z).unwrap()
        };
        for _ in 0..200 {
            let p = rand_pauli(&mut rng);
            let q = rand_pauli(&mut rng);
            let prod = dense_matrix(&p.multiply(&q).unwrap()).unwrap();
            assert!(prod.approx_eq(&dense_matrix(&p).unwrap().matmul(&dense_matrix(&q).unwrap())));
        }
    }
}
