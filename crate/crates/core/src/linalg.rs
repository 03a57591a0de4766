//! Dense row reduction over GF(D).

use crate::field::{Dim, Residue};

/// Reduced row echelon form in place; returns pivot columns in row order.
pub fn rref(rows: &mut Vec<Vec<Residue>>, dim: Dim) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = dim.inv(rows[r][c]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = dim.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (j, row) in rows.iter_mut().enumerate() {
            if j == r || row[c] == 0 {
                continue;
            }
            let f = dim.neg(row[c]);
            for (a, &b) in row.iter_mut().zip(&pivot_row) {
                if b != 0 {
                    *a = dim.add(*a, dim.mul(f, b));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Residue>], dim: Dim) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, dim).len()
}

/// Tests whether `v` lies in the row space of an already reduced matrix.
pub fn in_reduced_span(reduced: &[Vec<Residue>], pivots: &[usize], v: &[Residue], dim: Dim) -> bool {
    let mut w = v.to_vec();
    for (row, &c) in reduced.iter().zip(pivots) {
        let f = w[c];
        if f == 0 {
            continue;
        }
        let f = dim.neg(f);
        for (a, &b) in w.iter_mut().zip(row) {
            if b != 0 {
                *a = dim.add(*a, dim.mul(f, b));
            }
        }
    }
    w.iter().all(|&a| a == 0)
}

pub fn in_span(rows: &[Vec<Residue>], v: &[Residue], dim: Dim) -> bool {
    let mut m = rows.to_vec();
    let piv = rref(&mut m, dim);
    in_reduced_span(&m, &piv, v, dim)
}

/// A basis of the right null space `{x : M x = 0}`.
pub fn null_space(rows: &[Vec<Residue>], cols: usize, dim: Dim) -> Vec<Vec<Residue>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, dim);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0; cols];
        x[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            x[pc] = dim.neg(row[free]);
        }
        basis.push(x);
    }
    basis
}
