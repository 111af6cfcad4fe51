//! Exact nullspace computation by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;

fn to_integer_row(row: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in row {
        l = l.lcm(c.denom());
    }
    row.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect()
}

fn strip_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Basis of `{v : M v = 0}` for the matrix with the given rows.
///
/// Rows are scaled to integers and eliminated without fractions, taking the
/// first nonzero entry in each column as pivot. Each basis vector has a 1 in
/// one free column and zeros in the other free columns.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            to_integer_row(r)
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(pr) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, pr);
        let piv_row = m[next].clone();
        let piv = piv_row[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == next || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            for (x, p) in row.iter_mut().zip(piv_row.iter()) {
                *x = &*x * &piv - p * &a;
            }
            strip_content(row);
        }
        pivots.push((next, col));
        next += 1;
        if next == m.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for &(r, c) in &pivots {
            let entry = &m[r][free];
            if !entry.is_zero() {
                v[c] = -Rat::new(entry.clone(), m[r][c].clone());
            }
        }
        basis.push(v);
    }
    basis
}
