//! Exact ranks, determinants and kernels.
//!
//! Ranks over the rationals go through fraction-free (Bareiss) elimination on
//! an integer matrix obtained by clearing row denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{QMatrix, ZMatrix};

/// Fraction-free echelon form. Returns the reduced matrix, the pivot columns
/// and the number of row swaps performed.
fn bareiss(m: &ZMatrix) -> (ZMatrix, Vec<usize>, usize) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    for col in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            swaps += 1;
        }
        let pivot = a[(r, col)].clone();
        for i in r + 1..rows {
            let lead = a[(i, col)].clone();
            for j in col + 1..cols {
                let v = &pivot * &a[(i, j)] - &lead * &a[(r, j)];
                a[(i, j)] = v / &prev;
            }
            a[(i, col)] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(col);
    }
    (a, pivots, swaps)
}

/// Rank over the rationals of an integer matrix.
pub fn rank_z(m: &ZMatrix) -> usize {
    bareiss(m).1.len()
}

/// Exact rank of a rational matrix. Sparse inputs (the common case here) go
/// through row insertion, which skips zero entries; dense ones through Bareiss.
pub fn rank_q(m: &QMatrix) -> usize {
    let nonzero = m.nonzero_entries().count();
    if nonzero * 4 <= m.rows() * m.cols() {
        let rows: Vec<Vec<BigRational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        *prefix_ranks_q(&rows).last().expect("nonempty")
    } else {
        rank_z(&clear_denominators(m))
    }
}

/// Scales each row by the lcm of its denominators. Row scaling by nonzero
/// integers preserves rank.
pub fn clear_denominators(m: &QMatrix) -> ZMatrix {
    let lcms: Vec<BigInt> = (0..m.rows())
        .map(|r| m.row(r).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom())))
        .collect();
    ZMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let v = &m[(r, c)];
        v.numer() * (&lcms[r] / v.denom())
    })
}

/// Rank over the field with two elements.
pub fn rank_f2(m: &ZMatrix) -> usize {
    let words = m.cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (c, v) in m.row(r).iter().enumerate() {
                if v.is_odd() {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(p, rank);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// `out[i]` is the rank of the first `i` vectors, for `i = 0..=len`.
/// One pass of incremental elimination, so filtrations cost a single rank.
pub fn prefix_ranks_q(vectors: &[Vec<BigRational>]) -> Vec<usize> {
    // each basis vector is zero at the pivots of those inserted before it
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut out = vec![0];
    for v in vectors {
        let mut v = v.clone();
        for (p, b) in &basis {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            v.iter_mut().for_each(|x| *x *= &inv);
            basis.push((p, v));
        }
        out.push(basis.len());
    }
    out
}

/// [`prefix_ranks_q`] over the field with two elements.
pub fn prefix_ranks_f2(vectors: &[Vec<bool>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<bool>)> = Vec::new();
    let mut out = vec![0];
    for v in vectors {
        let mut v = v.clone();
        for (p, b) in &basis {
            if v[*p] {
                v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        if let Some(p) = v.iter().position(|&x| x) {
            basis.push((p, v));
        }
        out.push(basis.len());
    }
    out
}

/// Determinant of a square integer matrix.
pub fn det_z(m: &ZMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let (a, pivots, swaps) = bareiss(m);
    if pivots.len() < n {
        return BigInt::zero();
    }
    let d = a[(n - 1, n - 1)].clone();
    if swaps % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form over the rationals, with pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    for col in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, col)].recip();
        for j in col..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, col)].is_zero() {
                continue;
            }
            let factor = a[(i, col)].clone();
            for j in col..cols {
                let v = &a[(i, j)] - &factor * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(col);
    }
    (a, pivots)
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<BigRational>> {
    let (a, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{y : y m = 0}`.
pub fn left_nullspace(m: &QMatrix) -> Vec<Vec<BigRational>> {
    nullspace(&m.transpose())
}
