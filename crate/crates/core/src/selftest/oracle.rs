//! Deliberately naive reference computations, sharing no code with the
//! elimination routines they check.

// plain index loops on purpose: these are meant to be read as textbook code
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chain::{QMatrix, ZMatrix};
use crate::laurent::StaircaseSpec;

type Rows = Vec<Vec<BigRational>>;

fn rows_of(m: &QMatrix) -> Rows {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Row echelon form by textbook Gaussian elimination; returns the pivot count.
fn eliminate(rows: &mut Rows) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let pivot = rows[pivot_row][c].clone();
        for r in pivot_row + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = &rows[r][c] / &pivot;
            for j in c..cols {
                let sub = &factor * &rows[pivot_row][j];
                rows[r][j] -= sub;
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

pub fn rank(m: &QMatrix) -> usize {
    eliminate(&mut rows_of(m))
}

/// Homology of the cone of `f: X -> Y` assembled as an honest complex on
/// `X ⊕ Y` with differential `[[0, 0], [f, 0]]`: `dim ker D - rank D`.
pub fn cone_homology(f: &QMatrix) -> usize {
    let (y, x) = f.shape();
    let n = x + y;
    let d = QMatrix::from_fn(n, n, |r, c| {
        if r >= x && c < x {
            f[(r - x, c)].clone()
        } else {
            BigRational::zero()
        }
    });
    assert!(d.mul(&d).is_zero());
    let r = rank(&d);
    (n - r) - r
}

/// Determinant by elimination over the rationals.
pub fn det(m: &ZMatrix) -> BigInt {
    assert!(m.is_square());
    let mut rows = rows_of(&m.to_rational());
    let n = rows.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        det *= &rows[c][c];
        for r in c + 1..n {
            let factor = &rows[r][c] / &rows[c][c];
            for j in c..n {
                let sub = &factor * &rows[c][j];
                rows[r][j] -= sub;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Basis of `{x : m x = 0}` from the echelon form by back substitution.
pub fn kernel(m: &QMatrix) -> Rows {
    let cols = m.cols();
    let mut rows = rows_of(m);
    let r = eliminate(&mut rows);
    rows.truncate(r);
    let pivots: Vec<usize> = rows
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero echelon row"))
        .collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate().rev() {
                let s: BigRational = (p + 1..cols).map(|j| &rows[i][j] * &x[j]).sum();
                x[p] = -s / &rows[i][p];
            }
            x
        })
        .collect()
}

/// The `d1+ + d1-` matrix read straight off the exponents: generator `i`
/// sits at the `i`-th entry of `[n_k .. n_1, 0, -n_1 .. -n_k]`, and
/// neighbours one apart are joined, down-pointing from even positions and
/// up-pointing from odd ones.
pub fn staircase_matrix(spec: &StaircaseSpec) -> QMatrix {
    let n = spec.exponents();
    let mut gr: Vec<i64> = n.iter().rev().copied().collect();
    gr.extend(n[1..].iter().map(|e| -e));
    let dim = gr.len();
    let mut m = QMatrix::zeros(dim, dim);
    for i in 0..dim.saturating_sub(1) {
        if (gr[i] - gr[i + 1]).abs() != 1 {
            continue;
        }
        let (from, to) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
        m[(to, from)] = BigRational::one();
    }
    m
}

/// Rank of the staircase matrix from arrow lengths alone: each maximal run
/// of `r` consecutive length-one arrows is a path and contributes `⌈r/2⌉`.
pub fn staircase_rank_by_runs(spec: &StaircaseSpec) -> usize {
    let lengths = spec.lengths();
    // arrow lengths along the staircase: m_k .. m_1, m_1 .. m_k
    let arrows: Vec<i64> = lengths.iter().rev().chain(lengths.iter()).copied().collect();
    let mut total = 0;
    let mut run: usize = 0;
    for l in arrows.into_iter().chain(std::iter::once(0)) {
        if l == 1 {
            run += 1;
        } else {
            total += run.div_ceil(2);
            run = 0;
        }
    }
    total
}

/// Elementary divisors of a small matrix from determinantal divisors:
/// `d_i = D_i / D_{i-1}` with `D_i` the gcd of all `i x i` minors.
pub fn divisors_by_minors(m: &ZMatrix) -> Vec<BigInt> {
    use num_integer::Integer;
    let (rows, cols) = m.shape();
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for size in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, size) {
            for cs in subsets(cols, size) {
                g = g.gcd(&det(&m.select(&rs, &cs)));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let m = QMatrix::from_integers(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(cone_homology(&m), 2);
        assert_eq!(kernel(&m).len(), 1);
        assert_eq!(det(&ZMatrix::from_i64(vec![vec![2, 1], vec![1, 3]])), BigInt::from(5));
        let d = divisors_by_minors(&ZMatrix::from_i64(vec![vec![2, 0], vec![0, 4]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn trefoil_runs() {
        let s = StaircaseSpec::new(vec![0, 1]).unwrap();
        assert_eq!(staircase_rank_by_runs(&s), 1);
        assert_eq!(rank(&staircase_matrix(&s)), 1);
    }
}
