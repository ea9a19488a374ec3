//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ZMatrix;

/// `u * m * v` is diagonal with entries `divisors`, each dividing the next.
/// `u` and `v` are unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
    pub u: ZMatrix,
    pub v: ZMatrix,
}

impl SmithForm {
    /// Divisors other than 0 and 1: the torsion orders of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `u * m * v` of the given shape.
    pub fn diagonal(&self, rows: usize, cols: usize) -> ZMatrix {
        ZMatrix::from_fn(rows, cols, |r, c| {
            if r == c {
                self.divisors[r].clone()
            } else {
                BigInt::zero()
            }
        })
    }
}

struct Work {
    a: ZMatrix,
    u: ZMatrix,
    v: ZMatrix,
}

impl Work {
    // row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.a.cols() {
            let d = q * &self.a[(src, c)];
            self.a[(dst, c)] -= d;
        }
        for c in 0..self.u.cols() {
            let d = q * &self.u[(src, c)];
            self.u[(dst, c)] -= d;
        }
    }

    // col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.a.rows() {
            let d = q * &self.a[(r, src)];
            self.a[(r, dst)] -= d;
        }
        for r in 0..self.v.rows() {
            let d = q * &self.v[(r, src)];
            self.v[(r, dst)] -= d;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = &self.a[(r, c)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.magnitude() < self.a[(br, bc)].magnitude()) {
                    best = Some((r, c));
                    if x.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &ZMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut w = Work {
        a: m.clone(),
        u: ZMatrix::identity(rows),
        v: ZMatrix::identity(cols),
    };
    let diag_len = rows.min(cols);
    for t in 0..diag_len {
        while let Some((pr, pc)) = w.min_entry(t) {
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);
            let pivot = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    w.row_axpy(i, t, &q);
                }
                clean &= w.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = w.a[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    w.col_axpy(j, t, &q);
                }
                clean &= w.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            if pivot.magnitude().is_one() {
                break;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_axpy(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.row_axpy(t, t, &BigInt::from(2));
        }
    }
    let divisors = (0..diag_len).map(|t| w.a[(t, t)].clone()).collect();
    SmithForm {
        divisors,
        u: w.u,
        v: w.v,
    }
}
