//! Dense matrices over exact rings.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<BigRational>;
pub type ZMatrix = Matrix<BigInt>;

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_
    where
        T: Zero,
    {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (i / self.cols, i % self.cols, v))
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// The submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (r0, c0) = (a.rows, a.cols);
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |r, col| match (r < r0, col < c0) {
            (true, true) => a[(r, col)].clone(),
            (true, false) => b[(r, col - c0)].clone(),
            (false, true) => c[(r - r0, col)].clone(),
            (false, false) => d[(r - r0, col - c0)].clone(),
        })
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T> + for<'a> std::ops::Add<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let prod = a.clone() * &rhs[(k, c)];
                    let slot = &mut out.data[r * rhs.cols + c];
                    *slot = std::mem::replace(slot, T::zero()) + &prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ZMatrix {
    pub fn to_rational(&self) -> QMatrix {
        self.map(|v| BigRational::from_integer(v.clone()))
    }
}

impl QMatrix {
    /// Converts to an integer matrix, failing on the first non-integral entry.
    pub fn to_integer(&self) -> Result<ZMatrix> {
        if let Some((row, col, value)) = self.nonzero_entries().find(|(_, _, v)| !v.is_integer()) {
            return Err(Error::NonIntegral {
                row,
                col,
                value: value.to_string(),
            });
        }
        Ok(self.map(|v| v.to_integer()))
    }

    pub fn from_integers(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }
}

impl ZMatrix {
    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryValue {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, EntryValue)>,
}

/// Sparse JSON form `{ "rows": R, "cols": C, "entries": [[r, c, "p/q"], ...] }`.
impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SparseJson {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .nonzero_entries()
                .map(|(r, c, v)| (r, c, EntryValue::Text(v.to_string())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SparseJson::deserialize(d)?;
        let mut m = QMatrix::zeros(raw.rows, raw.cols);
        for (r, c, v) in raw.entries {
            if r >= raw.rows || c >= raw.cols {
                return Err(D::Error::custom(format!(
                    "entry ({r}, {c}) outside {}x{} matrix",
                    raw.rows, raw.cols
                )));
            }
            let value = match v {
                EntryValue::Int(i) => BigRational::from_integer(i.into()),
                EntryValue::Text(t) => parse_fraction(&t).map_err(D::Error::custom)?,
            };
            m[(r, c)] = m[(r, c)].clone() + value;
        }
        Ok(m)
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_fraction(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(1, format!("invalid fraction {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse(1, format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
