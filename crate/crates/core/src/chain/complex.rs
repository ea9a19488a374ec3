//! Bounded chain complexes over the rationals, concentrated in degrees `0..=top`.

use num_rational::BigRational;

use super::matrix::QMatrix;
use super::rank::{nullspace, rank_q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    // diffs[i] is d_{i+1}: C_{i+1} -> C_i
    diffs: Vec<QMatrix>,
}

impl ChainComplex {
    /// `diffs[i]` is the differential out of degree `i + 1`.
    pub fn new(dims: Vec<usize>, diffs: Vec<QMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch(
                "need one differential between each pair of adjacent degrees".into(),
            ));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i], dims[i + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for (i, pair) in diffs.windows(2).enumerate() {
            if !pair[0].mul(&pair[1]).is_zero() {
                return Err(Error::PreconditionFailed(format!("d_{} ∘ d_{} != 0", i + 1, i + 2)));
            }
        }
        Ok(Self { dims, diffs })
    }

    /// Two-term complex `C_1 --d--> C_0`.
    pub fn two_term(d: QMatrix) -> Self {
        let dims = vec![d.rows(), d.cols()];
        Self { dims, diffs: vec![d] }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        usize::try_from(n)
            .ok()
            .and_then(|n| self.dims.get(n).copied())
            .unwrap_or(0)
    }

    /// `d_n: C_n -> C_{n-1}`, zero-shaped outside the support.
    pub fn differential(&self, n: i64) -> QMatrix {
        match usize::try_from(n) {
            Ok(k) if k >= 1 && k <= self.diffs.len() => self.diffs[k - 1].clone(),
            _ => QMatrix::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    /// Basis of the cycles `Z_n`.
    pub fn cycles(&self, n: i64) -> Vec<Vec<BigRational>> {
        nullspace(&self.differential(n))
    }

    /// Matrix whose columns span the boundaries `B_n`.
    pub fn boundaries(&self, n: i64) -> QMatrix {
        self.differential(n + 1)
    }

    pub fn homology_dim(&self, n: i64) -> usize {
        self.dim(n) - rank_q(&self.differential(n)) - rank_q(&self.differential(n + 1))
    }

    pub fn total_homology_dim(&self) -> usize {
        (0..=self.top() as i64).map(|n| self.homology_dim(n)).sum()
    }
}

/// A degree-`degree` map of complexes, `C_n -> D_{n + degree}`.
#[derive(Clone, Debug)]
pub struct ChainMap<'a> {
    pub source: &'a ChainComplex,
    pub target: &'a ChainComplex,
    pub degree: i64,
    components: Vec<QMatrix>,
}

impl<'a> ChainMap<'a> {
    /// `components[n]` maps `C_n`; missing or out-of-range pieces are zero.
    pub fn new(
        source: &'a ChainComplex,
        target: &'a ChainComplex,
        degree: i64,
        components: Vec<QMatrix>,
    ) -> Result<Self> {
        for (n, m) in components.iter().enumerate() {
            let want = (target.dim(n as i64 + degree), source.dim(n as i64));
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "component in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Self {
            source,
            target,
            degree,
            components,
        })
    }

    pub fn component(&self, n: i64) -> QMatrix {
        usize::try_from(n)
            .ok()
            .and_then(|k| self.components.get(k).cloned())
            .unwrap_or_else(|| QMatrix::zeros(self.target.dim(n + self.degree), self.source.dim(n)))
    }

    /// `d u = u d` in every degree.
    pub fn commutes(&self) -> bool {
        (0..=self.source.top() as i64 + 1).all(|n| {
            let lhs = self.target.differential(n + self.degree).mul(&self.component(n));
            let rhs = self.component(n - 1).mul(&self.source.differential(n));
            lhs == rhs
        })
    }

    /// Rank of `H_n(C) -> H_{n+degree}(D)`:
    /// `dim(u(Z_n) + B) - dim B` inside `D_{n+degree}`.
    pub fn induced_rank(&self, n: i64) -> usize {
        let u = self.component(n);
        let images: Vec<Vec<BigRational>> = self.source.cycles(n).iter().map(|z| u.mul_vec(z)).collect();
        let rows = self.target.dim(n + self.degree);
        let boundaries = self.target.boundaries(n + self.degree);
        let spanned = QMatrix::from_columns(rows, &images).hstack(&boundaries);
        rank_q(&spanned) - rank_q(&boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_square() {
        let d1 = QMatrix::from_integers(vec![vec![1]]);
        let d2 = QMatrix::from_integers(vec![vec![1]]);
        assert!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]).is_err());
    }

    #[test]
    fn homology_of_two_term() {
        let c = ChainComplex::two_term(QMatrix::from_integers(vec![vec![1, 1], vec![2, 2], vec![0, 0]]));
        assert_eq!(c.homology_dim(1), 1);
        assert_eq!(c.homology_dim(0), 2);
        assert_eq!(c.total_homology_dim(), 3);
    }

    #[test]
    fn identity_map_induces_identity() {
        let c = ChainComplex::two_term(QMatrix::from_integers(vec![vec![1, 0], vec![0, 0]]));
        let id = ChainMap::new(&c, &c, 0, vec![QMatrix::identity(2), QMatrix::identity(2)]).unwrap();
        assert!(id.commutes());
        assert_eq!(id.induced_rank(0), c.homology_dim(0));
        assert_eq!(id.induced_rank(1), c.homology_dim(1));
    }
}
