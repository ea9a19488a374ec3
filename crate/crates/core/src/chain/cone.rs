//! Mapping cones of maps between complexes with zero differential.
//!
//! For `f: X -> Y` with both sides carrying the zero differential, the cone
//! has homology `ker f ⊕ coker f`, so everything reduces to ranks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::graded::GradedMap;
use super::matrix::{QMatrix, ZMatrix};
use super::rank::{prefix_ranks_f2, prefix_ranks_q};
use super::snf::smith_normal_form;
use crate::error::Result;

/// Coefficient ring for a cone computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Rational,
    Integer,
    F2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub ring: Ring,
    pub dim_domain: usize,
    pub dim_codomain: usize,
    pub rank: usize,
    /// Dimension of the homology (free rank over the integers).
    pub dim_homology: usize,
    pub graded_kernel_dims: BTreeMap<i64, usize>,
    pub graded_cokernel_dims: BTreeMap<i64, usize>,
    /// Elementary divisors greater than 1; only populated over the integers.
    #[serde(with = "crate::num_json::vec")]
    pub torsion_summands: Vec<BigInt>,
}

impl ConeReport {
    pub fn dim_kernel(&self) -> usize {
        self.dim_domain - self.rank
    }

    pub fn dim_cokernel(&self) -> usize {
        self.dim_codomain - self.rank
    }

    /// Checks `dim_homology = dim_domain + dim_codomain - 2 rank` and, over
    /// the integers, that there are at most `rank` torsion summands.
    pub fn is_consistent(&self) -> bool {
        let graded_ok = self.graded_kernel_dims.values().sum::<usize>() == self.dim_kernel()
            && self.graded_cokernel_dims.values().sum::<usize>() == self.dim_cokernel();
        self.dim_homology + 2 * self.rank == self.dim_domain + self.dim_codomain
            && self.torsion_summands.len() <= self.rank
            && graded_ok
    }
}

/// Ranks of the leading `i` columns (or rows) of a matrix, for every `i`,
/// after reordering by `order`.
fn prefix_ranks(m: &QMatrix, integer: Option<&ZMatrix>, f2: bool, order: &[usize], by_rows: bool) -> Vec<usize> {
    if f2 {
        let z = integer.expect("F2 needs an integer matrix");
        let vecs: Vec<Vec<bool>> = order
            .iter()
            .map(|&i| {
                let len = if by_rows { z.cols() } else { z.rows() };
                (0..len)
                    .map(|j| {
                        if by_rows {
                            z[(i, j)].is_odd()
                        } else {
                            z[(j, i)].is_odd()
                        }
                    })
                    .collect()
            })
            .collect();
        prefix_ranks_f2(&vecs)
    } else {
        let vecs: Vec<Vec<BigRational>> = order
            .iter()
            .map(|&i| {
                if by_rows {
                    m.row(i).to_vec()
                } else {
                    (0..m.rows()).map(|j| m[(j, i)].clone()).collect()
                }
            })
            .collect();
        prefix_ranks_q(&vecs)
    }
}

/// Homology of `cone(f)` over the chosen ring.
///
/// Kernel and cokernel dimensions are reported per grading. For a mixed map
/// the pieces are those of the associated graded of the filtration by
/// grading (generators of grading at most `g`), which agrees with the honest
/// graded decomposition whenever `f` is homogeneous.
pub fn cone(f: &GradedMap, ring: Ring) -> Result<ConeReport> {
    let integer = match ring {
        Ring::Rational => None,
        Ring::Integer | Ring::F2 => Some(f.matrix().to_integer()?),
    };
    let f2 = ring == Ring::F2;
    let (dom, cod) = (f.domain(), f.codomain());
    let m = f.matrix();

    // columns by increasing grading: prefix ranks give rank on each F_g
    let mut cols: Vec<usize> = (0..dom.dim()).collect();
    cols.sort_by_key(|&c| dom.grading(c));
    let col_ranks = prefix_ranks(m, integer.as_ref(), f2, &cols, false);
    let rank = *col_ranks.last().expect("nonempty");

    // rows by decreasing grading: the prefix of rows above g gives the rank
    // of f followed by projection away from F_g, and
    // dim(im f ∩ F_g) = rank f - that rank
    let mut rows: Vec<usize> = (0..cod.dim()).collect();
    rows.sort_by_key(|&r| std::cmp::Reverse(cod.grading(r)));
    let row_ranks = prefix_ranks(m, integer.as_ref(), f2, &rows, true);

    let mut graded_kernel_dims = BTreeMap::new();
    let mut prev = 0;
    for &g in dom.graded_dims().keys() {
        let n = cols.iter().filter(|&&c| dom.grading(c) <= g).count();
        let ker = n - col_ranks[n];
        graded_kernel_dims.insert(g, ker - prev);
        prev = ker;
    }
    let mut graded_cokernel_dims = BTreeMap::new();
    let mut prev = 0;
    for &g in cod.graded_dims().keys() {
        let above = rows.iter().filter(|&&r| cod.grading(r) > g).count();
        let coker = (cod.dim() - above) - (rank - row_ranks[above]);
        graded_cokernel_dims.insert(g, coker - prev);
        prev = coker;
    }

    let torsion_summands = match (ring, &integer) {
        (Ring::Integer, Some(z)) => smith_normal_form(z).torsion(),
        _ => Vec::new(),
    };

    Ok(ConeReport {
        ring,
        dim_domain: dom.dim(),
        dim_codomain: cod.dim(),
        rank,
        dim_homology: dom.dim() + cod.dim() - 2 * rank,
        graded_kernel_dims: graded_kernel_dims.into_iter().filter(|(_, d)| *d > 0).collect(),
        graded_cokernel_dims: graded_cokernel_dims.into_iter().filter(|(_, d)| *d > 0).collect(),
        torsion_summands,
    })
}
