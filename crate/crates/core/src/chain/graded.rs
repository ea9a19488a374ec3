//! Alexander-graded vector spaces and maps between them.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::matrix::QMatrix;
use crate::error::{Error, Result};

/// A finite-dimensional space with one integer grading per basis vector.
/// The generator order fixes the matrix basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedModule {
    pub gradings: Vec<i64>,
}

impl GradedModule {
    pub fn new(gradings: Vec<i64>) -> Self {
        Self { gradings }
    }

    /// Ungraded space of the given dimension, everything in grading 0.
    pub fn trivial(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    /// Generators listed by descending grading, `dims[g]` copies of each `g`.
    pub fn from_dims(dims: &BTreeMap<i64, usize>) -> Self {
        Self::new(
            dims.iter()
                .rev()
                .flat_map(|(&g, &d)| std::iter::repeat_n(g, d))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.gradings.len()
    }

    pub fn grading(&self, i: usize) -> i64 {
        self.gradings[i]
    }

    /// Dimension of each nonzero graded piece.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.gradings {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    pub fn indices_where(&self, mut pred: impl FnMut(i64) -> bool) -> Vec<usize> {
        (0..self.dim()).filter(|&i| pred(self.gradings[i])).collect()
    }

    /// The dual space, with negated gradings.
    pub fn dual(&self) -> Self {
        Self::new(self.gradings.iter().map(|g| -g).collect())
    }

    pub fn submodule(&self, indices: &[usize]) -> Self {
        Self::new(indices.iter().map(|&i| self.gradings[i]).collect())
    }
}

/// Declared grading behaviour of a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Shift {
    Homogeneous(i64),
    Mixed(MixedTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixedTag {
    Mixed,
}

impl Shift {
    pub const MIXED: Shift = Shift::Mixed(MixedTag::Mixed);

    pub fn homogeneous(self) -> Option<i64> {
        match self {
            Shift::Homogeneous(s) => Some(s),
            Shift::Mixed(_) => None,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Homogeneous(s) => write!(f, "{s:+}"),
            Shift::Mixed(_) => f.write_str("mixed"),
        }
    }
}

/// A linear map with exact rational matrix (codomain rows x domain columns).
///
/// A homogeneous map with shift `s` may only have nonzero entries `(r, c)`
/// where `grading(codomain[r]) = grading(domain[c]) + s`; this is checked on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGradedMap")]
pub struct GradedMap {
    domain: GradedModule,
    codomain: GradedModule,
    matrix: QMatrix,
    shift: Shift,
}

#[derive(Deserialize)]
struct RawGradedMap {
    domain: GradedModule,
    codomain: GradedModule,
    matrix: QMatrix,
    shift: Shift,
}

impl TryFrom<RawGradedMap> for GradedMap {
    type Error = Error;
    fn try_from(raw: RawGradedMap) -> Result<Self> {
        GradedMap::new(raw.domain, raw.codomain, raw.matrix, raw.shift)
    }
}

impl GradedMap {
    pub fn new(domain: GradedModule, codomain: GradedModule, matrix: QMatrix, shift: Shift) -> Result<Self> {
        if matrix.shape() != (codomain.dim(), domain.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{} (codomain x domain)",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        if let Shift::Homogeneous(s) = shift {
            for (row, col, _) in matrix.nonzero_entries() {
                let (from, to) = (domain.grading(col), codomain.grading(row));
                if to != from + s {
                    return Err(Error::ShiftViolation {
                        row,
                        col,
                        shift: s,
                        from,
                        to,
                    });
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
            shift,
        })
    }

    pub fn homogeneous(domain: GradedModule, codomain: GradedModule, matrix: QMatrix, s: i64) -> Result<Self> {
        Self::new(domain, codomain, matrix, Shift::Homogeneous(s))
    }

    pub fn mixed(domain: GradedModule, codomain: GradedModule, matrix: QMatrix) -> Result<Self> {
        Self::new(domain, codomain, matrix, Shift::MIXED)
    }

    pub fn zero(domain: GradedModule, codomain: GradedModule, shift: i64) -> Self {
        let matrix = QMatrix::zeros(codomain.dim(), domain.dim());
        Self {
            domain,
            codomain,
            matrix,
            shift: Shift::Homogeneous(shift),
        }
    }

    pub fn identity(module: GradedModule) -> Self {
        let matrix = QMatrix::identity(module.dim());
        Self {
            domain: module.clone(),
            codomain: module,
            matrix,
            shift: Shift::Homogeneous(0),
        }
    }

    pub fn domain(&self) -> &GradedModule {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedModule {
        &self.codomain
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    /// Sum of two maps with the same domain and codomain. The shift is kept
    /// when both summands share it and becomes mixed otherwise.
    pub fn add(&self, other: &GradedMap) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DimensionMismatch(
                "summands must share domain and codomain".into(),
            ));
        }
        let shift = if self.shift == other.shift {
            self.shift
        } else {
            Shift::MIXED
        };
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix),
            shift,
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> Result<Self> {
        if inner.codomain.dim() != self.domain.dim() {
            return Err(Error::CompositionMismatch {
                left: inner.codomain.dim(),
                right: self.domain.dim(),
            });
        }
        let shift = match (self.shift, inner.shift) {
            (Shift::Homogeneous(a), Shift::Homogeneous(b)) if inner.codomain == self.domain => {
                Shift::Homogeneous(a + b)
            }
            _ => Shift::MIXED,
        };
        Ok(Self {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&inner.matrix),
            shift,
        })
    }

    /// The transpose, as a map between dual spaces. Shifts are preserved.
    pub fn dual(&self) -> Self {
        Self {
            domain: self.codomain.dual(),
            codomain: self.domain.dual(),
            matrix: self.matrix.transpose(),
            shift: self.shift,
        }
    }

    /// Restriction to generator subsets `cols` of the domain, `rows` of the codomain.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::new(
            self.domain.submodule(cols),
            self.codomain.submodule(rows),
            self.matrix.select(rows, cols),
            self.shift,
        )
    }

    /// Splits into homogeneous components keyed by shift.
    pub fn components(&self) -> BTreeMap<i64, GradedMap> {
        let mut out: BTreeMap<i64, QMatrix> = BTreeMap::new();
        for (r, c, v) in self.matrix.nonzero_entries() {
            let s = self.codomain.grading(r) - self.domain.grading(c);
            out.entry(s)
                .or_insert_with(|| QMatrix::zeros(self.matrix.rows(), self.matrix.cols()))[(r, c)] = v.clone();
        }
        out.into_iter()
            .map(|(s, m)| {
                let map = Self {
                    domain: self.domain.clone(),
                    codomain: self.codomain.clone(),
                    matrix: m,
                    shift: Shift::Homogeneous(s),
                };
                (s, map)
            })
            .collect()
    }

    /// Largest `|grading(target) - grading(source)|` over nonzero entries.
    pub fn max_grading_jump(&self) -> i64 {
        self.matrix
            .nonzero_entries()
            .map(|(r, c, _)| (self.codomain.grading(r) - self.domain.grading(c)).abs())
            .max()
            .unwrap_or(0)
    }
}

/// Unit entry helper for building 0/1 maps.
pub(crate) fn unit_matrix(rows: usize, cols: usize, ones: &[(usize, usize)]) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    for &(r, c) in ones {
        m[(r, c)] = BigRational::one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(g: &[i64]) -> GradedModule {
        GradedModule::new(g.to_vec())
    }

    #[test]
    fn shift_violation_rejected() {
        let v = module(&[1, 0, -1]);
        let ok = unit_matrix(3, 3, &[(1, 0)]);
        assert!(GradedMap::homogeneous(v.clone(), v.clone(), ok.clone(), -1).is_ok());
        assert!(matches!(
            GradedMap::homogeneous(v.clone(), v.clone(), ok.clone(), 1),
            Err(Error::ShiftViolation {
                row: 1,
                col: 0,
                shift: 1,
                from: 1,
                to: 0
            })
        ));
        assert!(GradedMap::mixed(v.clone(), v.clone(), ok).is_ok());
        assert!(GradedMap::homogeneous(v.clone(), v, QMatrix::zeros(2, 3), 0).is_err());
    }

    #[test]
    fn sum_of_different_shifts_is_mixed() {
        let v = module(&[1, 0, -1]);
        let minus = GradedMap::homogeneous(v.clone(), v.clone(), unit_matrix(3, 3, &[(1, 0)]), -1).unwrap();
        let plus = GradedMap::homogeneous(v.clone(), v.clone(), unit_matrix(3, 3, &[(1, 2)]), 1).unwrap();
        let sum = plus.add(&minus).unwrap();
        assert_eq!(sum.shift(), Shift::MIXED);
        assert_eq!(plus.add(&plus).unwrap().shift(), Shift::Homogeneous(1));
        let comps = sum.components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(comps[&1].matrix(), plus.matrix());
        assert_eq!(sum.max_grading_jump(), 1);
        assert_eq!(plus.compose(&minus).unwrap().shift(), Shift::Homogeneous(0));
    }

    #[test]
    fn dual_preserves_shift() {
        let v = module(&[2, 1]);
        let f = GradedMap::homogeneous(v.clone(), v, unit_matrix(2, 2, &[(1, 0)]), -1).unwrap();
        let d = f.dual();
        assert_eq!(d.shift(), Shift::Homogeneous(-1));
        assert!(GradedMap::new(d.domain().clone(), d.codomain().clone(), d.matrix().clone(), d.shift()).is_ok());
    }

    #[test]
    fn json_shapes() {
        let v = module(&[1, 0]);
        let f = GradedMap::homogeneous(v.clone(), v, unit_matrix(2, 2, &[(1, 0)]), -1).unwrap();
        let j = serde_json::to_string(&f).unwrap();
        assert!(j.contains(r#""gradings":[1,0]"#));
        assert!(j.contains(r#""shift":-1"#));
        assert_eq!(serde_json::from_str::<GradedMap>(&j).unwrap(), f);
        let bad = j.replace(r#""shift":-1"#, r#""shift":1"#);
        assert!(serde_json::from_str::<GradedMap>(&bad).is_err());
        let mixed = j.replace(r#""shift":-1"#, r#""shift":"mixed""#);
        assert_eq!(serde_json::from_str::<GradedMap>(&mixed).unwrap().shift(), Shift::MIXED);
    }
}
