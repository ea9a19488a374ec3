//! The zig-zag model of knot homology for an instanton L-space knot and the
//! resulting cone computation of the unreduced instanton homology.
//!
//! Generators sit at Alexander gradings `n_k, ..., n_1, 0, -n_1, ..., -n_k`
//! (descending). Reading from the top, the arrows alternate
//! `C_{n_k} -> C_{n_{k-1}} <- C_{n_{k-2}} -> ...`: a `-` arrow lowers the
//! grading by its length, a `+` arrow raises it. Lengths read
//! `m_k, ..., m_1, m_1, ..., m_k`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chain::graded::unit_matrix;
use crate::chain::{cone, ConeReport, GradedMap, GradedModule, Ring};
use crate::error::{Error, Result};
use crate::laurent::StaircaseSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowSign {
    Plus,
    Minus,
}

impl ArrowSign {
    /// Signed grading change per unit length.
    pub fn direction(self) -> i64 {
        match self {
            ArrowSign::Plus => 1,
            ArrowSign::Minus => -1,
        }
    }
}

impl fmt::Display for ArrowSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowSign::Plus => "+",
            ArrowSign::Minus => "-",
        })
    }
}

impl Serialize for ArrowSign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ArrowSign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "+" => Ok(ArrowSign::Plus),
            "-" | "\u{2212}" => Ok(ArrowSign::Minus),
            other => Err(serde::de::Error::custom(format!("unknown arrow sign {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub length: i64,
    pub sign: ArrowSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStaircase")]
pub struct Staircase {
    pub exponents: StaircaseSpec,
    pub vertices: Vec<i64>,
    pub arrows: Vec<Arrow>,
}

#[derive(Deserialize)]
struct RawStaircase {
    exponents: StaircaseSpec,
    vertices: Vec<i64>,
    arrows: Vec<Arrow>,
}

impl TryFrom<RawStaircase> for Staircase {
    type Error = Error;
    fn try_from(raw: RawStaircase) -> Result<Self> {
        let built = build_staircase(&raw.exponents);
        if built.vertices != raw.vertices || built.arrows != raw.arrows {
            return Err(Error::InvalidStaircase(
                "vertices or arrows do not match the exponent list".into(),
            ));
        }
        Ok(built)
    }
}

impl Staircase {
    pub fn spec(&self) -> &StaircaseSpec {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    pub fn module(&self) -> GradedModule {
        GradedModule::new(self.vertices.clone())
    }

    /// Checks the structural invariants: arrows move grading by exactly
    /// `sign * length`, vertices alternate between sources and sinks, and the
    /// two ends carry one arrow each.
    pub fn check_invariants(&self) -> Result<()> {
        let k = self.exponents.k();
        let bad = |msg: String| Err(Error::InvalidStaircase(msg));
        if self.dim() != 2 * k + 1 || self.arrows.len() != 2 * k {
            return bad(format!("expected {} vertices and {} arrows", 2 * k + 1, 2 * k));
        }
        for a in &self.arrows {
            if self.vertices[a.to] - self.vertices[a.from] != a.sign.direction() * a.length || a.length < 1 {
                return bad(format!("arrow {a:?} does not match its grading change"));
            }
        }
        let mut out_deg = vec![0usize; self.dim()];
        let mut in_deg = vec![0usize; self.dim()];
        for a in &self.arrows {
            out_deg[a.from] += 1;
            in_deg[a.to] += 1;
        }
        for i in 0..self.dim() {
            let total = out_deg[i] + in_deg[i];
            let want = if k == 0 {
                0
            } else if i == 0 || i == self.dim() - 1 {
                1
            } else {
                2
            };
            if total != want {
                return bad(format!("vertex {i} has {total} incident arrows, expected {want}"));
            }
            if out_deg[i] > 0 && in_deg[i] > 0 {
                return bad(format!("vertex {i} is neither a pure source nor a pure sink"));
            }
            // even positions are sources, odd positions sinks
            if (i % 2 == 0 && in_deg[i] > 0) || (i % 2 == 1 && out_deg[i] > 0) {
                return bad(format!("vertex {i} breaks the source/sink alternation"));
            }
        }
        Ok(())
    }
}

pub fn build_staircase(spec: &StaircaseSpec) -> Staircase {
    let n = spec.exponents();
    let k = spec.k();
    let vertices: Vec<i64> = n.iter().rev().copied().chain(n.iter().skip(1).map(|e| -e)).collect();
    let arrows = (0..2 * k)
        .map(|i| {
            let length = (vertices[i] - vertices[i + 1]).abs();
            if i % 2 == 0 {
                Arrow {
                    from: i,
                    to: i + 1,
                    length,
                    sign: ArrowSign::Minus,
                }
            } else {
                Arrow {
                    from: i + 1,
                    to: i,
                    length,
                    sign: ArrowSign::Plus,
                }
            }
        })
        .collect();
    Staircase {
        exponents: spec.clone(),
        vertices,
        arrows,
    }
}

/// The length-one arrows as maps `(d1_plus, d1_minus)` with shifts `+1` and
/// `-1`; longer arrows are dropped. Every retained entry is 1.
pub fn extract_d1(s: &Staircase) -> (GradedMap, GradedMap) {
    let v = s.module();
    let n = s.dim();
    let pick = |sign: ArrowSign| -> Vec<(usize, usize)> {
        s.arrows
            .iter()
            .filter(|a| a.length == 1 && a.sign == sign)
            .map(|a| (a.to, a.from))
            .collect()
    };
    let plus = GradedMap::homogeneous(v.clone(), v.clone(), unit_matrix(n, n, &pick(ArrowSign::Plus)), 1)
        .expect("plus arrows raise grading by one");
    let minus = GradedMap::homogeneous(v.clone(), v, unit_matrix(n, n, &pick(ArrowSign::Minus)), -1)
        .expect("minus arrows lower grading by one");
    (plus, minus)
}

/// `c_plus * d1_plus + c_minus * d1_minus`.
pub fn d1_combination(s: &Staircase, c_plus: &BigRational, c_minus: &BigRational) -> Result<GradedMap> {
    if c_plus.is_zero() {
        return Err(Error::ZeroScalar("c_plus"));
    }
    if c_minus.is_zero() {
        return Err(Error::ZeroScalar("c_minus"));
    }
    let (plus, minus) = extract_d1(s);
    plus.scale(c_plus).add(&minus.scale(c_minus))
}

/// Cone of `c_plus d1_plus + c_minus d1_minus` over the rationals; its
/// homology dimension is `dim I^#(S^3, K; C)`.
pub fn isharp_dim(spec: &StaircaseSpec, c_plus: &BigRational, c_minus: &BigRational) -> Result<ConeReport> {
    let s = build_staircase(spec);
    cone(&d1_combination(&s, c_plus, c_minus)?, Ring::Rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::rank;
    use num_traits::One;

    fn spec(v: &[i64]) -> StaircaseSpec {
        StaircaseSpec::new(v.to_vec()).unwrap()
    }

    fn one() -> BigRational {
        BigRational::one()
    }

    #[test]
    fn trefoil_shape() {
        let s = build_staircase(&spec(&[0, 1]));
        assert_eq!(s.vertices, vec![1, 0, -1]);
        assert_eq!(
            s.arrows,
            vec![
                Arrow {
                    from: 0,
                    to: 1,
                    length: 1,
                    sign: ArrowSign::Minus
                },
                Arrow {
                    from: 2,
                    to: 1,
                    length: 1,
                    sign: ArrowSign::Plus
                },
            ]
        );
        s.check_invariants().unwrap();
        let (plus, minus) = extract_d1(&s);
        let entries = |m: &GradedMap| m.matrix().nonzero_entries().map(|(r, c, _)| (r, c)).collect::<Vec<_>>();
        // rows/cols index vertices: grading 1 -> 0, grading 0 -> 1, grading -1 -> 2
        assert_eq!(entries(&minus), vec![(1, 0)]);
        assert_eq!(entries(&plus), vec![(1, 2)]);
    }

    #[test]
    fn unknot_shape() {
        let s = build_staircase(&StaircaseSpec::unknot());
        assert_eq!(s.vertices, vec![0]);
        assert!(s.arrows.is_empty());
        s.check_invariants().unwrap();
        let (plus, minus) = extract_d1(&s);
        assert!(plus.matrix().is_zero() && minus.matrix().is_zero());
    }

    #[test]
    fn t34_shape() {
        let s = build_staircase(&spec(&[0, 2, 3]));
        assert_eq!(s.vertices, vec![3, 2, 0, -2, -3]);
        let lengths: Vec<i64> = s.arrows.iter().map(|a| a.length).collect();
        let signs: Vec<ArrowSign> = s.arrows.iter().map(|a| a.sign).collect();
        assert_eq!(lengths, vec![1, 2, 2, 1]);
        use ArrowSign::*;
        assert_eq!(signs, vec![Minus, Plus, Minus, Plus]);
        s.check_invariants().unwrap();
        let (plus, minus) = extract_d1(&s);
        let entries = |m: &GradedMap| m.matrix().nonzero_entries().map(|(r, c, _)| (r, c)).collect::<Vec<_>>();
        assert_eq!(entries(&minus), vec![(1, 0)]); // grading 3 -> 2
        assert_eq!(entries(&plus), vec![(3, 4)]); // grading -3 -> -2
    }

    #[test]
    fn isharp_examples() {
        assert_eq!(isharp_dim(&spec(&[0, 1]), &one(), &one()).unwrap().dim_homology, 4);
        assert_eq!(isharp_dim(&spec(&[0]), &one(), &one()).unwrap().dim_homology, 2);
        let t25 = isharp_dim(&spec(&[0, 1, 2]), &one(), &one()).unwrap();
        assert_eq!((t25.rank, t25.dim_homology), (2, 6));
        assert!(matches!(
            isharp_dim(&spec(&[0, 1]), &BigRational::zero(), &one()),
            Err(Error::ZeroScalar("c_plus"))
        ));
        assert!(matches!(
            isharp_dim(&spec(&[0, 1]), &one(), &BigRational::zero()),
            Err(Error::ZeroScalar("c_minus"))
        ));
    }

    #[test]
    fn d1_compositions_vanish() {
        for v in [&[0, 1][..], &[0, 1, 2], &[0, 2, 3], &[0, 1, 3, 4, 5]] {
            let s = build_staircase(&spec(v));
            let (plus, minus) = extract_d1(&s);
            assert!(plus.compose(&minus).unwrap().matrix().is_zero());
            assert!(minus.compose(&plus).unwrap().matrix().is_zero());
            assert!(plus.compose(&plus).unwrap().matrix().is_zero());
            let sum = plus.add(&minus).unwrap();
            assert_eq!(rank(&sum), rank(&sum.dual()));
        }
    }

    #[test]
    fn staircase_json() {
        let s = build_staircase(&spec(&[0, 2, 3]));
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.starts_with(
            r#"{"exponents":[0,2,3],"vertices":[3,2,0,-2,-3],"arrows":[{"from":0,"to":1,"length":1,"sign":"-"}"#
        ));
        assert_eq!(serde_json::from_str::<Staircase>(&j).unwrap(), s);
        let tampered = j.replace(r#""length":2"#, r#""length":3"#);
        assert!(serde_json::from_str::<Staircase>(&tampered).is_err());
        let unicode = j.replace(r#""sign":"-""#, "\"sign\":\"\u{2212}\"");
        assert_eq!(serde_json::from_str::<Staircase>(&unicode).unwrap(), s);
    }
}
