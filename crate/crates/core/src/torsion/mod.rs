//! Machine-checkable inequality chains: 2-torsion certificates from the rank
//! of `d1+ + d1-`, and the next-to-top nonvanishing criterion.

mod counting;

pub use counting::{
    counting_lemma_check, graded_left_annihilator, sample_counting_instance, CountingInstance, CountingReport,
    SamplerMode,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{rank, GradedMap, GradedModule, Shift};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "≥", alias = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ge => "≥",
            Relation::Gt => ">",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub claim: String,
    pub lhs: i64,
    pub rel: Relation,
    pub rhs: i64,
    pub anchor: String,
}

impl LedgerEntry {
    fn new(claim: String, lhs: i64, rel: Relation, rhs: i64, anchor: &str) -> Self {
        Self {
            claim,
            lhs,
            rel,
            rhs,
            anchor: anchor.to_string(),
        }
    }

    pub fn holds(&self) -> bool {
        self.rel.holds(self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionVerdict {
    TorsionProved,
    Inconclusive,
}

impl TorsionVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TorsionVerdict::TorsionProved => "torsion_proved",
            TorsionVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub dim_khi: i64,
    pub rank_f: i64,
    pub dim_isharp_c: i64,
    /// `2 dim KHI`, a lower bound for `dim I^#(F_2)`.
    pub f2_lower_bound: i64,
    pub verdict: TorsionVerdict,
    pub ledger: Vec<LedgerEntry>,
}

pub const ANCHOR_CONE: &str = "exact triangle KHI -> KHI -> I#(C) with map c+ d1+ + c- d1-";
pub const ANCHOR_F2: &str = "axiom: dim I#(F2) = 2 dim I♮(F2) and universal coefficients dim I♮(F2) ≥ dim KHI";
pub const ANCHOR_CRITERION: &str = "universal coefficients: 2-torsion iff dim over F2 exceeds dim over C";
pub const ANCHOR_RANK: &str = "exact rank of d1+ + d1-";

impl TorsionCertificate {
    /// Assembles the certificate from `dim KHI` and `rank(d1+ + d1-)`.
    pub fn from_ranks(dim_khi: usize, rank_f: usize) -> Self {
        let (k, r) = (dim_khi as i64, rank_f as i64);
        let isharp = 2 * k - 2 * r;
        let f2 = 2 * k;
        let proved = r >= 1;
        let mut ledger = vec![
            LedgerEntry::new(
                format!("2·dim KHI = dim I#(C) + 2·rank: 2·{k} = {isharp} + 2·{r}"),
                2 * k,
                Relation::Eq,
                isharp + 2 * r,
                ANCHOR_CONE,
            ),
            LedgerEntry::new(
                format!("dim I#(F2) ≥ 2·dim KHI = {f2}"),
                f2,
                Relation::Eq,
                2 * k,
                ANCHOR_F2,
            ),
        ];
        if proved {
            ledger.push(LedgerEntry::new(
                format!("rank(d1+ + d1-) = {r} ≥ 1"),
                r,
                Relation::Ge,
                1,
                ANCHOR_RANK,
            ));
            ledger.push(LedgerEntry::new(
                format!("F2 lower bound exceeds dim I#(C): {f2} > {isharp}"),
                f2,
                Relation::Gt,
                isharp,
                ANCHOR_CRITERION,
            ));
        } else {
            ledger.push(LedgerEntry::new(
                "rank(d1+ + d1-) = 0, no strict gap".to_string(),
                r,
                Relation::Eq,
                0,
                ANCHOR_RANK,
            ));
        }
        Self {
            dim_khi: k,
            rank_f: r,
            dim_isharp_c: isharp,
            f2_lower_bound: f2,
            verdict: if proved {
                TorsionVerdict::TorsionProved
            } else {
                TorsionVerdict::Inconclusive
            },
            ledger,
        }
    }

    /// Recomputes every stored number and ledger line.
    pub fn verify(&self) -> bool {
        let numbers = self.dim_isharp_c == 2 * self.dim_khi - 2 * self.rank_f
            && self.f2_lower_bound == 2 * self.dim_khi
            && self.dim_isharp_c % 2 == 0
            && (self.verdict == TorsionVerdict::TorsionProved) == (self.rank_f >= 1);
        let fresh = Self::from_ranks(self.dim_khi as usize, self.rank_f as usize);
        numbers && fresh.ledger == self.ledger && self.ledger.iter().all(LedgerEntry::holds)
    }
}

/// Certifies 2-torsion in `I^#(Y, K; Z)` from `rank(d1p + d1m) > 0`.
pub fn certify_torsion(v: &GradedModule, d1p: &GradedMap, d1m: &GradedMap) -> Result<TorsionCertificate> {
    if d1p.shift() != Shift::Homogeneous(1) || d1m.shift() != Shift::Homogeneous(-1) {
        return Err(Error::ShiftMismatch {
            plus: d1p.shift().to_string(),
            minus: d1m.shift().to_string(),
        });
    }
    for m in [d1p, d1m] {
        if m.domain() != v || m.codomain() != v {
            return Err(Error::DimensionMismatch("d1 maps must be endomorphisms of V".into()));
        }
    }
    let f = d1p.add(d1m)?;
    Ok(TorsionCertificate::from_ranks(v.dim(), rank(&f)))
}

/// Graded dimensions of knot homology, supported in `[-g, g]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimProfile {
    dims: BTreeMap<i64, usize>,
}

impl GradedDimProfile {
    pub fn new(dims: BTreeMap<i64, usize>) -> Self {
        Self {
            dims: dims.into_iter().filter(|(_, d)| *d > 0).collect(),
        }
    }

    /// A profile that must be symmetric with odd total dimension.
    pub fn knot(dims: BTreeMap<i64, usize>) -> Result<Self> {
        let p = Self::new(dims);
        if let Some((&i, _)) = p.dims.iter().find(|(&i, &d)| p.dim_at(-i) != d) {
            return Err(Error::InvalidProfile(format!("dims at {i} and {} differ", -i)));
        }
        if p.total().is_multiple_of(2) {
            return Err(Error::InvalidProfile(format!("total dimension {} is even", p.total())));
        }
        Ok(p)
    }

    pub fn of_module(v: &GradedModule) -> Self {
        Self::new(v.graded_dims())
    }

    /// Top grading.
    pub fn genus(&self) -> i64 {
        self.dims.keys().map(|i| i.abs()).max().unwrap_or(0)
    }

    pub fn dim_at(&self, i: i64) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NextToTopVerdict {
    ForcesNonvanishing,
    CriterionNotMet,
}

/// `dim I^# ≤ dim KHI + 2 dim KHI(g)` forces `KHI(g - 1) ≠ 0`.
pub fn next_to_top_verdict(profile: &GradedDimProfile, dim_isharp: usize) -> Result<NextToTopVerdict> {
    let g = profile.genus();
    if g == 0 {
        return Err(Error::DegenerateGenus);
    }
    if dim_isharp <= profile.total() + 2 * profile.dim_at(g) {
        Ok(NextToTopVerdict::ForcesNonvanishing)
    } else {
        Ok(NextToTopVerdict::CriterionNotMet)
    }
}
