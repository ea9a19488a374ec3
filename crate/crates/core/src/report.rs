//! Knot inputs and the per-knot report assembled from every layer.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chain::parse_fraction;
use crate::error::{Error, Result};
use crate::hf_model::{hfk_sharp, HFStaircase};
use crate::laurent::{lspace_decompose, normalize_symmetric, torus_knot_alexander, LaurentPoly, StaircaseSpec};
use crate::staircase::{build_staircase, extract_d1, isharp_dim, Staircase};
use crate::torsion::{certify_torsion, next_to_top_verdict, GradedDimProfile, NextToTopVerdict, TorsionCertificate};

pub const SCHEMA: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KnotInput {
    Torus { p: i64, q: i64 },
    Alexander { polynomial: String },
    Staircase { exponents: Vec<i64> },
    Batch { path: PathBuf },
}

impl KnotInput {
    /// Parses one line of a batch file, in the same grammar as the command
    /// line: `torus P Q`, `alexander POLY`, `staircase N0 N1 ...`, `batch FILE`.
    pub fn parse_line(line: &str) -> Result<Self> {
        let line = line.trim();
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let ints = |s: &str| -> Result<Vec<i64>> {
            s.split_whitespace()
                .map(|w| {
                    w.parse()
                        .map_err(|_| Error::parse(0, format!("expected an integer, got {w:?}")))
                })
                .collect()
        };
        match head {
            "torus" => match ints(rest)?[..] {
                [p, q] => Ok(KnotInput::Torus { p, q }),
                _ => Err(Error::parse(0, "torus takes exactly two integers")),
            },
            "alexander" => {
                let poly = rest.trim_matches(|c| c == '"' || c == '\'');
                if poly.is_empty() {
                    return Err(Error::parse(0, "alexander needs a polynomial"));
                }
                Ok(KnotInput::Alexander {
                    polynomial: poly.to_string(),
                })
            }
            "staircase" => Ok(KnotInput::Staircase { exponents: ints(rest)? }),
            "batch" if !rest.is_empty() => Ok(KnotInput::Batch { path: rest.into() }),
            _ => Err(Error::parse(0, format!("unknown input {line:?}"))),
        }
    }
}

impl fmt::Display for KnotInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotInput::Torus { p, q } => write!(f, "torus {p} {q}"),
            KnotInput::Alexander { polynomial } => write!(f, "alexander \"{polynomial}\""),
            KnotInput::Staircase { exponents } => {
                f.write_str("staircase")?;
                for e in exponents {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
            KnotInput::Batch { path } => write!(f, "batch {}", path.display()),
        }
    }
}

/// Scalars for `c+ d1+ + c- d1-`, as rational strings such as `3` or `-2/5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub c_plus: String,
    pub c_minus: String,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            c_plus: "1".into(),
            c_minus: "1".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NextToTop {
    ForcesNonvanishing,
    CriterionNotMet,
    /// Genus zero: there is no next-to-top grading.
    NotApplicable,
}

impl NextToTop {
    fn as_str(self) -> &'static str {
        match self {
            NextToTop::ForcesNonvanishing => "forces_nonvanishing",
            NextToTop::CriterionNotMet => "criterion_not_met",
            NextToTop::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub input: KnotInput,
    pub alexander: String,
    pub exponents: StaircaseSpec,
    pub staircase: Staircase,
    pub c_plus: String,
    pub c_minus: String,
    pub dim_khi: usize,
    pub graded_khi_dims: BTreeMap<i64, usize>,
    pub rank: usize,
    pub dim_isharp: usize,
    pub f2_lower_bound: usize,
    pub torsion: TorsionCertificate,
    #[serde(with = "crate::num_json::vec")]
    pub hfk_sharp_torsion: Vec<BigInt>,
    pub next_to_top: NextToTop,
}

impl Report {
    /// `2 dim KHI = dim I# + 2 rank`, plus the certificate's own checks.
    pub fn is_consistent(&self) -> bool {
        2 * self.dim_khi == self.dim_isharp + 2 * self.rank
            && self.f2_lower_bound == 2 * self.dim_khi
            && self.graded_khi_dims.values().sum::<usize>() == self.dim_khi
            && self.torsion.verify()
            && self.hfk_sharp_torsion.len() == self.rank
    }

    /// Label/value rows shared by the table renderer and the tests.
    pub fn rows(&self) -> Vec<(&'static str, String)> {
        let graded = self
            .graded_khi_dims
            .iter()
            .rev()
            .map(|(g, d)| format!("{g}:{d}"))
            .collect::<Vec<_>>()
            .join(" ");
        let torsion = if self.hfk_sharp_torsion.is_empty() {
            "none".to_string()
        } else {
            self.hfk_sharp_torsion
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        vec![
            ("input", self.input.to_string()),
            ("alexander", self.alexander.clone()),
            (
                "exponents",
                self.exponents
                    .exponents()
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            ("scalars (c+, c-)", format!("{}, {}", self.c_plus, self.c_minus)),
            ("dim KHI", self.dim_khi.to_string()),
            ("graded KHI", graded),
            ("rank(c+ d1+ + c- d1-)", self.rank.to_string()),
            ("dim I#(C)", self.dim_isharp.to_string()),
            ("F2 lower bound", self.f2_lower_bound.to_string()),
            ("2-torsion", self.torsion.verdict.as_str().to_string()),
            ("HFK# torsion", torsion),
            ("next-to-top", self.next_to_top.as_str().to_string()),
        ]
    }

    pub fn to_table(&self) -> String {
        let rows = self.rows();
        let width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (label, value) in rows {
            out.push_str(&format!("{label:<width$}  {value}\n"));
        }
        out.push_str("ledger:\n");
        for e in &self.torsion.ledger {
            out.push_str(&format!("  {}  [{}]\n", e.claim, e.anchor));
        }
        out
    }
}

/// Reads the Alexander polynomial (normalized) of any single-knot input.
pub fn alexander_of(input: &KnotInput) -> Result<LaurentPoly> {
    match input {
        KnotInput::Torus { p, q } => torus_knot_alexander(*p, *q),
        KnotInput::Alexander { polynomial } => normalize_symmetric(&polynomial.parse()?),
        KnotInput::Staircase { exponents } => Ok(StaircaseSpec::new(exponents.clone())?.alexander()),
        KnotInput::Batch { .. } => Err(Error::BadParameter("batch input has no single polynomial".into())),
    }
}

/// Runs the full pipeline on one knot.
pub fn run(input: &KnotInput, opts: &Options) -> Result<Report> {
    let (c_plus, c_minus) = (parse_fraction(&opts.c_plus)?, parse_fraction(&opts.c_minus)?);
    let delta = alexander_of(input)?;
    let spec = match input {
        KnotInput::Staircase { exponents } => StaircaseSpec::new(exponents.clone())?,
        _ => lspace_decompose(&delta)?,
    };
    let staircase = build_staircase(&spec);
    let cone = isharp_dim(&spec, &c_plus, &c_minus)?;
    let (plus, minus) = extract_d1(&staircase);
    let module = staircase.module();
    let torsion = certify_torsion(&module, &plus, &minus)?;
    let sharp = hfk_sharp(&HFStaircase::new(&spec))?;
    let profile = GradedDimProfile::knot(module.graded_dims())?;
    let next_to_top = match next_to_top_verdict(&profile, cone.dim_homology) {
        Ok(NextToTopVerdict::ForcesNonvanishing) => NextToTop::ForcesNonvanishing,
        Ok(NextToTopVerdict::CriterionNotMet) => NextToTop::CriterionNotMet,
        Err(Error::DegenerateGenus) => NextToTop::NotApplicable,
        Err(e) => return Err(e),
    };
    let dim_khi = staircase.dim();
    Ok(Report {
        schema: SCHEMA.to_string(),
        input: input.clone(),
        alexander: delta.to_string(),
        exponents: spec,
        c_plus: c_plus.to_string(),
        c_minus: c_minus.to_string(),
        dim_khi,
        graded_khi_dims: profile.dims().clone(),
        rank: cone.rank,
        dim_isharp: cone.dim_homology,
        f2_lower_bound: 2 * dim_khi,
        torsion,
        hfk_sharp_torsion: sharp.torsion_summands,
        next_to_top,
        staircase,
    })
}

/// Exit status for a failed run: 2 when the polynomial is not of L-space
/// form, 1 for anything else (unparseable or invalid input).
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotLSpaceForm { .. } => 2,
        _ => 1,
    }
}

/// Parses a batch file: one input per line, blank lines and `#` comments
/// skipped. Each entry keeps its 1-based line number.
pub fn parse_batch(text: &str) -> Vec<(usize, Result<KnotInput>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| (i + 1, KnotInput::parse_line(line)))
        })
        .collect()
}
