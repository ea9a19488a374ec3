//! Seeded property suites, runnable from the command line and from tests.
//! Each case is checked against the naive computations in [`oracle`].

pub mod gen;
pub mod oracle;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::triangle::triangle_dims_consistent;
use crate::chain::{cone, octahedral_verify, rank_f2, rank_q, smith_normal_form, Ring};
use crate::hf_model::{
    f2_doubling_check, hfk_prime2, hfk_sharp, hfk_sharp_via_u_action, instanton_model_agreement, HFStaircase,
};
use crate::laurent::{lspace_decompose, StaircaseSpec};
use crate::staircase::{build_staircase, d1_combination, extract_d1};
use crate::torsion::{
    certify_torsion, counting_lemma_check, next_to_top_verdict, sample_counting_instance, GradedDimProfile,
    NextToTopVerdict, SamplerMode, TorsionVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cone,
    Octahedral,
    Snf,
    Staircase,
    Counting,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Cone,
        Suite::Octahedral,
        Suite::Snf,
        Suite::Staircase,
        Suite::Counting,
    ];

    pub fn default_cases(self) -> usize {
        match self {
            Suite::Cone => 500,
            Suite::Octahedral => 200,
            Suite::Snf => 200,
            Suite::Staircase => 200,
            Suite::Counting => 300,
            Suite::All => 0,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Cone => "cone",
            Suite::Octahedral => "octahedral",
            Suite::Snf => "snf",
            Suite::Staircase => "staircase",
            Suite::Counting => "counting",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    /// First few failing cases, with a description each.
    pub failures: Vec<String>,
    pub failed: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{:<11} {status} ({} cases, {} failed, seed {})",
            self.suite, self.cases, self.failed, self.seed
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `suite` (or every suite for [`Suite::All`]) with `cases` cases each,
/// defaulting to the suite's own count.
pub fn run(suite: Suite, seed: u64, cases: Option<usize>) -> Vec<SuiteResult> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, seed, cases)).collect(),
        s => vec![run_one(s, seed, cases)],
    }
}

fn run_one(suite: Suite, seed: u64, cases: Option<usize>) -> SuiteResult {
    let cases = cases.unwrap_or(suite.default_cases());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut failed = 0;
    for i in 0..cases {
        let outcome = match suite {
            Suite::Cone => cone_case(&mut rng),
            Suite::Octahedral => octahedral_case(&mut rng),
            Suite::Snf => snf_case(&mut rng),
            Suite::Staircase => staircase_case(&mut rng),
            Suite::Counting => counting_case(&mut rng, i),
            Suite::All => unreachable!("expanded by run"),
        };
        if let Err(msg) = outcome {
            failed += 1;
            if failures.len() < 5 {
                failures.push(format!("case {i}: {msg}"));
            }
        }
    }
    SuiteResult {
        suite,
        seed,
        cases,
        failures,
        failed,
    }
}

pub fn cone_case<R: Rng>(rng: &mut R) -> Check {
    let f = gen::graded_map(rng, 12);
    let r = cone(&f, Ring::Rational).map_err(|e| e.to_string())?;
    let expected = oracle::cone_homology(f.matrix());
    ensure(r.dim_homology == expected, || {
        format!("cone dim {} but oracle {expected}", r.dim_homology)
    })?;
    ensure(r.rank == oracle::rank(f.matrix()), || "rank differs from oracle".into())?;
    ensure(r.is_consistent(), || format!("inconsistent report {r:?}"))
}

pub fn octahedral_case<R: Rng>(rng: &mut R) -> Check {
    let (f, g) = gen::composable_pair(rng, 10);
    let r = octahedral_verify(&f, &g).map_err(|e| e.to_string())?;
    ensure(r.chain_maps_commute, || "induced maps are not chain maps".into())?;
    ensure(r.exact, || format!("not exact: {:?}", r.vertices))?;
    let gf = g.matrix().mul(f.matrix());
    let expected = [
        oracle::cone_homology(f.matrix()),
        oracle::cone_homology(&gf),
        oracle::cone_homology(g.matrix()),
    ];
    ensure(r.cone_dims == expected, || {
        format!("cone dims {:?} vs oracle {expected:?}", r.cone_dims)
    })?;
    // a finite exact sequence has vanishing alternating dimension sum
    let alt: i64 = r
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v.dim as i64 } else { -(v.dim as i64) })
        .sum();
    ensure(alt == 0, || format!("alternating sum {alt}"))?;
    let [a, b, c] = r.cone_dims.map(|d| d as u64);
    ensure(triangle_dims_consistent(a, b, c), || {
        format!("dims {a} {b} {c} cannot form a triangle")
    })
}

pub fn snf_case<R: Rng>(rng: &mut R) -> Check {
    let (rows, cols) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let m = gen::zmatrix(rng, rows, cols);
    let s = smith_normal_form(&m);
    ensure(s.u.mul(&m).mul(&s.v) == s.diagonal(rows, cols), || {
        format!("U M V != D for {m:?}")
    })?;
    for (name, w) in [("U", &s.u), ("V", &s.v)] {
        let d = oracle::det(w);
        ensure(d == BigInt::one() || d == -BigInt::one(), || {
            format!("det {name} = {d}")
        })?;
    }
    let nonzero: Vec<BigInt> = s.divisors.iter().filter(|d| !d.is_zero()).cloned().collect();
    ensure(
        nonzero.len() == s.rank() && s.divisors[..s.rank()] == nonzero[..],
        || "zeros not trailing".into(),
    )?;
    ensure(nonzero.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || {
        format!("divisibility fails: {nonzero:?}")
    })?;
    let by_minors = oracle::divisors_by_minors(&m);
    ensure(nonzero == by_minors, || {
        format!("divisors {nonzero:?} vs minors {by_minors:?}")
    })?;
    let p = gen::unimodular(rng, rows);
    let q = gen::unimodular(rng, cols);
    let t = smith_normal_form(&p.mul(&m).mul(&q));
    ensure(t.divisors == s.divisors, || {
        "divisors change under unimodular multiplication".into()
    })
}

pub fn staircase_case<R: Rng>(rng: &mut R) -> Check {
    let k = rng.gen_range(0..=10);
    let spec = gen::staircase_spec(rng, k, 3);
    staircase_checks(&spec, rng, 5)
}

/// Everything the staircase and model layers promise about one spec, with
/// `scalar_pairs` random `(c+, c-)` checks of scalar invariance.
pub fn staircase_checks<R: Rng>(spec: &StaircaseSpec, rng: &mut R, scalar_pairs: usize) -> Check {
    let err = |e: crate::Error| format!("{spec:?}: {e}");
    let back = lspace_decompose(&spec.alexander()).map_err(err)?;
    ensure(&back == spec, || format!("round trip gave {back:?} for {spec:?}"))?;
    let s = build_staircase(spec);
    s.check_invariants().map_err(err)?;

    let one = BigRational::one();
    let f = d1_combination(&s, &one, &one).map_err(err)?;
    ensure(f.matrix() == &oracle::staircase_matrix(spec), || {
        format!("{spec:?}: matrix differs from oracle")
    })?;
    let rank = rank_q(f.matrix());
    let by_runs = oracle::staircase_rank_by_runs(spec);
    ensure(rank == by_runs && rank == oracle::rank(f.matrix()), || {
        format!("{spec:?}: rank {rank}, by runs {by_runs}")
    })?;
    for _ in 0..scalar_pairs {
        let (cp, cm) = (gen::nonzero_rational(rng), gen::nonzero_rational(rng));
        let r = rank_q(d1_combination(&s, &cp, &cm).map_err(err)?.matrix());
        ensure(r == rank, || format!("{spec:?}: rank {r} at c+ = {cp}, c- = {cm}"))?;
    }

    let (plus, minus) = extract_d1(&s);
    let cert = certify_torsion(&s.module(), &plus, &minus).map_err(err)?;
    let has_unit_step = spec.lengths().contains(&1);
    ensure(cert.verify(), || format!("{spec:?}: certificate does not verify"))?;
    ensure((cert.verdict == TorsionVerdict::TorsionProved) == has_unit_step, || {
        format!("{spec:?}: verdict {:?}", cert.verdict)
    })?;
    ensure(cert.dim_isharp_c == (2 * s.dim() - 2 * rank) as i64, || {
        format!("{spec:?}: dim I# mismatch")
    })?;

    let model = HFStaircase::new(spec);
    let sharp = hfk_sharp(&model).map_err(err)?;
    ensure(sharp.torsion_summands == vec![BigInt::from(2); rank], || {
        format!("{spec:?}: torsion {:?} with rank {rank}", sharp.torsion_summands)
    })?;
    let via_u = hfk_sharp_via_u_action(&model).map_err(err)?;
    ensure(via_u == (sharp.dim_homology, sharp.torsion_summands.clone()), || {
        format!("{spec:?}: U-action route gives {via_u:?}")
    })?;
    ensure(f2_doubling_check(&model), || format!("{spec:?}: F2 doubling fails"))?;
    let q = hfk_prime2(&model, Ring::Rational).map_err(err)?;
    let f2 = hfk_prime2(&model, Ring::F2).map_err(err)?;
    ensure(q.dim_homology == f2.dim_homology, || {
        format!("{spec:?}: rank over Q and F2 differ")
    })?;
    ensure(f2.rank == rank_f2(&f.matrix().to_integer().map_err(err)?), || {
        format!("{spec:?}: F2 rank")
    })?;
    let check = instanton_model_agreement(spec).map_err(err)?;
    ensure(check.agree(), || format!("{spec:?}: instanton and model cones differ"))
}

pub fn counting_case<R: Rng>(rng: &mut R, i: usize) -> Check {
    let mode = if i.is_multiple_of(2) {
        SamplerMode::Annihilator
    } else {
        SamplerMode::Paired
    };
    let inst = sample_counting_instance(rng, mode);
    ensure(inst.in_annihilator_span, || {
        format!("{mode:?}: delta outside the annihilator")
    })?;
    let r = counting_lemma_check(&inst.module, &inst.delta, &inst.delta_lambda, inst.g).map_err(|e| e.to_string())?;
    ensure(r.image_in_kernel, || {
        format!(
            "rank δ_λ|A = {} > dim ker δ|A = {}",
            r.rank_delta_lambda_a, r.dim_ker_delta_a
        )
    })?;
    ensure(mode == SamplerMode::Annihilator || r.hypotheses_hold(), || {
        "paired sample breaks rank equality".into()
    })?;
    if r.hypotheses_hold() {
        ensure(r.half_bound, || {
            format!("dim ker {} below half of {}", r.dim_ker_delta_a, r.dim_a)
        })?;
        ensure(r.cone_bound_holds, || {
            format!("cone dim {} < {}", r.cone_dim, r.cone_bound)
        })?;
        let profile = GradedDimProfile::of_module(&inst.module);
        let verdict = next_to_top_verdict(&profile, r.cone_dim).map_err(|e| e.to_string())?;
        ensure(verdict == NextToTopVerdict::CriterionNotMet, || {
            "verdict disagrees with the counting bound".into()
        })?;
    }
    Ok(())
}
