//! Acceptance gate: runs every criterion, prints one line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use isharp::chain::{rank_q, triangle_dims_consistent};
use isharp::hf_model::{f2_doubling_check, hfk_sharp, instanton_model_agreement, HFStaircase};
use isharp::laurent::StaircaseSpec;
use isharp::report::{run, KnotInput, Options};
use isharp::selftest::{self, gen, oracle};
use isharp::staircase::{build_staircase, d1_combination};
use isharp::torsion::{counting_lemma_check, sample_counting_instance, Relation, SamplerMode, TorsionVerdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trefoil_end_to_end() -> Outcome {
    let start = Instant::now();
    let r = run(&KnotInput::Torus { p: 2, q: 3 }, &Options::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(r.dim_khi == 3, || format!("dim KHI {}", r.dim_khi))?;
    check(r.graded_khi_dims == BTreeMap::from([(1, 1), (0, 1), (-1, 1)]), || {
        format!("graded {:?}", r.graded_khi_dims)
    })?;
    check(r.rank == 1, || format!("rank {}", r.rank))?;
    check(r.dim_isharp == 4, || format!("dim I# {}", r.dim_isharp))?;
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("dim KHI 3 (1/1/1), rank 1, dim I# 4 in {elapsed:?}"))
}

fn trefoil_certificate() -> Outcome {
    let r = run(&KnotInput::Torus { p: 2, q: 3 }, &Options::default()).map_err(|e| e.to_string())?;
    let c = &r.torsion;
    check(c.verdict == TorsionVerdict::TorsionProved, || {
        format!("{:?}", c.verdict)
    })?;
    check(c.verify(), || "ledger does not recompute".into())?;
    check(
        c.ledger
            .iter()
            .any(|e| e.claim.contains("2·3 = 4 + 2·1") && e.lhs == 6 && e.rhs == 6),
        || "missing 2·3 = 4 + 2·1".into(),
    )?;
    check(
        c.ledger
            .iter()
            .any(|e| e.rel == Relation::Gt && e.lhs == 6 && e.rhs == 4),
        || "missing 6 > 4".into(),
    )?;
    check(c.f2_lower_bound == 6, || format!("F2 bound {}", c.f2_lower_bound))?;
    Ok("torsion_proved, 2·3 = 4 + 2·1, 6 > 4".into())
}

fn surgery_triangle() -> Outcome {
    for n in 1..=10u64 {
        check(triangle_dims_consistent(n, n + 1, 1), || {
            format!("rejected ({n}, {}, 1)", n + 1)
        })?;
    }
    check(!triangle_dims_consistent(0, 0, 1), || "accepted (0, 0, 1)".into())?;
    Ok("(n, n+1, 1) accepted for n = 1..10, (0, 0, 1) rejected".into())
}

fn two_strand_family() -> Outcome {
    let start = Instant::now();
    for j in 1..=20i64 {
        let r = run(&KnotInput::Torus { p: 2, q: 2 * j + 1 }, &Options::default()).map_err(|e| e.to_string())?;
        let brute = oracle::rank(&oracle::staircase_matrix(&r.exponents));
        let oracle_dim = 2 * r.dim_khi - 2 * brute;
        let want = (2 * j + 2) as usize;
        check(r.dim_isharp == want && oracle_dim == want, || {
            format!(
                "T(2,{}): dim {} oracle {oracle_dim}, expected {want}",
                2 * j + 1,
                r.dim_isharp
            )
        })?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("dim I#(T(2,2j+1)) = 2j + 2 for j = 1..20 in {elapsed:?}"))
}

fn scalar_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let one = BigRational::one();
    for _ in 0..20 {
        let k = rng.gen_range(0..=10);
        let spec = gen::staircase_spec(&mut rng, k, 3);
        let s = build_staircase(&spec);
        let base = rank_q(d1_combination(&s, &one, &one).map_err(|e| e.to_string())?.matrix());
        for _ in 0..100 {
            let (cp, cm) = (gen::nonzero_rational(&mut rng), gen::nonzero_rational(&mut rng));
            let r = rank_q(d1_combination(&s, &cp, &cm).map_err(|e| e.to_string())?.matrix());
            check(r == base, || {
                format!("{spec:?}: rank {r} at ({cp}, {cm}), {base} at (1, 1)")
            })?;
        }
    }
    Ok("20 specs x 100 scalar pairs, rank constant".into())
}

fn seeded_cases(
    n: usize,
    seed: u64,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), String>,
) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).try_for_each(|i| case(&mut rng).map_err(|e| format!("case {i}: {e}")))
}

fn cone_oracle() -> Outcome {
    seeded_cases(500, 6, selftest::cone_case)?;
    Ok("500 random maps agree with the explicit cone complex".into())
}

fn octahedral() -> Outcome {
    seeded_cases(200, 7, selftest::octahedral_case)?;
    Ok("200 composable pairs, exact at all 6 vertices".into())
}

fn integer_torsion_law() -> Outcome {
    let mut count = 0;
    for k in 0..=12 {
        for spec in gen::unit_pattern_specs(k) {
            let model = HFStaircase::new(&spec);
            let rank = rank_q(model.sum().matrix());
            let sharp = hfk_sharp(&model).map_err(|e| e.to_string())?;
            check(sharp.torsion_summands == vec![BigInt::from(2); rank], || {
                format!("{spec:?}: torsion {:?}, rank {rank}", sharp.torsion_summands)
            })?;
            check(f2_doubling_check(&model), || format!("{spec:?}: F2 doubling"))?;
            check(
                !sharp.torsion_summands.is_empty() == spec.lengths().contains(&1),
                || format!("{spec:?}: torsion present iff a unit step"),
            )?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} step patterns with k ≤ 12, torsion = rank copies of Z/2, F2 doubling holds"
    ))
}

fn counting_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut with_hypotheses = 0;
    for i in 0..300 {
        let inst = sample_counting_instance(&mut rng, SamplerMode::Annihilator);
        let r = counting_lemma_check(&inst.module, &inst.delta, &inst.delta_lambda, inst.g)
            .map_err(|e| format!("sample {i}: {e}"))?;
        check(r.image_in_kernel, || format!("sample {i}: {r:?}"))?;
        if r.hypotheses_hold() {
            with_hypotheses += 1;
            check(r.cone_bound_holds, || format!("sample {i}: cone bound fails {r:?}"))?;
        }
    }
    Ok(format!(
        "300 samples, kernel bound everywhere, cone bound on the {with_hypotheses} meeting all hypotheses"
    ))
}

fn model_check() -> Outcome {
    let knots = gen::torus_knots(100);
    for &(p, q) in &knots {
        let r = run(&KnotInput::Torus { p, q }, &Options::default()).map_err(|e| e.to_string())?;
        let spec: &StaircaseSpec = &r.exponents;
        let m = instanton_model_agreement(spec).map_err(|e| e.to_string())?;
        check(m.agree() && m.instanton.dim_homology == r.dim_isharp, || {
            format!("T({p},{q}) disagrees")
        })?;
    }
    Ok(format!("{} torus knots with pq ≤ 100 agree", knots.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("trefoil end-to-end", trefoil_end_to_end),
        ("trefoil torsion certificate", trefoil_certificate),
        ("surgery-triangle arithmetic", surgery_triangle),
        ("T(2,2j+1) family", two_strand_family),
        ("scalar invariance", scalar_invariance),
        ("cone oracle equivalence", cone_oracle),
        ("octahedral exactness", octahedral),
        ("integer torsion law", integer_torsion_law),
        ("counting-lemma suite", counting_suite),
        ("model cone agreement", model_check),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
