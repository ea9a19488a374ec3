//! Property tests over the public API, with the naive computations in
//! `isharp::selftest::oracle` as the reference.

use isharp::chain::{cone, rank_f2, rank_q, smith_normal_form, GradedMap, QMatrix, Ring, ZMatrix};
use isharp::hf_model::{hfk_prime2, hfk_sharp, HFStaircase};
use isharp::laurent::{lspace_decompose, normalize_symmetric, torus_knot_alexander, LaurentPoly, StaircaseSpec};
use isharp::selftest::{self, gen, oracle};
use isharp::staircase::{build_staircase, extract_d1, Staircase};
use isharp::torsion::{certify_torsion, TorsionCertificate};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-8i64..=8, -20i64..=20), 0..8)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn spec() -> impl Strategy<Value = StaircaseSpec> {
    prop::collection::vec(1i64..=4, 0..=10).prop_map(|steps| {
        let mut n = vec![0];
        for s in steps {
            n.push(n.last().unwrap() + s);
        }
        StaircaseSpec::new(n).unwrap()
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=5).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn qmatrix(max: usize) -> impl Strategy<Value = QMatrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop_oneof![3 => Just(BigRational::from_integer(0.into())), 2 => rational()],
            r * c,
        )
        .prop_map(move |v| QMatrix::from_fn(r, c, |i, j| v[i * c + j].clone()))
    })
}

fn zmatrix(max: usize) -> impl Strategy<Value = ZMatrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| ZMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomial_display_parses_back(p in poly()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<LaurentPoly>().unwrap(), p);
    }

    #[test]
    fn polynomial_json_round_trip(p in poly()) {
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn normalization_is_idempotent_and_shift_invariant(s in spec(), shift in -5i64..=5, neg in any::<bool>()) {
        let delta = s.alexander();
        let mut moved = delta.shift(shift);
        if neg {
            moved = -&moved;
        }
        let n = normalize_symmetric(&moved).unwrap();
        prop_assert_eq!(&n, &delta);
        prop_assert_eq!(normalize_symmetric(&n).unwrap(), n);
    }

    #[test]
    fn staircase_spec_round_trip(s in spec()) {
        let delta = s.alexander();
        prop_assert!(delta.is_symmetric());
        prop_assert_eq!(delta.eval_at_one(), BigInt::one());
        prop_assert_eq!(lspace_decompose(&delta).unwrap(), s);
    }

    #[test]
    fn staircase_json_round_trip(s in spec()) {
        let st = build_staircase(&s);
        let text = serde_json::to_string(&st).unwrap();
        let back: Staircase = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert!(back.check_invariants().is_ok());
    }

    #[test]
    fn staircase_layer_against_oracles(s in spec(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(selftest::staircase_checks(&s, &mut rng, 3), Ok(()));
    }

    #[test]
    fn certificate_json_and_verdict(s in spec()) {
        let st = build_staircase(&s);
        let (plus, minus) = extract_d1(&st);
        let cert = certify_torsion(&st.module(), &plus, &minus).unwrap();
        let back: TorsionCertificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert!(back.verify());
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn torsion_is_rank_copies_of_two(s in spec()) {
        let model = HFStaircase::new(&s);
        let rank = oracle::staircase_rank_by_runs(&s);
        let sharp = hfk_sharp(&model).unwrap();
        prop_assert_eq!(sharp.torsion_summands, vec![BigInt::from(2); rank]);
        let q = hfk_prime2(&model, Ring::Rational).unwrap();
        let f2 = hfk_prime2(&model, Ring::F2).unwrap();
        prop_assert_eq!(q.dim_homology, f2.dim_homology);
    }

    #[test]
    fn rank_matches_oracle(m in qmatrix(9)) {
        prop_assert_eq!(rank_q(&m), oracle::rank(&m));
        prop_assert_eq!(rank_q(&m.transpose()), oracle::rank(&m));
    }

    #[test]
    fn f2_rank_at_most_rational_rank(m in zmatrix(8)) {
        prop_assert!(rank_f2(&m) <= rank_q(&m.to_rational()));
        let doubled = m.scale(&BigInt::from(2));
        prop_assert_eq!(rank_f2(&doubled), 0);
    }

    #[test]
    fn cone_law(m in qmatrix(10)) {
        let (r, c) = m.shape();
        let f = GradedMap::mixed(
            isharp::chain::GradedModule::trivial(c),
            isharp::chain::GradedModule::trivial(r),
            m.clone(),
        ).unwrap();
        let rep = cone(&f, Ring::Rational).unwrap();
        prop_assert!(rep.is_consistent());
        prop_assert_eq!(rep.dim_homology, oracle::cone_homology(&m));
    }

    #[test]
    fn graded_map_json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = gen::graded_map(&mut rng, 6);
        let text = serde_json::to_string(&f).unwrap();
        let back: GradedMap = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        let rep = cone(&f, Ring::Rational).unwrap();
        let rep_text = serde_json::to_string(&rep).unwrap();
        prop_assert_eq!(serde_json::to_string(&serde_json::from_str::<isharp::chain::ConeReport>(&rep_text).unwrap()).unwrap(), rep_text);
    }

    #[test]
    fn snf_divisors_match_minors_and_survive_unimodular_change(m in zmatrix(4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = smith_normal_form(&m);
        let nonzero: Vec<BigInt> = s.divisors.iter().filter(|d| **d != BigInt::from(0)).cloned().collect();
        prop_assert_eq!(&nonzero, &oracle::divisors_by_minors(&m));
        let p = gen::unimodular(&mut rng, m.rows());
        let q = gen::unimodular(&mut rng, m.cols());
        prop_assert_eq!(smith_normal_form(&p.mul(&m).mul(&q)).divisors, s.divisors);
    }

    #[test]
    fn doubling_doubles_every_divisor(m in zmatrix(5)) {
        let s = smith_normal_form(&m);
        let t = smith_normal_form(&m.scale(&BigInt::from(2)));
        let doubled: Vec<BigInt> = s.divisors.iter().map(|d| d * 2).collect();
        prop_assert_eq!(t.divisors, doubled);
    }

    #[test]
    fn octahedral_and_counting_cases(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(selftest::octahedral_case(&mut rng), Ok(()));
        prop_assert_eq!(selftest::counting_case(&mut rng, (seed % 2) as usize), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn torus_polynomials(p in 2i64..=9, q in 2i64..=15) {
        prop_assume!(p.gcd(&q) == 1);
        let delta = torus_knot_alexander(p, q).unwrap();
        prop_assert!(delta.is_symmetric());
        prop_assert_eq!(delta.max_exp(), Some((p - 1) * (q - 1) / 2));
        let s = lspace_decompose(&delta).unwrap();
        prop_assert_eq!(s.genus(), (p - 1) * (q - 1) / 2);
        prop_assert_eq!(torus_knot_alexander(q, p).unwrap(), delta);
    }
}
