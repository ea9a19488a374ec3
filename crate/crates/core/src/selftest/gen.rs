//! Seeded random inputs shared by the self-test suites and the test crates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::Rng;

use crate::chain::{GradedMap, GradedModule, QMatrix, ZMatrix};
use crate::laurent::StaircaseSpec;

/// Small rational, zero with probability `zero_prob`.
pub fn rational<R: Rng>(rng: &mut R, zero_prob: f64) -> BigRational {
    if rng.gen_bool(zero_prob) {
        return BigRational::from_integer(0.into());
    }
    nonzero_rational(rng)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new(num.into(), rng.gen_range(1..=7i64).into())
}

/// Random `rows x cols` rational matrix. Half the time it is built as a
/// product through a narrow middle so that rank deficiency is common.
pub fn qmatrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    let zero_prob = rng.gen_range(0.0..0.9);
    if rng.gen_bool(0.5) {
        let mid = rng.gen_range(0..=rows.min(cols));
        let a = QMatrix::from_fn(rows, mid, |_, _| rational(rng, zero_prob));
        let b = QMatrix::from_fn(mid, cols, |_, _| rational(rng, zero_prob));
        a.mul(&b)
    } else {
        QMatrix::from_fn(rows, cols, |_, _| rational(rng, zero_prob))
    }
}

/// Ungraded map between trivially graded spaces of dimension at most `max_dim`.
pub fn trivial_map<R: Rng>(rng: &mut R, max_dim: usize) -> GradedMap {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    let m = qmatrix(rng, rows, cols);
    GradedMap::mixed(GradedModule::trivial(cols), GradedModule::trivial(rows), m).expect("shapes match")
}

/// Random map with random gradings on both sides, dimensions at most `max_dim`.
pub fn graded_map<R: Rng>(rng: &mut R, max_dim: usize) -> GradedMap {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    let grade = |rng: &mut R, n| (0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>();
    let dom = GradedModule::new(grade(rng, cols));
    let cod = GradedModule::new(grade(rng, rows));
    GradedMap::mixed(dom, cod, qmatrix(rng, rows, cols)).expect("shapes match")
}

/// Composable `f: X -> Y`, `g: Y -> Z`.
pub fn composable_pair<R: Rng>(rng: &mut R, max_dim: usize) -> (GradedMap, GradedMap) {
    let (x, y, z) = (
        rng.gen_range(0..=max_dim),
        rng.gen_range(0..=max_dim),
        rng.gen_range(0..=max_dim),
    );
    let f = qmatrix(rng, y, x);
    let g = qmatrix(rng, z, y);
    let t = GradedModule::trivial;
    (
        GradedMap::mixed(t(x), t(y), f).expect("shapes match"),
        GradedMap::mixed(t(y), t(z), g).expect("shapes match"),
    )
}

pub fn zmatrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ZMatrix {
    let zero_prob = rng.gen_range(0.0..0.7);
    ZMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(zero_prob) {
            BigInt::from(0)
        } else {
            BigInt::from(rng.gen_range(-12..=12))
        }
    })
}

/// Unimodular integer matrix as a product of elementary operations.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> ZMatrix {
    let mut m = ZMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m[(0, 0)] = BigInt::from(-1);
        }
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..3) {
            0 => m.swap_rows(i, j),
            1 => {
                for c in 0..n {
                    m[(i, c)] = -&m[(i, c)];
                }
            }
            _ => {
                let k = BigInt::from(rng.gen_range(-3..=3));
                for c in 0..n {
                    let add = &k * &m[(j, c)];
                    m[(i, c)] += add;
                }
            }
        }
    }
    m
}

/// Staircase exponents with `k` steps, each step of length 1 to `max_step`.
pub fn staircase_spec<R: Rng>(rng: &mut R, k: usize, max_step: i64) -> StaircaseSpec {
    let mut n = vec![0];
    for _ in 0..k {
        let last = *n.last().expect("nonempty");
        n.push(last + rng.gen_range(1..=max_step));
    }
    StaircaseSpec::new(n).expect("strictly increasing from 0")
}

/// Every staircase with `k` steps whose lengths are 1 or 2, enumerated by bitmask.
pub fn unit_pattern_specs(k: usize) -> impl Iterator<Item = StaircaseSpec> {
    (0u32..1 << k).map(move |mask| {
        let mut n = vec![0];
        for j in 0..k {
            let step = if mask >> j & 1 == 1 { 1 } else { 2 };
            n.push(n[j] + step);
        }
        StaircaseSpec::new(n).expect("strictly increasing from 0")
    })
}

/// Coprime torus-knot parameters `2 ≤ p < q` with `pq ≤ max_pq`, ordered by `pq`.
pub fn torus_knots(max_pq: i64) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = (2..)
        .take_while(|p| p * (p + 1) <= max_pq)
        .flat_map(|p| {
            ((p + 1)..=max_pq / p)
                .filter(move |q| p.gcd(q) == 1)
                .map(move |q| (p, q))
        })
        .collect();
    out.sort_by_key(|&(p, q)| (p * q, p));
    out
}
