//! Integer Laurent polynomials in one variable `t`, torus knot Alexander
//! polynomials, and the staircase decomposition of L-space-form polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_terms([(e, c.into())])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiplies by `t^s`.
    pub fn shift(&self, s: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    /// `p(t^-1)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True when `p(t) = p(t^-1)`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// Exact division. Fails if `divisor` does not divide `self` over the integers.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let dlow = divisor.min_exp()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nlow = self.min_exp()?;
        let num = dense(self, nlow);
        let den = dense(divisor, dlow);
        let lead = den.last()?.clone();
        if num.len() < den.len() {
            return None;
        }
        let mut rem = num;
        let qlen = rem.len() - den.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter().enumerate().map(|(i, c)| (i as i64 + nlow - dlow, c)),
        ))
    }

    /// Descending `[exponent, coefficient]` pairs.
    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.coeffs.iter().rev().map(|(e, c)| (*e, c.clone())).collect()
    }
}

fn dense(p: &LaurentPoly, low: i64) -> Vec<BigInt> {
    let high = p.max_exp().unwrap_or(low);
    let mut v = vec![BigInt::zero(); (high - low + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - low) as usize] = c.clone();
    }
    v
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical descending form, e.g. `t^3 - t^2 + 1 - t^-2 + t^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str("t")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses signed monomial sums such as `t^3 - t^2 + 1 - t^-2 + t^-3`.
    /// Whitespace is ignored, `^` may be omitted for exponent 1, coefficients
    /// may be written `3t^2` or `3*t^2`, and like terms are combined.
    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(s: &str) -> Self {
        Self {
            chars: s.chars().collect(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek()? {
            '+' => {
                self.pos += 1;
                Some(false)
            }
            '-' | '\u{2212}' => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let col = self.column();
        let neg = self.sign().unwrap_or(false);
        let mag = self
            .digits()
            .ok_or_else(|| Error::parse(col, "expected exponent digits"))?;
        let value = if neg { -mag } else { mag };
        let e = i64::try_from(value).map_err(|_| Error::parse(col, "exponent out of range"))?;
        if paren {
            if self.peek() != Some(')') {
                return Err(Error::parse(self.column(), "expected ')'"));
            }
            self.pos += 1;
        }
        Ok(e)
    }

    fn term(&mut self, negative: bool) -> Result<(i64, BigInt)> {
        self.skip_ws();
        let col = self.column();
        let coeff = self.digits();
        let mut exp = 0;
        let mut has_t = false;
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            if self.peek() != Some('t') {
                return Err(Error::parse(self.column(), "expected 't' after '*'"));
            }
        }
        if self.peek() == Some('t') {
            self.pos += 1;
            has_t = true;
            exp = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                exp = self.exponent()?;
            }
        }
        if coeff.is_none() && !has_t {
            return Err(Error::parse(col, "expected a coefficient or 't'"));
        }
        let c = coeff.unwrap_or_else(BigInt::one);
        Ok((exp, if negative { -c } else { c }))
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        if self.peek().is_none() {
            return Err(Error::parse(1, "empty polynomial"));
        }
        let mut poly = LaurentPoly::zero();
        let neg = self.sign().unwrap_or(false);
        let (e, c) = self.term(neg)?;
        poly.add_term(e, c);
        while self.peek().is_some() {
            let col = self.column();
            let neg = self
                .sign()
                .ok_or_else(|| Error::parse(col, "expected '+' or '-' between terms"))?;
            let (e, c) = self.term(neg)?;
            poly.add_term(e, c);
        }
        Ok(poly)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::num_json::pairs::serialize(&self.to_pairs(), s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_terms(crate::num_json::pairs::deserialize(d)?))
    }
}

/// Returns the unique `±t^s · p` with `Δ(t) = Δ(t^-1)` and `Δ(1) = 1`.
pub fn normalize_symmetric(p: &LaurentPoly) -> Result<LaurentPoly> {
    let (lo, hi) = match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::ZeroPolynomial),
    };
    if (lo + hi) % 2 != 0 {
        return Err(Error::NotSymmetrizable(format!(
            "exponent span [{lo}, {hi}] has no integer center"
        )));
    }
    let centered = p.shift(-(lo + hi) / 2);
    if !centered.is_symmetric() {
        return Err(Error::NotSymmetrizable(format!(
            "coefficients of {centered} are not palindromic"
        )));
    }
    let value = centered.eval_at_one();
    if value.is_one() {
        Ok(centered)
    } else if (-&value).is_one() {
        Ok(-&centered)
    } else {
        Err(Error::EvalNotUnit {
            value: value.to_string(),
        })
    }
}

/// Symmetrized Alexander polynomial of the torus knot `T(p, q)`,
/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` recentered at 0.
pub fn torus_knot_alexander(p: i64, q: i64) -> Result<LaurentPoly> {
    if p < 2 || q < 2 {
        return Err(Error::BadParameter(format!(
            "torus knot parameters must be >= 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let pq = p
        .checked_mul(q)
        .ok_or_else(|| Error::BadParameter("p*q overflows".into()))?;
    let t_minus_one = |e: i64| &LaurentPoly::monomial(1, e) - &LaurentPoly::one();
    let num = &t_minus_one(pq) * &t_minus_one(1);
    let den = &t_minus_one(p) * &t_minus_one(q);
    let quotient = num
        .div_exact(&den)
        .expect("cyclotomic quotient is exact for coprime p, q");
    normalize_symmetric(&quotient.shift(-(p - 1) * (q - 1) / 2))
}

/// The exponent data `0 = n_0 < n_1 < ... < n_k` of an L-space-form
/// Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct StaircaseSpec {
    exponents: Vec<i64>,
}

impl StaircaseSpec {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        match exponents.first() {
            None => return Err(Error::InvalidStaircase("exponent list is empty".into())),
            Some(&n0) if n0 != 0 => return Err(Error::InvalidStaircase(format!("first exponent must be 0, got {n0}"))),
            _ => {}
        }
        if let Some(w) = exponents.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidStaircase(format!(
                "exponents must strictly increase, got {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Self { exponents })
    }

    pub fn unknot() -> Self {
        Self { exponents: vec![0] }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Number of steps `k`; the staircase has `2k + 1` generators.
    pub fn k(&self) -> usize {
        self.exponents.len() - 1
    }

    /// Top Alexander grading `n_k`, the Seifert genus for knots in S^3.
    pub fn genus(&self) -> i64 {
        *self.exponents.last().expect("nonempty")
    }

    /// Step lengths `m_j = n_j - n_{j-1}` for `j = 1..=k`.
    pub fn lengths(&self) -> Vec<i64> {
        self.exponents.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Reassembles `Σ_j (-1)^{k-j} (t^{n_j} + t^{-n_j})` with the doubled
    /// constant term corrected.
    pub fn alexander(&self) -> LaurentPoly {
        let k = self.k();
        let mut p = LaurentPoly::zero();
        for (j, &n) in self.exponents.iter().enumerate() {
            let c = if (k - j).is_multiple_of(2) { 1 } else { -1 };
            p.add_term(n, BigInt::from(c));
            p.add_term(-n, BigInt::from(c));
        }
        let constant = if k.is_multiple_of(2) { 1 } else { -1 };
        p.add_term(0, BigInt::from(-constant));
        p
    }
}

impl TryFrom<Vec<i64>> for StaircaseSpec {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<StaircaseSpec> for Vec<i64> {
    fn from(s: StaircaseSpec) -> Self {
        s.exponents
    }
}

/// Reads off the staircase exponents of a polynomial of the form
/// `t^{n_k} - t^{n_{k-1}} + ... + (-1)^k + ... - t^{-n_{k-1}} + t^{-n_k}`.
pub fn lspace_decompose(delta: &LaurentPoly) -> Result<StaircaseSpec> {
    let terms: Vec<(i64, &BigInt)> = delta.terms().rev().collect();
    let fail = |e: i64, c: &BigInt, reason: &str| Error::NotLSpaceForm {
        exponent: e,
        coefficient: c.to_string(),
        reason: reason.to_string(),
    };
    if terms.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(&(e, c)) = terms.iter().find(|(_, c)| !c.abs().is_one()) {
        return Err(fail(e, c, "coefficient is not +1 or -1"));
    }
    if let Some(&(e, c)) = terms.iter().find(|(e, c)| delta.coeff(-e) != **c) {
        return Err(fail(
            e,
            c,
            "coefficient differs from its mirror at the negated exponent",
        ));
    }
    for (i, &(e, c)) in terms.iter().enumerate() {
        let expected = if i % 2 == 0 { 1 } else { -1 };
        if *c != BigInt::from(expected) {
            return Err(fail(
                e,
                c,
                "coefficients must alternate +1, -1, ... from the top exponent",
            ));
        }
    }
    // Symmetric with alternating signs and a +1 top term forces an odd number
    // of terms, so exponent 0 is present.
    let mut exponents: Vec<i64> = terms.iter().map(|(e, _)| *e).filter(|e| *e >= 0).collect();
    exponents.reverse();
    StaircaseSpec::new(exponents)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    // Independent route to the torus knot polynomial: with S the numerical
    // semigroup generated by p and q, t^δ Δ(t) = (1 - t) Σ_{s ∈ S} t^s.
    fn semigroup_alexander(p: i64, q: i64) -> LaurentPoly {
        let conductor = (p - 1) * (q - 1);
        let in_semigroup = |n: i64| (0..=n / p).any(|a| (n - a * p) % q == 0);
        let terms = (0..=conductor).map(|n| {
            let here = in_semigroup(n) as i64;
            let before = if n > 0 { in_semigroup(n - 1) as i64 } else { 0 };
            (n - conductor / 2, BigInt::from(here - before))
        });
        LaurentPoly::from_terms(terms)
    }

    #[test]
    fn parse_and_display() {
        let p = poly("t^3 - t^2 + 1 - t^-2 + t^-3");
        assert_eq!(p.to_string(), "t^3 - t^2 + 1 - t^-2 + t^-3");
        assert_eq!(poly("  -t+1-t ^ -1 ").to_string(), "-t + 1 - t^-1");
        assert_eq!(poly("3*t^2 + 2t - t^(-4)").to_string(), "3t^2 + 2t - t^-4");
        assert_eq!(poly("t - t").to_string(), "0");
        assert_eq!(poly("t^1 + t").coeff(1), BigInt::from(2));
    }

    #[test]
    fn parse_errors_carry_columns() {
        match "t + ".parse::<LaurentPoly>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match "t^x".parse::<LaurentPoly>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            "t t".parse::<LaurentPoly>(),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_symmetric(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
        assert!(matches!(
            normalize_symmetric(&poly("t^2 - t")),
            Err(Error::NotSymmetrizable(_))
        ));
        let n = normalize_symmetric(&poly("-t + 1 - t^-1")).unwrap();
        assert_eq!(n, poly("t - 1 + t^-1"));
        assert!(n.eval_at_one().is_one());
        assert_eq!(
            normalize_symmetric(&poly("t^5 - t^4 + t^3")).unwrap(),
            poly("t - 1 + t^-1")
        );
        assert!(matches!(
            normalize_symmetric(&poly("t + 1 + t^-1")),
            Err(Error::EvalNotUnit { .. })
        ));
        assert!(matches!(
            normalize_symmetric(&LaurentPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn torus_examples_match_semigroup_oracle() {
        assert_eq!(torus_knot_alexander(2, 3).unwrap(), semigroup_alexander(2, 3));
        assert_eq!(torus_knot_alexander(2, 3).unwrap(), poly("t - 1 + t^-1"));
        assert_eq!(torus_knot_alexander(3, 4).unwrap(), semigroup_alexander(3, 4));
        assert_eq!(torus_knot_alexander(3, 4).unwrap(), poly("t^3 - t^2 + 1 - t^-2 + t^-3"));
        assert!(matches!(torus_knot_alexander(2, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(torus_knot_alexander(1, 4), Err(Error::BadParameter(_))));
        for p in 2..12 {
            for q in 2..12 {
                if p.gcd(&q) == 1 {
                    assert_eq!(torus_knot_alexander(p, q).unwrap(), semigroup_alexander(p, q));
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(lspace_decompose(&poly("t - 1 + t^-1")).unwrap().exponents(), &[0, 1]);
        assert_eq!(lspace_decompose(&LaurentPoly::one()).unwrap().exponents(), &[0]);
        match lspace_decompose(&poly("-t + 3 - t^-1")) {
            Err(Error::NotLSpaceForm {
                exponent, coefficient, ..
            }) => {
                assert_eq!((exponent, coefficient.as_str()), (0, "3"));
            }
            other => panic!("{other:?}"),
        }
        assert!(lspace_decompose(&poly("t^2 - t + 1 - t^-1 + t^-2")).is_ok());
        assert!(lspace_decompose(&poly("t^2 - 1 + t^-1")).is_err());
        assert!(lspace_decompose(&poly("-t^2 + t + 1 + t^-1 - t^-2")).is_err());
    }

    #[test]
    fn torus_round_trip_through_staircase() {
        for p in 2..=60i64 {
            for q in 2..=60i64 {
                if p * q > 60 || p.gcd(&q) != 1 {
                    continue;
                }
                let delta = torus_knot_alexander(p, q).unwrap();
                let spec = lspace_decompose(&delta).unwrap();
                assert_eq!(spec.alexander(), delta, "T({p},{q})");
                assert!(spec.alexander().eval_at_one().is_one());
                assert_eq!(spec.genus(), (p - 1) * (q - 1) / 2);
            }
        }
    }

    #[test]
    fn staircase_spec_validation() {
        assert!(StaircaseSpec::new(vec![]).is_err());
        assert!(StaircaseSpec::new(vec![1, 2]).is_err());
        assert!(StaircaseSpec::new(vec![0, 2, 2]).is_err());
        let s = StaircaseSpec::new(vec![0, 2, 3]).unwrap();
        assert_eq!(s.lengths(), vec![2, 1]);
        assert_eq!(s.k(), 2);
        assert!(serde_json::from_str::<StaircaseSpec>("[0, 3, 1]").is_err());
    }

    #[test]
    fn json_pairs_descending() {
        let p = poly("t^3 - t^2 + 1 - t^-2 + t^-3");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, "[[3,1],[2,-1],[0,1],[-2,-1],[-3,1]]");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&j).unwrap(), p);
    }

    #[test]
    fn div_exact_rejects_non_divisors() {
        assert!(poly("t^2 + 1").div_exact(&poly("t - 1")).is_none());
        assert_eq!(poly("t^2 - 1").div_exact(&poly("t - 1")).unwrap(), poly("t + 1"));
        assert_eq!(poly("t - t^-1").div_exact(&poly("1 - t^-1")).unwrap(), poly("t + 1"));
    }
}
