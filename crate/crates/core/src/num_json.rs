//! Serde helpers for arbitrary-precision integers.
//!
//! Values that fit in an `i64` are written as JSON numbers; larger ones fall
//! back to decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Repr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => Repr::Small(x),
            None => Repr::Big(v.to_string()),
        }
    }
}

impl Repr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            Repr::Small(x) => Ok(BigInt::from(x)),
            Repr::Big(s) => s.trim().parse().map_err(E::custom),
        }
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(Repr::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(Repr::into_bigint)
            .collect()
    }
}

/// `[[i64, BigInt], ...]` association lists.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(i64, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|(e, c)| (*e, Repr::from(c)))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(i64, BigInt)>, D::Error> {
        Vec::<(i64, Repr)>::deserialize(d)?
            .into_iter()
            .map(|(e, c)| c.into_bigint().map(|c| (e, c)))
            .collect()
    }
}
