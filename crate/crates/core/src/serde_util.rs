//! Exact rationals on the wire are `"p/q"` strings (integers as `"p"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serializer};

use crate::scalar::parse_rational;
use crate::QVector;

pub fn q_to_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn vec_to_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(q_to_string).collect()
}

/// Accepts either a JSON string `"p/q"` or a JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalToken {
    Text(String),
    Int(i64),
}

impl RationalToken {
    fn into_rational<E: serde::de::Error>(self) -> Result<BigRational, E> {
        match self {
            RationalToken::Int(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            RationalToken::Text(s) => {
                parse_rational(&s).ok_or_else(|| E::custom(format!("invalid rational '{s}'")))
            }
        }
    }
}

pub mod q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RationalToken::deserialize(d)?.into_rational()
    }
}

pub mod qvec {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        vec_to_strings(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QVector, D::Error> {
        Vec::<RationalToken>::deserialize(d)?
            .into_iter()
            .map(|t| t.into_rational())
            .collect()
    }
}

pub mod qvecs {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[QVector], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v.iter().map(|x| vec_to_strings(x)).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<QVector>, D::Error> {
        let raw = Vec::<Vec<RationalToken>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| row.into_iter().map(|t| t.into_rational()).collect())
            .collect()
    }
}

/// Parses a comma-separated list of rationals, e.g. `"1,-1/2,0"`.
pub fn parse_vector(s: &str) -> Option<QVector> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}
