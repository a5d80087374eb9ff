//! JSON encodings shared by the library and the CLI.
//!
//! Polynomials travel as `{"coeffs":[c0, c1, ...]}` with plain JSON integers
//! of any size (ascending powers of `t`).

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::polyring::IntPoly;

pub fn serialize_coeffs<S: Serializer>(p: &IntPoly, ser: S) -> Result<S::Ok, S::Error> {
    serialize_ints(p.coeffs(), ser)
}

/// A list of big integers as plain JSON numbers.
pub fn serialize_ints<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for c in v {
        let n = Number::from_str(&c.to_string()).expect("integers are valid JSON numbers");
        seq.serialize_element(&n)?;
    }
    seq.end()
}

pub fn deserialize_coeffs<'de, D: Deserializer<'de>>(de: D) -> Result<IntPoly, D::Error> {
    let raw = Vec::<Number>::deserialize(de)?;
    raw.iter()
        .map(|n| {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("coefficient {n} is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(IntPoly::new)
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    #[serde(serialize_with = "serialize_coeffs", deserialize_with = "deserialize_coeffs")]
    coeffs: IntPoly,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        PolyJson { coeffs: self.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        PolyJson::deserialize(de).map(|p| p.coeffs)
    }
}
