//! JSON helpers shared by the wire formats.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary-precision integer written as a JSON number when it fits in
/// 64 bits and as a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse::<BigInt>().map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt(v.clone())
    }
}

pub fn wrap(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(JsonInt::from).collect()
}

pub fn unwrap(v: Vec<JsonInt>) -> Vec<BigInt> {
    v.into_iter().map(|j| j.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_as_number_large_as_string() {
        let small = serde_json::to_string(&JsonInt(BigInt::from(-7))).unwrap();
        assert_eq!(small, "-7");
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, big);
        let n: JsonInt = serde_json::from_str("42").unwrap();
        assert_eq!(n.0, BigInt::from(42));
    }
}
