//! JSON Lines helpers and serde adapters that keep big integers exact.
//!
//! Naturals are written as bare JSON numbers of arbitrary length, never as
//! floats or strings, so `n` in a report is the literal decimal expansion.

use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Serializes one value as a single line (no trailing newline).
pub fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types always serialize")
}

/// Writes `value` followed by `\n`.
pub fn write_line<W: Write, T: Serialize>(out: &mut W, value: &T) -> io::Result<()> {
    out.write_all(to_line(value).as_bytes())?;
    out.write_all(b"\n")
}

/// First 16 hex digits of the SHA-256 of `canonical`.
pub fn short_hash(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// `#[serde(with = "natural")]` for `BigUint` fields.
pub mod natural {
    use super::*;
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        let num = Number::from_str(&n.to_str_radix(10)).map_err(serde::ser::Error::custom)?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let num = Number::deserialize(d)?;
        BigUint::from_str(num.as_str()).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "natural_opt")]` for `Option<BigUint>` fields.
pub mod natural_opt {
    use super::*;
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => super::natural::serialize(n, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<Number>::deserialize(d)?
            .map(|num| BigUint::from_str(num.as_str()).map_err(D::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "super::natural")]
        n: BigUint,
        #[serde(with = "super::natural_opt")]
        m: Option<BigUint>,
    }

    #[test]
    fn big_numbers_stay_exact() {
        let n: BigUint = "36163554870725919123456789012345678901234567890"
            .parse()
            .unwrap();
        let w = Wrap { n, m: None };
        let line = super::to_line(&w);
        assert_eq!(
            line,
            r#"{"n":36163554870725919123456789012345678901234567890,"m":null}"#
        );
        let back: Wrap = serde_json::from_str(&line).unwrap();
        assert_eq!(back, w);
        let w2 = Wrap {
            n: 7u32.into(),
            m: Some(3u32.into()),
        };
        let back: Wrap = serde_json::from_str(&super::to_line(&w2)).unwrap();
        assert_eq!(back, w2);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(super::short_hash("abc"), "ba7816bf8f01cfea");
    }
}
