//! JSON representation of exact rationals as `{"num": "...", "den": "..."}`.
//!
//! Big integers are serialized as decimal strings so arbitrary precision
//! survives any JSON parser.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: String,
    den: String,
}

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    RatRepr {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let repr = RatRepr::deserialize(d)?;
    let num = BigInt::from_str(&repr.num).map_err(D::Error::custom)?;
    let den = BigInt::from_str(&repr.den).map_err(D::Error::custom)?;
    if den == BigInt::from(0) {
        return Err(D::Error::custom("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Same encoding for `Vec<BigRational>` fields.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<RatRepr> = v
            .iter()
            .map(|r| RatRepr {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            })
            .collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let reprs = Vec::<RatRepr>::deserialize(d)?;
        reprs
            .into_iter()
            .map(|repr| {
                let num = BigInt::from_str(&repr.num).map_err(D::Error::custom)?;
                let den = BigInt::from_str(&repr.den).map_err(D::Error::custom)?;
                if den == BigInt::from(0) {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(num, den))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap(#[serde(with = "super")] BigRational);

    #[test]
    fn round_trip() {
        let w = Wrap(BigRational::new((-7).into(), 12.into()));
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"num":"-7","den":"12"}"#);
        let back: Wrap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
