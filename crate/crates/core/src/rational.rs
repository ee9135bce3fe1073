//! Exact rational numbers and their `"p/q"` text form.

use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational used for every coordinate in the crate.
pub type Rational = Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Formats a rational as `"p/q"`, reduced, with a positive denominator.
/// Integers keep the `/1` so that every rational field has the same shape.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| err())?;
            let d: i128 = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => text.parse().map(int).map_err(|_| err()),
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a sequence of rationals as `["p/q", ...]`.
pub mod serde_vec {
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| super::parse(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: an optional rational, `null` when absent.
pub mod serde_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&super::format(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| super::parse(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_is_reduced_with_positive_denominator() {
        assert_eq!(format(&frac(2, -6)), "-1/3");
        assert_eq!(format(&int(1)), "1/1");
        assert_eq!(format(&frac(7, 3)), "7/3");
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse(" -3 ").unwrap(), int(-3));
        assert!(parse("1/0").is_err());
        assert!(parse("x/2").is_err());
    }
}
