//! Exact rational scalars.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((whole, fraction)) = text.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), fraction.len());
        let frac_part = BigInt::from_str(fraction).ok()?;
        let magnitude = whole.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Some(BigRational::new(num, scale));
    }
    BigInt::from_str(text).ok().map(BigRational::from_integer)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(value: &Scalar) -> String {
    value.to_string()
}

/// Serde adapters writing scalars as canonical strings.
pub mod serde_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{format, parse, Scalar};

    pub fn serialize<S: Serializer>(value: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).ok_or_else(|| D::Error::custom(format!("invalid rational `{raw}`")))
    }

    pub mod vec {
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        use super::super::{format, parse, Scalar};

        pub fn serialize<S: Serializer>(values: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|raw| {
                    parse(raw).ok_or_else(|| D::Error::custom(format!("invalid rational `{raw}`")))
                })
                .collect()
        }
    }

    pub mod matrix {
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        use super::super::{format, parse, Scalar};

        pub fn serialize<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                let row: Vec<String> = row.iter().map(format).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Scalar>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|raw| {
                            parse(raw)
                                .ok_or_else(|| D::Error::custom(format!("invalid rational `{raw}`")))
                        })
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse("-6/4"), Some(frac(-3, 2)));
        assert_eq!(parse(" 2/-4 "), Some(frac(-1, 2)));
        assert_eq!(parse("-0.25"), Some(frac(-1, 4)));
        assert_eq!(parse("1.5"), Some(frac(3, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
        assert_eq!(parse(""), None);
    }

    #[test]
    fn lowest_terms() {
        let v = frac(6, -9);
        assert_eq!(v.numer(), &BigInt::from(-2));
        assert_eq!(v.denom(), &BigInt::from(3));
        assert_eq!(format(&v), "-2/3");
        assert_eq!(format(&int(7)), "7");
    }
}
