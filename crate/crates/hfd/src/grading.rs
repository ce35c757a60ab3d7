//! Exact rational gradings, serialized as fraction strings like "-3/2".

use num_rational::Ratio;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// A rational grading. All arithmetic is exact; values are serialized as
/// fraction strings ("p" or "p/q"), never as floats.
pub type Grading = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse grading: {0}")]
pub struct GradingParseError(String);

pub fn parse_grading(s: &str) -> Result<Grading, GradingParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = i64::from_str(num).map_err(|_| GradingParseError(s.to_string()))?;
    let d = i64::from_str(den).map_err(|_| GradingParseError(s.to_string()))?;
    if d == 0 {
        return Err(GradingParseError(s.to_string()));
    }
    Ok(Ratio::new(n, d))
}

pub fn format_grading(g: &Grading) -> String {
    if g.is_integer() {
        format!("{}", g.numer())
    } else {
        format!("{}/{}", g.numer(), g.denom())
    }
}

/// Wrapper for gradings in JSON documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradingStr(pub Grading);

impl serde::Serialize for GradingStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_grading(&self.0))
    }
}

impl<'de> serde::Deserialize<'de> for GradingStr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_grading(&s)
            .map(GradingStr)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GradingStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_grading(&self.0))
    }
}

pub fn grading(n: i64) -> Grading {
    Ratio::from_integer(n)
}

pub fn half(n: i64) -> Grading {
    Ratio::new(n, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "-1", "3/2", "-7/2", "5"] {
            let g = parse_grading(s).unwrap();
            assert_eq!(format_grading(&g), s);
        }
        assert_eq!(parse_grading("4/2").unwrap(), grading(2));
        assert!(parse_grading("1/0").is_err());
        assert!(parse_grading("x").is_err());
    }
}
