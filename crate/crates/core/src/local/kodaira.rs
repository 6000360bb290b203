//! Kodaira symbols and reduction classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    /// `I_n`; `I_0` is good reduction.
    I(u32),
    /// `I_n^*`.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Euler number of the corresponding singular fibre.
    pub fn euler_number(self) -> u32 {
        match self {
            Kodaira::I(n) => n,
            Kodaira::IStar(n) => n + 6,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    pub fn is_good(self) -> bool {
        self == Kodaira::I(0)
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, Kodaira::I(n) if n > 0)
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, Kodaira::I(_))
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kodaira> {
        let fixed = match s {
            "II" => Some(Kodaira::II),
            "III" => Some(Kodaira::III),
            "IV" => Some(Kodaira::IV),
            "IV*" => Some(Kodaira::IVStar),
            "III*" => Some(Kodaira::IIIStar),
            "II*" => Some(Kodaira::IIStar),
            _ => None,
        };
        if let Some(k) = fixed {
            return Ok(k);
        }
        let bad = || Error::Parse(format!("bad Kodaira symbol {s:?}"));
        let rest = s.strip_prefix('I').ok_or_else(bad)?;
        match rest.strip_suffix('*') {
            Some(n) => Ok(Kodaira::IStar(n.parse().map_err(|_| bad())?)),
            None => Ok(Kodaira::I(rest.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionClass {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionClass {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, ReductionClass::SplitMultiplicative | ReductionClass::NonsplitMultiplicative)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitting {
    Split,
    Nonsplit,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_roundtrip() {
        for s in ["I0", "I2", "I13", "I0*", "I2*", "II", "III", "IV", "IV*", "III*", "II*"] {
            assert_eq!(s.parse::<Kodaira>().unwrap().to_string(), s);
        }
        assert!("I".parse::<Kodaira>().is_err());
        assert!("V".parse::<Kodaira>().is_err());
        assert_eq!(Kodaira::IStar(2).euler_number(), 8);
        assert_eq!(serde_json::to_string(&ReductionClass::SplitMultiplicative).unwrap(), "\"split-multiplicative\"");
    }
}
