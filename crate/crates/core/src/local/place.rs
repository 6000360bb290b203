//! Places of Q and of Q(t).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, FactorBudget, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// A rational prime.
    Prime(BigInt),
    /// A monic irreducible polynomial in `t`.
    Poly(Poly),
    /// The place `t = infinity`.
    Infinity,
}

impl Place {
    pub fn prime(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if !p.is_positive() || !is_prime(&p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Place::Prime(p))
    }

    /// A finite place of Q(t). Irreducibility is verified up to degree 3.
    pub fn poly(f: Poly) -> Result<Place> {
        let deg = f.degree().unwrap_or(0);
        if deg == 0 || !f.is_monic() {
            return Err(Error::UnsupportedPlace(format!("{f} is not a monic nonconstant polynomial")));
        }
        if deg > 3 {
            return Err(Error::UnsupportedPlace(format!("irreducibility of {f} (degree {deg})")));
        }
        if deg > 1 && !f.rational_roots(&FactorBudget::default())?.is_empty() {
            return Err(Error::UnsupportedPlace(format!("{f} is reducible")));
        }
        Ok(Place::Poly(f))
    }

    /// Degree of the residue field over its prime field (1 at rational primes).
    pub fn degree(&self) -> u32 {
        match self {
            Place::Poly(f) => f.degree().unwrap_or(0) as u32,
            _ => 1,
        }
    }

    pub fn as_prime(&self) -> Option<&BigInt> {
        match self {
            Place::Prime(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Poly(g) => f.write_str(&g.fmt_in("t")),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        if s == "inf" {
            return Ok(Place::Infinity);
        }
        if let Ok(p) = s.parse::<BigInt>() {
            return Place::prime(p);
        }
        Place::poly(Poly::parse_in(s, "t")?)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(Place::prime(31).is_ok());
        assert_eq!(Place::prime(2047), Err(Error::NotPrime(2047.into())));
        assert!(Place::poly(Poly::from_ints(&[64, 0, 1])).is_ok());
        assert!(Place::poly(Poly::from_ints(&[-4, 0, 1])).is_err());
        assert!(Place::poly(Poly::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn text_roundtrip() {
        for s in ["2", "31", "t", "t - 1", "t^2 + 64", "inf"] {
            let p: Place = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(serde_json::from_str::<Place>(&json).unwrap(), p);
        }
    }
}
