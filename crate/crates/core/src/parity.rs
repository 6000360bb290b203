//! Root numbers of semistable curves and the parity check.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::local::{Place, ReductionClass, ReductionData, ReductionProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: u64) -> Sign {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+1" | "1" => Ok(Sign::Plus),
            "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("bad sign {other:?}"))),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn local_root_number(rd: &ReductionData) -> Result<Sign> {
    sign_of_class(rd.class)
}

fn sign_of_class(class: ReductionClass) -> Result<Sign> {
    match class {
        ReductionClass::Good | ReductionClass::NonsplitMultiplicative => Ok(Sign::Plus),
        ReductionClass::SplitMultiplicative => Ok(Sign::Minus),
        ReductionClass::Additive => Err(Error::AdditiveUnsupported),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSign {
    pub place: Place,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNumberReport {
    pub local: Vec<LocalSign>,
    pub global: Sign,
    pub semistable: bool,
}

/// `w = -prod w_p` over the given places.
pub fn root_number_from_locals(local: Vec<LocalSign>) -> RootNumberReport {
    let global = -local.iter().fold(Sign::Plus, |acc, l| acc * l.sign);
    RootNumberReport { local, global, semistable: true }
}

pub fn global_root_number(profile: &ReductionProfile) -> Result<RootNumberReport> {
    if !profile.is_semistable() {
        return Err(Error::AdditiveUnsupported);
    }
    let local = profile
        .places
        .iter()
        .map(|rd| Ok(LocalSign { place: rd.place.clone(), sign: local_root_number(rd)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(root_number_from_locals(local))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Consistent,
    Inconsistent,
}

/// Compares `(-1)^rank` with `w`.
pub fn parity_consistency(rank: u64, w: Sign) -> Parity {
    if Sign::parity(rank) == w {
        Parity::Consistent
    } else {
        Parity::Inconsistent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FactorBudget;
    use crate::curve::{mersenne_fibre, WeierstrassModel};
    use crate::local::{reduction_profile, tate_reduce};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn prime(p: i64) -> Place {
        Place::Prime(BigInt::from(p))
    }

    #[test]
    fn local_signs() {
        let e5 = mersenne_fibre(5);
        let at2 = tate_reduce(&e5, &prime(2)).unwrap();
        let at31 = tate_reduce(&e5, &prime(31)).unwrap();
        let at3 = tate_reduce(&e5, &prime(3)).unwrap();
        assert_eq!(local_root_number(&at2), Ok(Sign::Minus));
        assert_eq!(local_root_number(&at31), Ok(Sign::Plus));
        assert_eq!(local_root_number(&at3), Ok(Sign::Plus));
        let c1 = WeierstrassModel::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(local_root_number(&tate_reduce(&c1, &prime(2)).unwrap()), Err(Error::AdditiveUnsupported));
    }

    #[test]
    fn global_signs() {
        let e5 = mersenne_fibre(5);
        let r = global_root_number(&reduction_profile(&e5, &FactorBudget::default()).unwrap()).unwrap();
        assert_eq!(r.global, Sign::Plus);
        let synthetic = vec![
            LocalSign { place: prime(2), sign: Sign::Minus },
            LocalSign { place: prime(3), sign: Sign::Minus },
        ];
        assert_eq!(root_number_from_locals(synthetic).global, Sign::Minus);
        assert_eq!(root_number_from_locals(Vec::new()).global, Sign::Minus);
        let c1 = WeierstrassModel::from_ints([0, 0, 0, -1, 0]).unwrap();
        let p = reduction_profile(&c1, &FactorBudget::default()).unwrap();
        assert_eq!(global_root_number(&p), Err(Error::AdditiveUnsupported));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_consistency(0, Sign::Plus), Parity::Consistent);
        assert_eq!(parity_consistency(1, Sign::Plus), Parity::Inconsistent);
        assert_eq!(serde_json::to_string(&Sign::Minus).unwrap(), "\"-1\"");
        assert_eq!("+1".parse::<Sign>().unwrap(), Sign::Plus);
    }

    proptest! {
        #[test]
        fn one_flip_flips_global(signs in proptest::collection::vec(any::<bool>(), 1..8), i in 0usize..8) {
            let to_local = |s: &[bool]| s.iter().enumerate()
                .map(|(k, &b)| LocalSign { place: prime(k as i64), sign: if b { Sign::Minus } else { Sign::Plus } })
                .collect::<Vec<_>>();
            let i = i % signs.len();
            let mut flipped = signs.clone();
            flipped[i] = !flipped[i];
            let w = root_number_from_locals(to_local(&signs)).global;
            let w2 = root_number_from_locals(to_local(&flipped)).global;
            prop_assert_eq!(w2, -w);
        }
    }
}
