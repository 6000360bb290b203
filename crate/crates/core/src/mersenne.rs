//! Lucas–Lehmer testing of `2^q - 1` and the Lenstra–Pomerance–Wagstaff estimate.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::primes::{is_prime_u64, miller_rabin, primes_up_to};
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Rounds of the independent re-test applied to every "prime" verdict.
const RETEST_ROUNDS: usize = 8;

/// Composite verdicts up to this exponent are confirmed by an explicit factor.
const FACTOR_EXHIBIT_MAX: u32 = 29;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Prime,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneResult {
    pub q: u32,
    #[serde(with = "biguint_string")]
    pub mersenne: BigUint,
    pub verdict: Verdict,
    /// Running hash of the low 64 bits of every residue in the recurrence.
    pub checksum: u64,
    /// A proper factor, exhibited for small composite exponents.
    #[serde(with = "opt_biguint_string")]
    pub factor: Option<BigUint>,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod opt_biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn mersenne(q: u32) -> BigUint {
    (BigUint::one() << q) - 1u8
}

/// `n mod 2^q - 1` by folding the high bits onto the low ones.
fn fold(mut n: BigUint, q: u32, m: &BigUint) -> BigUint {
    while n.bits() > q as u64 {
        n = (&n & m) + (n >> q);
    }
    if &n == m {
        BigUint::zero()
    } else {
        n
    }
}

fn mix(checksum: u64, s: &BigUint) -> u64 {
    let low = s.iter_u64_digits().next().unwrap_or(0);
    checksum.rotate_left(5) ^ low.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Smallest factor of `2^q - 1` of the form `2kq + 1`.
fn exhibit_factor(q: u32, m: &BigUint) -> Option<BigUint> {
    let m = m.to_u64()?;
    let step = 2 * q as u64;
    let mut d = step + 1;
    while d * d <= m {
        if m % d == 0 {
            return Some(BigUint::from(d));
        }
        d += step;
    }
    None
}

pub fn lucas_lehmer(q: u32) -> Result<MersenneResult> {
    if !is_prime_u64(q as u64) {
        return Err(Error::CompositeExponent(q as u64));
    }
    let m = mersenne(q);
    let (verdict, checksum) = if q == 2 {
        (Verdict::Prime, 0)
    } else {
        let mut s = BigUint::from(4u8);
        let mut checksum = mix(0, &s);
        for _ in 0..q - 2 {
            let sq = fold(&s * &s, q, &m);
            s = if sq >= BigUint::from(2u8) { sq - 2u8 } else { sq + &m - 2u8 };
            checksum = mix(checksum, &s);
        }
        let v = if s.is_zero() { Verdict::Prime } else { Verdict::Composite };
        (v, checksum)
    };
    let factor = match verdict {
        Verdict::Prime => {
            if !miller_rabin(&m, RETEST_ROUNDS) {
                return Err(Error::AssertionFailed(format!("2^{q} - 1 failed the probable-prime re-test")));
            }
            None
        }
        Verdict::Composite if q <= FACTOR_EXHIBIT_MAX => {
            let f = exhibit_factor(q, &m)
                .ok_or_else(|| Error::AssertionFailed(format!("no factor found for composite 2^{q} - 1")))?;
            Some(f)
        }
        Verdict::Composite => None,
    };
    Ok(MersenneResult { q, mersenne: m, verdict, checksum, factor })
}

/// Prime `q <= limit` with `2^q - 1` prime, ascending.
pub fn mersenne_exponents(limit: u32) -> Result<Vec<u32>> {
    let results: Vec<MersenneResult> =
        primes_up_to(limit).into_par_iter().map(lucas_lehmer).collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().filter(|r| r.verdict == Verdict::Prime).map(|r| r.q).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LogBase {
    Natural,
    Two,
}

/// `(e^gamma / log 2) log log x` for `x = 2^log2_x`, with every log read in `base`.
pub fn wagstaff_estimate(log2_x: f64, base: LogBase) -> Result<f64> {
    let ln_x = log2_x * std::f64::consts::LN_2;
    if !(ln_x > 1.0) || !ln_x.is_finite() {
        return Err(Error::Domain(format!("estimate needs x > e, got x = 2^{log2_x}")));
    }
    let eg = EULER_GAMMA.exp();
    Ok(match base {
        LogBase::Natural => eg / std::f64::consts::LN_2 * ln_x.ln(),
        LogBase::Two => eg * log2_x.log2(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateComparison {
    pub log2_x: f64,
    pub actual: usize,
    pub natural: f64,
    pub base_two: f64,
}

pub fn compare_estimate(limit: u32) -> Result<EstimateComparison> {
    let actual = mersenne_exponents(limit)?.len();
    Ok(EstimateComparison {
        log2_x: limit as f64,
        actual,
        natural: wagstaff_estimate(limit as f64, LogBase::Natural)?,
        base_two: wagstaff_estimate(limit as f64, LogBase::Two)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn generic(q: u32) -> bool {
        let m = mersenne(q);
        let mut s = BigUint::from(4u8);
        for _ in 0..q - 2 {
            s = (&s * &s + &m - 2u8) % &m;
        }
        s.is_zero()
    }

    #[test]
    fn examples() {
        assert_eq!(lucas_lehmer(7).unwrap().verdict, Verdict::Prime);
        let r = lucas_lehmer(11).unwrap();
        assert_eq!(r.verdict, Verdict::Composite);
        assert_eq!(r.factor, Some(BigUint::from(23u8)));
        assert_eq!(lucas_lehmer(2).unwrap().verdict, Verdict::Prime);
        assert_eq!(lucas_lehmer(9), Err(Error::CompositeExponent(9)));
    }

    #[test]
    fn sweeps() {
        assert_eq!(mersenne_exponents(130).unwrap(), vec![2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127]);
        assert_eq!(mersenne_exponents(4).unwrap(), vec![2, 3]);
        assert!(mersenne_exponents(1).unwrap().is_empty());
    }

    #[test]
    fn estimates() {
        let e127 = wagstaff_estimate(127.0, LogBase::Natural).unwrap();
        assert!((e127 - 11.50).abs() < 0.01, "{e127}");
        let e2 = wagstaff_estimate(2.0 / std::f64::consts::LN_2, LogBase::Natural).unwrap();
        assert!((e2 - 1.781).abs() < 1e-3, "{e2}");
        assert!(wagstaff_estimate(1.0, LogBase::Natural).is_err());
        let nat = wagstaff_estimate(607.0, LogBase::Natural).unwrap();
        let two = wagstaff_estimate(607.0, LogBase::Two).unwrap();
        assert!((nat - 15.52).abs() < 0.01 && (two - 16.47).abs() < 0.01, "{nat} {two}");
    }

    #[test]
    fn folding_matches_generic() {
        for q in primes_up_to(200).into_iter().filter(|&q| q > 2) {
            assert_eq!(lucas_lehmer(q).unwrap().verdict == Verdict::Prime, generic(q), "q = {q}");
        }
    }

    proptest! {
        #[test]
        fn fold_is_reduction(q in 3u32..200, digits in proptest::collection::vec(any::<u32>(), 1..30)) {
            let m = mersenne(q);
            let n = BigUint::new(digits);
            prop_assert_eq!(fold(n.clone(), q, &m), n % &m);
        }

        #[test]
        fn prefix_property(a in 2u32..120, b in 2u32..120) {
            let (lo, hi) = (a.min(b), a.max(b));
            let small = mersenne_exponents(lo).unwrap();
            let big = mersenne_exponents(hi).unwrap();
            prop_assert_eq!(&big[..small.len()], &small[..]);
        }
    }
}
