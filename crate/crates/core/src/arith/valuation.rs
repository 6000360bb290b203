use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use super::Rational;
use crate::error::{Error, Result};

/// p-adic valuation with an explicit infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// `self >= k`, with infinity above everything.
    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// v_p(x) for a rational `x` and prime `p`.
pub fn val_p(x: &Rational, p: &BigInt) -> Result<Valuation> {
    if p.is_negative() || !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(rational_valuation(x, p))
}

/// Valuation without the primality check; `p` must be > 1.
pub fn rational_valuation(x: &Rational, p: &BigInt) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

/// Exponent of `p` in a nonzero integer. Returns 0 for `n = 0`; callers handle zero.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    if n.is_zero() {
        return 0;
    }
    if p == &BigInt::from(2u8) {
        return n.trailing_zeros().unwrap_or(0);
    }
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Splits `n = p^v * u` with `p ∤ u`; `n` must be nonzero.
pub fn split_power(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let v = int_valuation(n, p);
    (v, n / p.pow(v as u32))
}
