//! Integer factorization: trial division, then Brent's variant of Pollard rho.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::primes::{is_prime, small_primes, SIEVE_LIMIT};
use super::rational::serde_bigint;
use crate::error::{Error, Result};

/// Limits for [`factorize`]. Running out is an error, never a silent partial answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    pub trial_limit: u32,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: SIEVE_LIMIT,
            rho_iterations: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "serde_bigint")]
    pub prime: BigInt,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|f| &f.prime)
    }

    pub fn value(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for f in &self.factors {
            n *= f.prime.pow(f.exponent);
        }
        n
    }

    pub fn pairs(&self) -> Vec<(BigInt, u32)> {
        self.factors.iter().map(|f| (f.prime.clone(), f.exponent)).collect()
    }
}

/// Factorizes a nonzero integer within `budget`.
pub fn factorize(n: &BigInt, budget: &FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();

    let limit = budget.trial_limit.min(SIEVE_LIMIT);
    for &p in small_primes() {
        if p > limit {
            break;
        }
        if let Some(r) = rest.to_u64() {
            if (p as u64) * (p as u64) > r {
                break;
            }
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.push((BigUint::from(p), e));
        }
    }

    if !rest.is_one() {
        let trial_sq = BigUint::from(limit) * BigUint::from(limit);
        if rest < trial_sq {
            found.push((rest, 1));
        } else {
            let mut iterations = budget.rho_iterations;
            split_large(rest, 1, &mut iterations, &mut found)?;
        }
    }

    found.sort();
    let mut factors: Vec<PrimePower> = Vec::new();
    for (p, e) in found {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some(last) if last.prime == p => last.exponent += e,
            _ => factors.push(PrimePower { prime: p, exponent: e }),
        }
    }
    Ok(Factorization { sign, factors })
}

fn split_large(
    n: BigUint,
    mult: u32,
    iterations: &mut u64,
    out: &mut Vec<(BigUint, u32)>,
) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push((n, mult));
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        return split_large(r, mult * 2, iterations, out);
    }
    let d = brent_rho(&n, iterations).ok_or_else(|| Error::BudgetExceeded {
        cofactor: BigInt::from(n.clone()),
    })?;
    let other = &n / &d;
    split_large(d, mult, iterations, out)?;
    split_large(other, mult, iterations, out)
}

/// Nontrivial divisor of composite `n`, or `None` when the iteration budget runs out.
fn brent_rho(n: &BigUint, iterations: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    const BATCH: u64 = 128;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u8);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *iterations < steps {
                    return None;
                }
                *iterations -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                if iterations.is_zero() {
                    return None;
                }
                *iterations -= 1;
                ys = f(&ys);
                let diff = if ys > x { &ys - &x } else { &x - &ys };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n && !g.is_one() {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pp(p: i64, e: u32) -> PrimePower {
        PrimePower { prime: b(p), exponent: e }
    }

    #[test]
    fn examples() {
        let budget = FactorBudget::default();
        assert_eq!(factorize(&b(2047), &budget).unwrap().factors, vec![pp(23, 1), pp(89, 1)]);
        let f = factorize(&b(-12), &budget).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![pp(2, 2), pp(3, 1)]);
        let f = factorize(&b(15745024), &budget).unwrap();
        assert_eq!(f.factors, vec![pp(2, 14), pp(31, 2)]);
        assert!(factorize(&b(0), &budget).is_err());
        assert_eq!(factorize(&b(1), &budget).unwrap().factors, vec![]);
    }

    #[test]
    fn large_cofactors_use_rho() {
        let budget = FactorBudget { trial_limit: 1000, rho_iterations: 1_000_000 };
        let n = b(1_000_003) * b(998_244_353);
        let f = factorize(&n, &budget).unwrap();
        assert_eq!(f.factors, vec![pp(1_000_003, 1), pp(998_244_353, 1)]);
        let p = (BigInt::one() << 31u32) - 1;
        let f = factorize(&(&p * &p * 64), &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![pp(2, 6), PrimePower { prime: p, exponent: 2 }]);
        let m67 = (BigInt::one() << 67u32) - 1;
        let f = factorize(&m67, &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![pp(193_707_721, 1), pp(761_838_257_287, 1)]);
    }

    #[test]
    fn exhausted_budget_reports_cofactor() {
        let budget = FactorBudget { trial_limit: 100, rho_iterations: 10 };
        let n = b(1_000_003) * b(998_244_353);
        match factorize(&n, &budget) {
            Err(Error::BudgetExceeded { cofactor }) => assert_eq!(cofactor, n),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn reconstructs(n in prop_oneof![-1_000_000_000_000i64..-1, 1i64..1_000_000_000_000]) {
            let f = factorize(&b(n), &FactorBudget::default()).unwrap();
            prop_assert_eq!(f.value(), b(n));
            for w in f.factors.windows(2) {
                prop_assert!(w[0].prime < w[1].prime);
            }
            for p in f.primes() {
                prop_assert!(is_prime(p));
            }
        }
    }
}
