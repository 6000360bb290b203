//! Quadratic-residue machinery modulo integers and primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi_big(a: &BigInt, n: &BigInt) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        if z > 0 {
            a >>= z;
            let r = (&n % 8u8).to_u32_digits().1.first().copied().unwrap_or(0);
            if z % 2 == 1 && (r == 3 || r == 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u8) == BigInt::from(3) && (&n % 4u8) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/n).
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> Result<i8> {
    if n.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let mut result = 1i8;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let z = n.trailing_zeros().unwrap_or(0);
    if z > 0 {
        if a.is_even() {
            return Ok(0);
        }
        let r = a.mod_floor(&BigInt::from(8));
        if z % 2 == 1 && (r == BigInt::from(3) || r == BigInt::from(5)) {
            result = -result;
        }
        n >>= z;
    }
    if n.is_one() {
        return Ok(result);
    }
    Ok(result * jacobi_big(a, &n))
}

/// Smallest nonnegative square root of `a` modulo an odd prime `p`, if any.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Result<Option<BigInt>> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(tonelli_shanks(a, p))
}

/// Tonelli–Shanks without the primality check.
pub fn tonelli_shanks(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if jacobi_big(&a, p) != 1 {
        return None;
    }
    let pm1: BigInt = p - 1;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigInt::from(2);
    while jacobi_big(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    let other = p - &r;
    Some(if other < r { other } else { r })
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
