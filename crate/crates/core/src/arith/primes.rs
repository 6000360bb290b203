//! Primality: a small-prime sieve, deterministic Miller–Rabin below 3.3·10^24,
//! and Baillie–PSW above.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::residue::jacobi_big;

pub const SIEVE_LIMIT: u32 = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| primes_up_to(SIEVE_LIMIT));

/// Primes below or equal to the default sieve limit.
pub fn small_primes() -> &'static [u32] {
    &SMALL_PRIMES
}

pub fn primes_up_to(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
// Bases 2..41 are deterministic below this bound.
const MR_DETERMINISTIC_BOUND: &str = "3317044064679887385961981";

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u8), n);
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let ni = BigInt::from(n.clone());
    if is_perfect_square(n) {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        let j = jacobi_big(&BigInt::from(d), &ni);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d.abs()) != ni {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let p: i64 = 1;
    let q: i64 = (1 - d) / 4;
    let modn = |x: BigInt| -> BigInt { x.mod_floor(&ni) };
    let np1: BigInt = &ni + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let half = |x: BigInt| -> BigInt {
        let x = modn(x);
        if x.is_odd() {
            (x + &ni) >> 1
        } else {
            x >> 1
        }
    };
    let (mut u, mut v, mut qk) = (BigInt::one(), BigInt::from(p), modn(BigInt::from(q)));
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = modn(&u * &v);
        v = modn(&v * &v - 2 * &qk);
        qk = modn(&qk * &qk);
        if k.bit(i) {
            let nu = half(p * &u + &v);
            let nv = half(d * &u + p * &v);
            u = nu;
            v = nv;
            qk = modn(&qk * q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - 2 * &qk);
        if v.is_zero() {
            return true;
        }
        qk = modn(&qk * &qk);
    }
    false
}

fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Primality of an integer (negative numbers and 0, 1 are not prime).
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let m = n.magnitude();
    for &p in SMALL_PRIMES.iter().take(200) {
        if (m % p).is_zero() {
            return false;
        }
    }
    let bound: BigUint = MR_DETERMINISTIC_BOUND.parse().expect("constant");
    if m < &bound {
        return MR_BASES.iter().all(|&a| strong_probable_prime(m, &BigUint::from(a)));
    }
    strong_probable_prime(m, &BigUint::from(2u8)) && strong_lucas_probable_prime(m)
}

/// Independent probable-prime check with many random-looking bases; used to
/// re-test verdicts produced by other algorithms.
pub fn miller_rabin(n: &BigUint, rounds: usize) -> bool {
    if n < &BigUint::from(2u8) {
        return false;
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return n == &BigUint::from(p);
        }
    }
    let mut a = BigUint::from(2u8);
    let span = n - 3u8;
    for i in 0..rounds {
        // Deterministic pseudo-random bases spread over [2, n-2].
        let step = BigUint::from(0x9E37_79B9_7F4A_7C15u64 ^ (i as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9));
        a = (&a * &step + 7u8) % &span + 2u8;
        if !strong_probable_prime(n, &a) {
            return false;
        }
    }
    true
}
