//! Local square classes and local solubility of quartics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::residue::jacobi_big;
use crate::arith::valuation::split_power;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Refinement depth beyond which the search is reported as a bug.
const DEPTH_CAP: u32 = 400;

/// A place of Q for square-class purposes: `None` is the real place.
pub type LocalPlace = Option<BigInt>;

/// Width in bits of the square-class group `Q_v^* / Q_v^{*2}`.
pub fn class_width(place: &LocalPlace) -> u32 {
    match place {
        None => 1,
        Some(p) if p == &BigInt::from(2) => 3,
        Some(_) => 2,
    }
}

/// Square class of a nonzero integer as a bit vector.
pub fn int_class(n: &BigInt, place: &LocalPlace) -> u128 {
    debug_assert!(!n.is_zero());
    match place {
        None => u128::from(n.is_negative()),
        Some(p) => {
            let (v, u) = split_power(n, p);
            let parity = (v & 1) as u128;
            if p == &BigInt::from(2) {
                let r = u.mod_floor(&BigInt::from(8));
                let code: u128 = match u32::try_from(&r).expect("small") {
                    1 => 0,
                    3 => 1,
                    5 => 2,
                    _ => 3,
                };
                parity | code << 1
            } else {
                let nonresidue = jacobi_big(&u, p) == -1;
                parity | u128::from(nonresidue) << 1
            }
        }
    }
}

/// Square class of a nonzero rational.
pub fn rational_class(x: &Rational, place: &LocalPlace) -> u128 {
    int_class(x.numer(), place) ^ int_class(x.denom(), place)
}

/// Whether a nonzero integer is a square in `Q_p`.
pub fn is_padic_square(n: &BigInt, p: &BigInt) -> bool {
    int_class(n, &Some(p.clone())) == 0
}

fn val(n: &BigInt, p: &BigInt) -> Option<u64> {
    if n.is_zero() {
        None
    } else {
        Some(split_power(n, p).0)
    }
}

/// Taylor coefficients of `g` (low degree first) at `x0`.
fn taylor(g: &[BigInt], x0: &BigInt) -> Vec<BigInt> {
    let mut c = g.to_vec();
    let n = c.len();
    // Repeated synthetic division by (x - x0).
    for j in 0..n {
        for i in (j..n - 1).rev() {
            let t = &c[i + 1] * x0;
            c[i] += t;
        }
    }
    c
}

/// Whether `g(x)` is a square in `Q_p` for some `x = x0 (mod p^k)` in `Z_p`.
fn zp_soluble(g: &[BigInt], x0: &BigInt, k: u32, p: &BigInt, depth: u32) -> Result<bool> {
    let t = taylor(g, x0);
    if t[0].is_zero() {
        return Ok(true);
    }
    let l = val(&t[0], p).expect("nonzero");
    let c = if p == &BigInt::from(2) { 3 } else { 1 };
    let spread = t
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(j, gj)| val(gj, p).map(|v| v + j as u64 * k as u64))
        .min();
    let spread_big = spread.is_none_or(|m| m >= l + c);
    if spread_big {
        return Ok(is_padic_square(&t[0], p));
    }
    if spread.is_some_and(|m| m > l) && l % 2 == 1 {
        return Ok(false);
    }
    if let Some(m) = val(&t[1], p) {
        if l > 2 * m && l - m >= k as u64 {
            return Ok(true);
        }
    }
    if depth > DEPTH_CAP {
        return Err(Error::LocalUndecided { prime: p.clone(), class: format!("{g:?} at {x0} mod p^{k}") });
    }
    let step = num_traits::pow(p.clone(), k as usize);
    let mut i = BigInt::zero();
    while &i < p {
        if zp_soluble(g, &(x0 + &i * &step), k + 1, p, depth + 1)? {
            return Ok(true);
        }
        i += 1;
    }
    Ok(false)
}

/// Whether `w^2 = g(u, v)` has a nontrivial solution over `Q_p`, `g` a binary
/// form of degree 4 given by its coefficients in `x = u/v`, low degree first.
pub fn quartic_soluble_qp(g: &[BigInt; 5], p: &BigInt) -> Result<bool> {
    if zp_soluble(g, &BigInt::zero(), 0, p, 0)? {
        return Ok(true);
    }
    let rev: Vec<BigInt> = g.iter().rev().cloned().collect();
    zp_soluble(&rev, &BigInt::zero(), 1, p, 0)
}

/// Real solubility of `w^2 = d u^4 + a u^2 v^2 + e v^4`.
pub fn biquadratic_soluble_real(d: &BigInt, a: &BigInt, e: &BigInt) -> bool {
    d.is_positive() || e.is_positive() || (a.is_positive() && (a * a - BigInt::from(4) * d * e) >= BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::frac;
    use num_traits::One;
    use proptest::prelude::*;

    /// Exhaustive oracle at fixed precision `p^k`: `Some` when every residue
    /// class has a determined square class (or a square witness exists).
    fn brute_force(g: &[BigInt; 5], p: u64, k: u32) -> Option<bool> {
        let pb = BigInt::from(p);
        let c = if p == 2 { 3 } else { 1 };
        let eval = |x: &BigInt, z: &BigInt| {
            (0..5).fold(BigInt::zero(), |acc, i| {
                acc + &g[i] * num_traits::pow(x.clone(), i) * num_traits::pow(z.clone(), 4 - i)
            })
        };
        let limit = p.pow(k);
        let mut undetermined = false;
        for xi in 0..limit {
            let x = BigInt::from(xi);
            for (u, v) in [(x.clone(), BigInt::one()), (BigInt::one(), &x * &pb)] {
                let val = eval(&u, &v);
                // Changing u or v by p^k moves the value by a multiple of p^k.
                let det = !val.is_zero() && split_power(&val, &pb).0 + c <= k as u64;
                if det {
                    if is_padic_square(&val, &pb) {
                        return Some(true);
                    }
                } else {
                    undetermined = true;
                }
            }
        }
        if undetermined {
            None
        } else {
            Some(false)
        }
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn classes() {
        let two = Some(bi(2));
        assert_eq!(int_class(&bi(1), &two), 0);
        assert_eq!(int_class(&bi(17), &two), 0);
        assert_eq!(int_class(&bi(-1), &two), 0b110);
        assert_eq!(int_class(&bi(2), &two), 1);
        assert_eq!(int_class(&bi(-1), &Some(bi(5))), 0);
        assert_eq!(int_class(&bi(-1), &Some(bi(7))), 0b10);
        assert_eq!(rational_class(&frac(-3, 4), &None), 1);
        assert!(is_padic_square(&bi(-7), &bi(2)));
        assert!(!is_padic_square(&bi(3), &bi(2)));
    }

    #[test]
    fn quartic_examples() {
        // No real points, but soluble at 5.
        let g = [bi(-1), bi(0), bi(0), bi(0), bi(-1)];
        assert!(!biquadratic_soluble_real(&bi(-1), &bi(0), &bi(-1)));
        assert!(quartic_soluble_qp(&g, &bi(5)).unwrap());
        let g = [bi(3), bi(0), bi(0), bi(0), bi(3)];
        assert!(!quartic_soluble_qp(&g, &bi(3)).unwrap());
        // Lind–Reichardt.
        let g = [bi(-34), bi(0), bi(0), bi(0), bi(2)];
        for p in [2, 17] {
            assert!(quartic_soluble_qp(&g, &bi(p)).unwrap());
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force(d in -12i64..12, a in -12i64..12, e in -12i64..12) {
            prop_assume!(d != 0 && e != 0 && a * a != 4 * d * e);
            let g = [bi(e), bi(0), bi(a), bi(0), bi(d)];
            for (p, k) in [(2u64, 10), (3, 6), (5, 4)] {
                let fast = quartic_soluble_qp(&g, &bi(p as i64)).unwrap();
                if let Some(slow) = brute_force(&g, p, k) {
                    prop_assert_eq!(fast, slow, "p = {}", p);
                }
            }
        }
    }
}
