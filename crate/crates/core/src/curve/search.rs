//! Naive search for rational points of bounded height.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::model::WeierstrassModel;
use super::point::CurvePoint;
use crate::arith::rational::int_sqrt_exact;
use crate::arith::Rational;
use crate::error::{Error, Result};

const SQUARE_MASK: u64 = 0x0202_0212_0203_0213;

fn i128_sqrt_exact(n: i128) -> Option<i128> {
    if n < 0 || (SQUARE_MASK >> (n & 63)) & 1 == 0 {
        return None;
    }
    let s = (n as u128).sqrt() as i128;
    (s * s == n).then_some(s)
}

struct Coeffs {
    a: [BigInt; 5],
    small: Option<[i128; 5]>,
}

impl Coeffs {
    /// Returns `(B, D)` where `e^3 y` solves `Y^2 + B Y = ...` and `D = B^2 + 4 e^6 f(x)`.
    fn small_disc(&self, m: i128, e: i128) -> Option<(i128, i128)> {
        let [a1, a2, a3, a4, a6] = self.small?;
        let e2 = e.checked_mul(e)?;
        let e4 = e2.checked_mul(e2)?;
        let e6 = e4.checked_mul(e2)?;
        let lin = a1.checked_mul(m)?.checked_mul(e)?.checked_add(a3.checked_mul(e2.checked_mul(e)?)?)?;
        let m2 = m.checked_mul(m)?;
        let cubic = m2
            .checked_mul(m)?
            .checked_add(a2.checked_mul(m2)?.checked_mul(e2)?)?
            .checked_add(a4.checked_mul(m)?.checked_mul(e4)?)?
            .checked_add(a6.checked_mul(e6)?)?;
        let d = lin.checked_mul(lin)?.checked_add(cubic.checked_mul(4)?)?;
        Some((lin, d))
    }

    fn big_disc(&self, m: &BigInt, e: &BigInt) -> (BigInt, BigInt) {
        let [a1, a2, a3, a4, a6] = &self.a;
        let e2 = e * e;
        let e4 = &e2 * &e2;
        let lin = a1 * m * e + a3 * &e2 * e;
        let cubic = m * m * m + a2 * m * m * &e2 + a4 * m * &e4 + a6 * &e4 * &e2;
        (lin.clone(), &lin * &lin + cubic * 4)
    }
}

fn points_at(c: &Coeffs, m: i64, e: i64) -> Vec<CurvePoint> {
    let (lin, root) = match c.small_disc(m as i128, e as i128) {
        Some((lin, d)) => match i128_sqrt_exact(d) {
            Some(s) => (BigInt::from(lin), BigInt::from(s)),
            None => return Vec::new(),
        },
        None => {
            let (lin, d) = c.big_disc(&BigInt::from(m), &BigInt::from(e));
            if d.is_negative() {
                return Vec::new();
            }
            match int_sqrt_exact(&d) {
                Some(s) => (lin, s),
                None => return Vec::new(),
            }
        }
    };
    let e = BigInt::from(e);
    let x = Rational::new(BigInt::from(m), &e * &e);
    let den: BigInt = &e * &e * &e * 2;
    let mut out = vec![CurvePoint::affine(x.clone(), Rational::new(-&lin - &root, den.clone()))];
    if !root.is_zero() {
        out.push(CurvePoint::affine(x, Rational::new(-&lin + &root, den)));
    }
    out
}

/// All affine points with `x = m/e^2` in lowest terms, `|m| <= height` and
/// `1 <= e <= sqrt(height)`, sorted.
pub fn naive_point_search(w: &WeierstrassModel, height: u64) -> Result<Vec<CurvePoint>> {
    if !w.is_integral() {
        return Err(Error::Domain("point search needs an integral model".into()));
    }
    let a = w.coeffs().clone().map(|x| x.to_integer());
    let small = a
        .iter()
        .map(|x| x.to_i128())
        .collect::<Option<Vec<_>>>()
        .map(|v| [v[0], v[1], v[2], v[3], v[4]]);
    let c = Coeffs { a, small };
    let h = i64::try_from(height).map_err(|_| Error::Domain("height too large".into()))?;
    let emax = h.sqrt();
    let mut pts: Vec<CurvePoint> = (1..=emax)
        .into_par_iter()
        .flat_map_iter(|e: i64| {
            let c = &c;
            (-h..=h)
                .filter(move |m| e == 1 || m.gcd(&e) == 1)
                .flat_map(move |m| points_at(c, m, e))
        })
        .collect();
    pts.sort();
    pts.dedup();
    Ok(pts)
}
