//! Descent via the 2-isogeny with kernel `(0, 0)` on `y^2 = x^3 + a x^2 + b x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::complete::FullTwoTorsion;
use super::local::{biquadratic_soluble_real, quartic_soluble_qp};
use crate::arith::rational::{big, int_sqrt_exact, serde_bigint, serde_bigint_vec};
use crate::arith::{factorize, FactorBudget, Rational};
use crate::curve::{CurvePoint, WeierstrassModel};
use crate::error::{Error, Result};

/// `E: y^2 = x^3 + a x^2 + b x` and `E': y^2 = x^3 - 2a x^2 + (a^2 - 4b) x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyPair {
    #[serde(with = "serde_bigint")]
    pub a: BigInt,
    #[serde(with = "serde_bigint")]
    pub b: BigInt,
    #[serde(with = "serde_bigint")]
    pub a_dual: BigInt,
    #[serde(with = "serde_bigint")]
    pub b_dual: BigInt,
}

impl IsogenyPair {
    pub fn new(a: BigInt, b: BigInt) -> Result<IsogenyPair> {
        let (a_dual, b_dual) = isogenous_int(&a, &b)?;
        Ok(IsogenyPair { a, b, a_dual, b_dual })
    }

    pub fn curve(&self) -> WeierstrassModel {
        biquadratic_model(&self.a, &self.b)
    }

    pub fn dual_curve(&self) -> WeierstrassModel {
        biquadratic_model(&self.a_dual, &self.b_dual)
    }

    /// `theta: E -> E'`, `(x, y) -> (y^2/x^2, y (x^2 - b)/x^2)`.
    pub fn theta(&self, p: &CurvePoint) -> CurvePoint {
        image(p, &self.b)
    }

    /// The dual `E' -> E`, landing on the model `(4a, 16b)` scaled back by `u = 2`.
    pub fn theta_dual(&self, p: &CurvePoint) -> CurvePoint {
        match image(p, &self.b_dual) {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x / big(4.into()), y / big(8.into())),
        }
    }
}

fn image(p: &CurvePoint, b: &BigInt) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, .. } if x.is_zero() => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => {
            let x2 = x * x;
            CurvePoint::affine(y * y / &x2, y * (&x2 - big(b.clone())) / &x2)
        }
    }
}

pub fn biquadratic_model(a: &BigInt, b: &BigInt) -> WeierstrassModel {
    WeierstrassModel::cubic(big(a.clone()), big(b.clone()), Rational::zero())
        .expect("nonsingular pair")
}

/// `(a, b) -> (-2a, a^2 - 4b)`.
pub fn isogenous_curve(a: &Rational, b: &Rational) -> Result<(Rational, Rational)> {
    let disc = a * a - b * Rational::from_integer(4.into());
    if b.is_zero() || disc.is_zero() {
        return Err(Error::Singular);
    }
    Ok((-(a * Rational::from_integer(2.into())), disc))
}

fn isogenous_int(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    let (a2, b2) = isogenous_curve(&big(a.clone()), &big(b.clone()))?;
    Ok((a2.to_integer(), b2.to_integer()))
}

/// Square classes supported on `{-1} + primes`, as bitmasks over that basis.
#[derive(Clone, Debug)]
pub(crate) struct ClassBasis {
    pub primes: Vec<BigInt>,
}

impl ClassBasis {
    pub fn dim(&self) -> usize {
        self.primes.len() + 1
    }

    pub fn value(&self, mask: u64) -> BigInt {
        let mut d = if mask & 1 == 1 { -BigInt::one() } else { BigInt::one() };
        for (i, p) in self.primes.iter().enumerate() {
            if mask >> (i + 1) & 1 == 1 {
                d *= p;
            }
        }
        d
    }

    /// Mask of the square class of a nonzero rational, if supported on the basis.
    pub fn mask(&self, x: &Rational) -> Option<u64> {
        let mut mask = u64::from(x.is_negative());
        let mut rest = x.numer().abs() * x.denom();
        for (i, p) in self.primes.iter().enumerate() {
            let mut v = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                v += 1;
            }
            if v % 2 == 1 {
                mask |= 1 << (i + 1);
            }
        }
        let ok = rest.is_one() || int_sqrt_exact(&rest).is_some();
        ok.then_some(mask)
    }
}

pub(crate) fn prime_support(n: &BigInt, budget: &FactorBudget) -> Result<Vec<BigInt>> {
    Ok(factorize(&n.abs(), budget)?.primes().cloned().collect())
}

/// Result of one direction of 2-isogeny descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelmerSide {
    pub dim: u32,
    pub classes: Vec<BigInt>,
    pub masks: Vec<u64>,
}

/// `S = {d : w^2 = d u^4 + a u^2 v^2 + (b/d) v^4 is everywhere locally soluble}`.
fn selmer_side(a: &BigInt, b: &BigInt, bad: &[BigInt], budget: &FactorBudget) -> Result<(SelmerSide, ClassBasis)> {
    let basis = ClassBasis { primes: prime_support(b, budget)? };
    let n = basis.dim();
    let mut survivors = Vec::new();
    for mask in 0u64..(1 << n) {
        let d = basis.value(mask);
        let e = b / &d;
        if !biquadratic_soluble_real(&d, a, &e) {
            continue;
        }
        let g = [e.clone(), BigInt::zero(), a.clone(), BigInt::zero(), d.clone()];
        let mut ok = true;
        for p in bad {
            if !quartic_soluble_qp(&g, p)? {
                ok = false;
                break;
            }
        }
        if ok {
            survivors.push(mask);
        }
    }
    for &x in &survivors {
        for &y in &survivors {
            if survivors.binary_search(&(x ^ y)).is_err() {
                return Err(Error::InconsistentData(format!(
                    "surviving classes {} and {} do not form a group",
                    basis.value(x),
                    basis.value(y)
                )));
            }
        }
    }
    let torsion_class = basis.mask(&big(b.clone())).expect("b is supported on its own primes");
    if survivors.binary_search(&0).is_err() || survivors.binary_search(&torsion_class).is_err() {
        return Err(Error::InconsistentData("torsion image missing from Selmer group".into()));
    }
    let dim = survivors.len().trailing_zeros();
    let mut classes: Vec<BigInt> = survivors.iter().map(|&m| basis.value(m)).collect();
    classes.sort();
    Ok((SelmerSide { dim, classes, masks: survivors }, basis))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerReport {
    pub dim_theta: u32,
    pub dim_theta_dual: u32,
    #[serde(with = "serde_bigint_vec")]
    pub theta_classes: Vec<BigInt>,
    #[serde(with = "serde_bigint_vec")]
    pub theta_dual_classes: Vec<BigInt>,
    pub dim_two: Option<u32>,
    /// Surviving pairs `(d1, d2)` of the complete 2-descent.
    pub two_classes: Option<Vec<[String; 2]>>,
}

impl SelmerReport {
    pub fn isogeny_rank_bound(&self) -> i64 {
        self.dim_theta as i64 + self.dim_theta_dual as i64 - 2
    }

    pub fn two_rank_bound(&self) -> Option<i64> {
        self.dim_two.map(|d| d as i64 - 2)
    }
}

/// Primes where the torsors may fail to be locally soluble: those dividing `2 b (a^2 - 4b)`.
pub(crate) fn bad_primes(a: &BigInt, b: &BigInt, budget: &FactorBudget) -> Result<Vec<BigInt>> {
    let disc = a * a - BigInt::from(4) * b;
    prime_support(&(b * disc * 2), budget)
}

pub(crate) struct IsogenyDescent {
    pub pair: IsogenyPair,
    pub side: SelmerSide,
    pub basis: ClassBasis,
    pub dual_side: SelmerSide,
    pub dual_basis: ClassBasis,
}

pub(crate) fn isogeny_descent(a: &BigInt, b: &BigInt, budget: &FactorBudget) -> Result<IsogenyDescent> {
    let pair = IsogenyPair::new(a.clone(), b.clone())?;
    let bad = bad_primes(a, b, budget)?;
    let (side, basis) = selmer_side(&pair.a, &pair.b, &bad, budget)?;
    let (dual_side, dual_basis) = selmer_side(&pair.a_dual, &pair.b_dual, &bad, budget)?;
    Ok(IsogenyDescent { pair, side, basis, dual_side, dual_basis })
}

/// Selmer groups of the 2-isogeny and its dual for integral `(a, b)`.
pub fn two_isogeny_selmer(a: &BigInt, b: &BigInt, budget: &FactorBudget) -> Result<SelmerReport> {
    let d = isogeny_descent(a, b, budget)?;
    let complete = match int_sqrt_exact(&d.pair.b_dual) {
        Some(s) => {
            let e2 = (-a + &s) / 2;
            let e3 = (-a - &s) / 2;
            Some(FullTwoTorsion::new(BigInt::zero(), e2, e3)?.selmer(budget)?)
        }
        None => None,
    };
    Ok(SelmerReport {
        dim_theta: d.side.dim,
        dim_theta_dual: d.dual_side.dim,
        theta_classes: d.side.classes,
        theta_dual_classes: d.dual_side.classes,
        dim_two: complete.as_ref().map(|c| c.dim),
        two_classes: complete.map(|c| c.pairs),
    })
}

/// Rational points on `w^2 = d u^4 + a u^2 v^2 + (b/d) v^4` with `|u|, |v| <= bound`,
/// mapped to `E`: `(x, y) = (d u^2/v^2, d u w/v^3)`.
pub fn torsor_points(a: &BigInt, b: &BigInt, d: &BigInt, bound: u32) -> Vec<CurvePoint> {
    let e = b / d;
    let mut out = Vec::new();
    for v in 1..=bound as i64 {
        for u in -(bound as i64)..=bound as i64 {
            if u == 0 || u.gcd(&v) != 1 {
                continue;
            }
            let (ub, vb) = (BigInt::from(u), BigInt::from(v));
            let u2 = &ub * &ub;
            let v2 = &vb * &vb;
            let val = d * &u2 * &u2 + a * &u2 * &v2 + &e * &v2 * &v2;
            if val.is_negative() {
                continue;
            }
            if let Some(w) = int_sqrt_exact(&val) {
                let x = Rational::new(d * &u2, v2.clone());
                let y = Rational::new(d * &ub * &w, &v2 * &vb);
                out.push(CurvePoint::affine(x, y));
            }
        }
    }
    out
}

/// Square class of `alpha(P)`: `x` for `x != 0`, `b` for `(0, 0)`, 1 at infinity.
pub fn alpha(p: &CurvePoint, b: &BigInt) -> Rational {
    match p {
        CurvePoint::Infinity => Rational::one(),
        CurvePoint::Affine { x, .. } if x.is_zero() => big(b.clone()),
        CurvePoint::Affine { x, .. } => x.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn report(a: i64, b: i64) -> SelmerReport {
        two_isogeny_selmer(&bi(a), &bi(b), &FactorBudget::default()).unwrap()
    }

    #[test]
    fn isogenous_examples() {
        assert_eq!(isogenous_curve(&int(0), &int(-1)).unwrap(), (int(0), int(4)));
        assert_eq!(isogenous_curve(&int(33), &int(32)).unwrap(), (int(-66), int(961)));
        let (a2, b2) = isogenous_curve(&int(0), &int(4)).unwrap();
        assert_eq!((a2, b2), (int(0), int(-16)));
        assert_eq!(isogenous_curve(&int(2), &int(1)), Err(Error::Singular));
    }

    #[test]
    fn theta_maps_points() {
        let pair = IsogenyPair::new(bi(0), bi(-25)).unwrap();
        let p = CurvePoint::affine(int(-4), int(6));
        let q = pair.theta(&p);
        assert!(pair.dual_curve().is_on_curve(&q));
        // theta_dual(theta(P)) = 2P.
        let two_p = pair.curve().multiply(2, &p);
        assert_eq!(pair.theta_dual(&q), two_p);
    }

    #[test]
    fn congruent_n1() {
        let r = report(0, -1);
        assert_eq!(r.dim_theta + r.dim_theta_dual, 2);
        assert_eq!(r.isogeny_rank_bound(), 0);
        assert_eq!(r.dim_two, Some(2));
    }

    #[test]
    fn mersenne_fibre() {
        let r = report(33, 32);
        assert!(r.dim_theta + r.dim_theta_dual <= 3);
        assert_eq!(r.two_rank_bound(), Some(0));
    }

    #[test]
    fn trivial_class_survives() {
        let r = report(1, 4);
        assert_eq!(r.dim_two, None);
        assert!(r.theta_classes.contains(&bi(1)));
        assert!(r.theta_dual_classes.contains(&bi(1)));
    }

    #[test]
    fn congruent_n5_has_rank_one() {
        let r = report(0, -25);
        assert_eq!(r.isogeny_rank_bound(), 1);
        let pts = torsor_points(&bi(0), &bi(-25), &bi(-1), 5);
        assert!(pts.iter().any(|p| biquadratic_model(&bi(0), &bi(-25)).is_on_curve(p)));
    }
}
