//! Long Weierstrass models over a coefficient ring, their invariants and
//! changes of variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::{self, int, serde_rational};
use crate::arith::{Poly, Rational};
use crate::error::{Error, Result};

/// Ring of Weierstrass coefficients: Q for curves, Q[t] for surface models.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_coeff() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero_coeff(&self) -> bool;
}

impl Coeff for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coeff for Poly {
    fn zero_coeff() -> Self {
        Poly::zero()
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(int(n))
    }
    fn is_zero_coeff(&self) -> bool {
        Poly::is_zero(self)
    }
}

fn k<R: Coeff>(n: i64) -> R {
    R::from_i64(n)
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weierstrass<R> {
    a: [R; 5],
}

/// A Weierstrass model over Q.
pub type WeierstrassModel = Weierstrass<Rational>;

/// A Weierstrass model over Q[t], i.e. an elliptic surface.
pub type SurfaceModel = Weierstrass<Poly>;

impl<R: Coeff> Weierstrass<R> {
    /// Builds a model, rejecting a vanishing discriminant.
    pub fn new(a: [R; 5]) -> Result<Self> {
        let w = Weierstrass { a };
        if w.discriminant().is_zero_coeff() {
            return Err(Error::Singular);
        }
        Ok(w)
    }

    pub(crate) fn new_unchecked(a: [R; 5]) -> Self {
        Weierstrass { a }
    }

    pub fn coeffs(&self) -> &[R; 5] {
        &self.a
    }
    pub fn a1(&self) -> &R {
        &self.a[0]
    }
    pub fn a2(&self) -> &R {
        &self.a[1]
    }
    pub fn a3(&self) -> &R {
        &self.a[2]
    }
    pub fn a4(&self) -> &R {
        &self.a[3]
    }
    pub fn a6(&self) -> &R {
        &self.a[4]
    }

    pub fn b_invariants(&self) -> [R; 4] {
        let [a1, a2, a3, a4, a6] = self.a.clone();
        let b2 = a1.clone() * a1.clone() + k::<R>(4) * a2.clone();
        let b4 = k::<R>(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.clone() * a3.clone() + k::<R>(4) * a6.clone();
        let b8 = a1.clone() * a1.clone() * a6.clone() + k::<R>(4) * a2.clone() * a6
            - a1 * a3.clone() * a4.clone()
            + a2 * a3.clone() * a3
            - a4.clone() * a4;
        [b2, b4, b6, b8]
    }

    pub fn c_invariants(&self) -> (R, R) {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = b2.clone() * b2.clone() - k::<R>(24) * b4.clone();
        let c6 = -(b2.clone() * b2.clone() * b2.clone()) + k::<R>(36) * b2 * b4 - k::<R>(216) * b6;
        (c4, c6)
    }

    pub fn discriminant(&self) -> R {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(b2.clone() * b2.clone() * b8) - k::<R>(8) * b4.clone() * b4.clone() * b4.clone()
            - k::<R>(27) * b6.clone() * b6.clone()
            + k::<R>(9) * b2 * b4 * b6
    }

    /// Change of variables `x = x' + r`, `y = y' + s x' + t`.
    pub fn rst(&self, r: &R, s: &R, t: &R) -> Self {
        let [a1, a2, a3, a4, a6] = self.a.clone();
        let (r, s, t) = (r.clone(), s.clone(), t.clone());
        let n1 = a1.clone() + k::<R>(2) * s.clone();
        let n2 = a2.clone() - s.clone() * a1.clone() + k::<R>(3) * r.clone() - s.clone() * s.clone();
        let n3 = a3.clone() + r.clone() * a1.clone() + k::<R>(2) * t.clone();
        let n4 = a4.clone() - s.clone() * a3.clone() + k::<R>(2) * r.clone() * a2.clone()
            - (t.clone() + r.clone() * s.clone()) * a1.clone()
            + k::<R>(3) * r.clone() * r.clone()
            - k::<R>(2) * s * t.clone();
        let n6 = a6 + r.clone() * a4 + r.clone() * r.clone() * a2 + r.clone() * r.clone() * r.clone()
            - t.clone() * a3
            - t.clone() * t.clone()
            - r * t * a1;
        Weierstrass { a: [n1, n2, n3, n4, n6] }
    }

    /// Maps each coefficient `a_i` through `f(i, a_i)` with `i` its weight.
    pub(crate) fn map_weighted(&self, mut f: impl FnMut(u32, &R) -> R) -> Self {
        const W: [u32; 5] = [1, 2, 3, 4, 6];
        let a = [0, 1, 2, 3, 4].map(|i| f(W[i], &self.a[i]));
        Weierstrass { a }
    }
}

/// Standard invariants of a model over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(with = "serde_rational")]
    pub b2: Rational,
    #[serde(with = "serde_rational")]
    pub b4: Rational,
    #[serde(with = "serde_rational")]
    pub b6: Rational,
    #[serde(with = "serde_rational")]
    pub b8: Rational,
    #[serde(with = "serde_rational")]
    pub c4: Rational,
    #[serde(with = "serde_rational")]
    pub c6: Rational,
    #[serde(with = "serde_rational")]
    pub discriminant: Rational,
    #[serde(with = "serde_rational")]
    pub j: Rational,
}

/// Invariants of raw coefficients; fails with [`Error::Singular`] when Δ = 0.
pub fn compute_invariants(a: &[Rational; 5]) -> Result<Invariants> {
    let w = WeierstrassModel::new_unchecked(a.clone());
    let [b2, b4, b6, b8] = w.b_invariants();
    let (c4, c6) = w.c_invariants();
    let discriminant = w.discriminant();
    if discriminant.is_zero() {
        return Err(Error::Singular);
    }
    let j = &c4 * &c4 * &c4 / &discriminant;
    Ok(Invariants { b2, b4, b6, b8, c4, c6, discriminant, j })
}

/// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transform {
    #[serde(with = "serde_rational")]
    pub u: Rational,
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    #[serde(with = "serde_rational")]
    pub t: Rational,
}

impl Transform {
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroScaling);
        }
        Ok(Transform { u, r, s, t })
    }

    pub fn identity() -> Self {
        Transform { u: int(1), r: int(0), s: int(0), t: int(0) }
    }

    pub fn scaling(u: Rational) -> Result<Self> {
        Transform::new(u, int(0), int(0), int(0))
    }

    /// Apply `self`, then `next` (expressed in the coordinates produced by `self`).
    pub fn then(&self, next: &Transform) -> Transform {
        let u1 = &self.u;
        let u1sq = u1 * u1;
        Transform {
            u: u1 * &next.u,
            r: &self.r + &u1sq * &next.r,
            s: &self.s + u1 * &next.s,
            t: &self.t + &u1sq * &self.s * &next.r + &u1sq * u1 * &next.t,
        }
    }

    pub fn inverse(&self) -> Transform {
        let ui = self.u.recip();
        let ui2 = &ui * &ui;
        Transform {
            r: -&self.r * &ui2,
            s: -&self.s * &ui,
            t: (&self.r * &self.s - &self.t) * &ui2 * &ui,
            u: ui,
        }
    }

    /// Old coordinates to new ones.
    pub fn forward(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let u2 = &self.u * &self.u;
        let xn = (x - &self.r) / &u2;
        let yn = (y - &self.s * (x - &self.r) - &self.t) / (&u2 * &self.u);
        (xn, yn)
    }

    /// New coordinates back to old ones.
    pub fn backward(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let u2 = &self.u * &self.u;
        let xo = &u2 * x + &self.r;
        let yo = &u2 * &self.u * y + &self.s * &u2 * x + &self.t;
        (xo, yo)
    }
}

impl WeierstrassModel {
    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Weierstrass::new(a.map(int))
    }

    /// `y^2 = x^3 + a x^2 + b x + c`.
    pub fn cubic(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        Weierstrass::new([Rational::zero(), a, Rational::zero(), b, c])
    }

    pub fn invariants(&self) -> Invariants {
        compute_invariants(&self.a).expect("model is nonsingular by construction")
    }

    pub fn apply_transform(&self, tr: &Transform) -> Self {
        let moved = self.rst(&tr.r, &tr.s, &tr.t);
        let ui = tr.u.recip();
        moved.map_weighted(|w, a| a * num_traits::pow(ui.clone(), w as usize))
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(rational::is_integral)
    }

    /// An integral model `x = x'/d^2`, `y = y'/d^3` together with the
    /// transform from `self`. `d` is built from denominators and need not be least.
    pub fn integral_model(&self) -> (WeierstrassModel, Transform) {
        let mut d = BigInt::one();
        const W: [u32; 5] = [1, 2, 3, 4, 6];
        loop {
            let ok = self.a.iter().zip(W).all(|(a, w)| {
                let scaled = a * Rational::from_integer(d.pow(w));
                scaled.is_integer()
            });
            if ok {
                break;
            }
            let mut den = BigInt::one();
            for (a, w) in self.a.iter().zip(W) {
                let scaled = a * Rational::from_integer(d.pow(w));
                den = den.lcm(scaled.denom());
            }
            d *= den;
        }
        let tr = Transform::scaling(Rational::new(BigInt::one(), d)).expect("nonzero");
        (self.apply_transform(&tr), tr)
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let [a1, a2, a3, a4, a6] = &self.a;
        y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6
    }

    pub fn to_csv(&self) -> String {
        self.a.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl FromStr for WeierstrassModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!("expected 5 coefficients, got {}", parts.len())));
        }
        let mut a: [Rational; 5] = Default::default();
        for (slot, p) in a.iter_mut().zip(parts) {
            *slot = rational::parse_rational(p)?;
        }
        Weierstrass::new(a)
    }
}

impl Serialize for WeierstrassModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_csv())
    }
}

impl<'de> Deserialize<'de> for WeierstrassModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::frac;
    use proptest::prelude::*;

    fn e5() -> WeierstrassModel {
        WeierstrassModel::from_ints([0, 33, 0, 32, 0]).unwrap()
    }

    #[test]
    fn invariant_examples() {
        // Δ = 16 N^2 (N-1)^2 for y^2 = x(x+1)(x+N).
        assert_eq!(e5().invariants().discriminant, int(16 * 32 * 32 * 31 * 31));
        assert_eq!(int(16 * 32 * 32 * 31 * 31), int(15745024));
        let cong = WeierstrassModel::from_ints([0, 0, 0, -1, 0]).unwrap().invariants();
        assert_eq!(cong.discriminant, int(64));
        assert_eq!(cong.j, int(1728));
        assert_eq!(WeierstrassModel::from_ints([0, 1, 0, 0, 0]), Err(Error::Singular));
    }

    #[test]
    fn transform_examples() {
        let w = e5();
        assert_eq!(w.apply_transform(&Transform::identity()), w);
        let scaled = w.apply_transform(&Transform::scaling(int(2)).unwrap());
        assert_eq!(scaled.invariants().discriminant, int(4 * 31 * 31));
        assert_eq!(Transform::new(int(0), int(1), int(0), int(0)), Err(Error::ZeroScaling));
        let tr = Transform::new(frac(3, 2), int(-5), frac(1, 3), int(7)).unwrap();
        let back = w.apply_transform(&tr).apply_transform(&tr.inverse());
        assert_eq!(back, w);
    }

    #[test]
    fn serialization_form() {
        assert_eq!(e5().to_string(), "0,33,0,32,0");
        assert_eq!("0,33,0,32,0".parse::<WeierstrassModel>().unwrap(), e5());
        assert!("0,1,0,0,0".parse::<WeierstrassModel>().is_err());
        let json = serde_json::to_string(&e5()).unwrap();
        assert_eq!(json, "\"0,33,0,32,0\"");
    }

    #[test]
    fn integral_model_clears_denominators() {
        let w = WeierstrassModel::from_ints([0, 0, 0, 0, 1])
            .unwrap()
            .apply_transform(&Transform::scaling(int(6)).unwrap());
        assert!(!w.is_integral());
        let (m, tr) = w.integral_model();
        assert!(m.is_integral());
        assert_eq!(w.apply_transform(&tr), m);
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..6).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn discriminant_relation(a in proptest::array::uniform5(small())) {
            if let Ok(inv) = compute_invariants(&a) {
                let lhs = int(1728) * &inv.discriminant;
                let rhs = &inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6;
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn scaling_law(a in proptest::array::uniform5(small()), u in small(), r in small(), s in small(), t in small()) {
            prop_assume!(!Zero::is_zero(&u));
            if let Ok(w) = Weierstrass::new(a) {
                let tr = Transform::new(u.clone(), r, s, t).unwrap();
                let w2 = w.apply_transform(&tr);
                let (i1, i2) = (w.invariants(), w2.invariants());
                let u4 = num_traits::pow(u.clone(), 4);
                prop_assert_eq!(&i2.discriminant * num_traits::pow(u.clone(), 12), i1.discriminant);
                prop_assert_eq!(&i2.c4 * u4, i1.c4);
                prop_assert_eq!(i2.j, i1.j);
                prop_assert_eq!(w2.apply_transform(&tr.inverse()), w.clone());
                let tr2 = Transform::new(frac(2, 3), int(1), int(-1), frac(1, 2)).unwrap();
                prop_assert_eq!(w.apply_transform(&tr.then(&tr2)), w2.apply_transform(&tr2));
            }
        }
    }
}
