//! Rational points and the chord–tangent group law.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::model::WeierstrassModel;
use crate::arith::rational::{int, parse_rational};
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        match self {
            CurvePoint::Affine { x, y } => x.is_integer() && y.is_integer(),
            CurvePoint::Infinity => true,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CurvePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "O" {
            return Ok(CurvePoint::Infinity);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| serde::de::Error::custom(format!("bad point {s}")))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| serde::de::Error::custom(format!("bad point {s}")))?;
        let x = parse_rational(x).map_err(serde::de::Error::custom)?;
        let y = parse_rational(y).map_err(serde::de::Error::custom)?;
        Ok(CurvePoint::Affine { x, y })
    }
}

impl WeierstrassModel {
    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.contains(x, y),
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y - self.a1() * x - self.a3(),
            },
        }
    }

    /// Group sum, rejecting points that are not on the curve.
    pub fn point_add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.is_on_curve(p) || !self.is_on_curve(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add_points(p, q))
    }

    /// Group sum for points already known to lie on the curve.
    pub fn add_points(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let [a1, a2, a3, a4, a6] = self.coeffs();
        let (lambda, nu) = if x1 == x2 {
            let denom = y1 + y2 + a1 * x2 + a3;
            if denom.is_zero() {
                return CurvePoint::Infinity;
            }
            let x1sq = x1 * x1;
            let lambda = (int(3) * &x1sq + int(2) * a2 * x1 + a4 - a1 * y1) / &denom;
            let nu = (-(&x1sq * x1) + a4 * x1 + int(2) * a6 - a3 * y1) / &denom;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            let lambda = (y2 - y1) / &dx;
            let nu = (y1 * x2 - y2 * x1) / &dx;
            (lambda, nu)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn multiply(&self, n: u64, p: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            base = self.add_points(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Order of `p` if it is at most `cap`.
    pub fn order_up_to(&self, p: &CurvePoint, cap: u32) -> Option<u32> {
        let mut q = p.clone();
        for n in 1..=cap {
            if q.is_infinity() {
                return Some(n);
            }
            q = self.add_points(&q, p);
        }
        None
    }

    /// Mazur: a rational point is torsion iff its order is at most 12.
    pub fn is_torsion(&self, p: &CurvePoint) -> bool {
        self.order_up_to(p, 12).is_some()
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

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::affine(int(x), int(y))
    }

    #[test]
    fn two_torsion_sums() {
        let w = e5();
        assert_eq!(w.point_add(&pt(0, 0), &pt(-1, 0)).unwrap(), pt(-32, 0));
        assert_eq!(w.point_add(&pt(0, 0), &CurvePoint::Infinity).unwrap(), pt(0, 0));
        assert_eq!(w.point_add(&pt(0, 0), &pt(0, 0)).unwrap(), CurvePoint::Infinity);
        assert_eq!(w.point_add(&pt(1, 1), &pt(0, 0)), Err(Error::NotOnCurve));
    }

    #[test]
    fn inverse_and_long_form() {
        // y^2 + xy + y = x^3 - x^2 (conductor 53) with point (0, 0).
        let w = WeierstrassModel::from_ints([1, -1, 1, 0, 0]).unwrap();
        let p = pt(0, 0);
        assert!(w.is_on_curve(&p));
        assert_eq!(w.add_points(&p, &w.negate(&p)), CurvePoint::Infinity);
        let q = w.multiply(3, &p);
        assert!(w.is_on_curve(&q));
        assert_eq!(w.add_points(&w.multiply(2, &p), &p), q);
    }

    #[test]
    fn point_text_roundtrip() {
        let p = CurvePoint::affine(frac(-1, 4), int(3));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "\"(-1/4, 3)\"");
        assert_eq!(serde_json::from_str::<CurvePoint>(&s).unwrap(), p);
    }

    proptest! {
        #[test]
        fn associativity_on_congruent_curve(i in 1u64..6, j in 1u64..6, k in 1u64..6) {
            // y^2 = x^3 - 25x, P = (-4, 6) of infinite order, T = (0, 0).
            let w = WeierstrassModel::from_ints([0, 0, 0, -25, 0]).unwrap();
            let p = pt(-4, 6);
            let t = pt(0, 0);
            let a = w.multiply(i, &p);
            let b = w.add_points(&w.multiply(j, &p), &t);
            let c = w.negate(&w.multiply(k, &p));
            let lhs = w.add_points(&w.add_points(&a, &b), &c);
            let rhs = w.add_points(&a, &w.add_points(&b, &c));
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(w.is_on_curve(&lhs));
            prop_assert_eq!(w.add_points(&a, &w.negate(&a)), CurvePoint::Infinity);
        }
    }
}
