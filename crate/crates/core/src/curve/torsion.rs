//! Rational torsion via Lutz–Nagell candidates and explicit orders.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::model::{Transform, WeierstrassModel};
use super::point::CurvePoint;
use crate::arith::primes::small_primes;
use crate::arith::rational::{big, frac, int};
use crate::arith::{factorize, FactorBudget, Rational};
use crate::error::{Error, Result};

/// One of Mazur's fifteen groups: `Z/n` or `Z/2 x Z/2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorsionShape {
    Cyclic(u32),
    TwoTimes(u32),
}

impl TorsionShape {
    pub fn order(self) -> u32 {
        match self {
            TorsionShape::Cyclic(n) => n,
            TorsionShape::TwoTimes(n) => 4 * n,
        }
    }

    /// Dimension of the 2-torsion over F2.
    pub fn two_rank(self) -> u32 {
        match self {
            TorsionShape::Cyclic(n) if n % 2 == 0 => 1,
            TorsionShape::Cyclic(_) => 0,
            TorsionShape::TwoTimes(_) => 2,
        }
    }

    pub fn is_mazur(self) -> bool {
        match self {
            TorsionShape::Cyclic(n) => (1..=10).contains(&n) || n == 12,
            TorsionShape::TwoTimes(n) => (1..=4).contains(&n),
        }
    }
}

impl fmt::Display for TorsionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionShape::Cyclic(1) => f.write_str("0"),
            TorsionShape::Cyclic(n) => write!(f, "Z/{n}"),
            TorsionShape::TwoTimes(n) => write!(f, "Z/2xZ/{}", 2 * n),
        }
    }
}

impl std::str::FromStr for TorsionShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad torsion shape {s}"));
        if s == "0" {
            return Ok(TorsionShape::Cyclic(1));
        }
        if let Some(rest) = s.strip_prefix("Z/2xZ/") {
            let m: u32 = rest.parse().map_err(|_| bad())?;
            if m % 2 != 0 {
                return Err(bad());
            }
            return Ok(TorsionShape::TwoTimes(m / 2));
        }
        let n = s.strip_prefix("Z/").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(TorsionShape::Cyclic(n))
    }
}

impl Serialize for TorsionShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TorsionShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionStructure {
    pub shape: TorsionShape,
    pub generators: Vec<CurvePoint>,
    /// Points of exact order 2, sorted.
    pub two_torsion: Vec<CurvePoint>,
    /// Every torsion point, sorted, including the identity.
    pub points: Vec<CurvePoint>,
}

impl TorsionStructure {
    pub fn order(&self) -> u32 {
        self.shape.order()
    }
}

/// `y^2 = x^3 + A x^2 + B x + C` over Z, with the transform reaching it.
pub(crate) fn short_integral(w: &WeierstrassModel) -> (WeierstrassModel, Transform) {
    let (wi, t1) = w.integral_model();
    if wi.a1().is_zero() && wi.a3().is_zero() {
        return (wi, t1);
    }
    let half = frac(1, 2);
    let t2 = Transform::new(int(1), int(0), -wi.a1() * &half, -wi.a3() * &half)
        .expect("u = 1")
        .then(&Transform::scaling(half).expect("nonzero"));
    let tr = t1.then(&t2);
    (w.apply_transform(&tr), tr)
}

fn as_int(x: &Rational) -> BigInt {
    debug_assert!(x.is_integer());
    x.to_integer()
}

fn floor_div3(n: &BigInt) -> BigInt {
    n.div_floor(&BigInt::from(3))
}

/// Integer roots of `x^3 + a x^2 + b x + c`, ascending.
pub fn integer_roots_monic_cubic(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let f = |x: &BigInt| ((x + a) * x + b) * x + c;
    let bound = BigInt::one() + a.abs().max(b.abs()).max(c.abs());
    let lo = -bound.clone();
    let mut pieces: Vec<(BigInt, BigInt, bool)> = Vec::new();
    let disc = a * a - BigInt::from(3) * b;
    if disc.is_positive() {
        let s = disc.sqrt();
        let exact = &s * &s == disc;
        let upper_crit = floor_div3(&(-a + &s));
        let lower_crit = if exact {
            floor_div3(&(-a - &s))
        } else {
            floor_div3(&(-a - &s - 1))
        };
        pieces.push((lo, lower_crit.clone(), true));
        pieces.push((lower_crit + 1, upper_crit.clone(), false));
        pieces.push((upper_crit + 1, bound, true));
    } else {
        pieces.push((lo, bound, true));
    }
    let mut roots = Vec::new();
    for (mut l, mut h, increasing) in pieces {
        if l > h {
            continue;
        }
        let sign = |x: &BigInt| {
            let v = f(x);
            if increasing {
                v
            } else {
                -v
            }
        };
        if sign(&l).is_positive() || sign(&h).is_negative() {
            continue;
        }
        while l < h {
            let mid: BigInt = (&l + &h).div_floor(&BigInt::from(2));
            if sign(&mid).is_negative() {
                l = mid + 1;
            } else {
                h = mid;
            }
        }
        if f(&l).is_zero() {
            roots.push(l);
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// `#E(F_p)` for `y^2 = x^3 + A x^2 + B x + C` at an odd prime of good reduction.
pub(crate) fn count_points_mod_p(abc: [&BigInt; 3], p: u64) -> u64 {
    let red = |n: &BigInt| n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
    let (a, b, c) = (red(abc[0]), red(abc[1]), red(abc[2]));
    let mut chi = vec![-1i64; p as usize];
    chi[0] = 0;
    for y in 1..p {
        chi[(y * y % p) as usize] = 1;
    }
    let mut total = (p + 1) as i64;
    for x in 0..p {
        let v = (((x + a) % p * x + b) % p * x + c) % p;
        total += chi[v as usize];
    }
    total as u64
}

fn good_primes(disc: &BigInt, count: usize) -> Vec<u64> {
    small_primes()
        .iter()
        .skip(1)
        .map(|&p| p as u64)
        .filter(|&p| !(disc % BigInt::from(p)).is_zero())
        .take(count)
        .collect()
}

/// Order of a torsion candidate on an integral `a1 = a3 = 0` model, or `None`
/// once a multiple leaves the integral points.
fn integral_order(w: &WeierstrassModel, p: &CurvePoint) -> Option<u32> {
    let mut q = p.clone();
    for n in 1..=12 {
        if q.is_infinity() {
            return Some(n);
        }
        if !q.is_integral() {
            return None;
        }
        q = w.add_points(&q, p);
    }
    None
}

/// Exact torsion subgroup. Candidates follow Lutz–Nagell on a short integral
/// model; the result is checked against `#E(F_p)` at small good primes.
pub fn torsion_structure(w: &WeierstrassModel, budget: &FactorBudget) -> Result<TorsionStructure> {
    let (short, tr) = short_integral(w);
    let (a, b, c) = (as_int(short.a2()), as_int(short.a4()), as_int(short.a6()));
    let disc = as_int(&short.discriminant());
    let primes = good_primes(&disc, 6);
    let counts: Vec<u64> = primes.iter().map(|&p| count_points_mod_p([&a, &b, &c], p)).collect();
    let bound = counts.iter().fold(0u64, |g, &n| g.gcd(&n));

    let mut found: Vec<(CurvePoint, u32)> = vec![(CurvePoint::Infinity, 1)];
    for x in integer_roots_monic_cubic(&a, &b, &c) {
        found.push((CurvePoint::affine(big(x), int(0)), 2));
    }
    if found.len() as u64 != bound {
        let fac = factorize(&disc, budget)?;
        let mut ys: Vec<BigInt> = vec![BigInt::one()];
        for pp in &fac.factors {
            let mut next = Vec::new();
            for y in &ys {
                let mut m = y.clone();
                for _ in 0..=pp.exponent / 2 {
                    next.push(m.clone());
                    m *= &pp.prime;
                }
            }
            ys = next;
        }
        ys.sort();
        for y in ys {
            let c_shift = &c - &y * &y;
            for x in integer_roots_monic_cubic(&a, &b, &c_shift) {
                for yy in [y.clone(), -y.clone()] {
                    let p = CurvePoint::affine(big(x.clone()), big(yy));
                    if let Some(n) = integral_order(&short, &p) {
                        found.push((p, n));
                    }
                }
            }
        }
    }

    let n = found.len() as u64;
    if counts.iter().take(2).any(|&m| m % n != 0) || bound % n != 0 {
        return Err(Error::InconsistentData(format!(
            "torsion of order {n} does not divide reductions {counts:?}"
        )));
    }
    let back = |p: &CurvePoint| match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => {
            let (xo, yo) = tr.backward(x, y);
            CurvePoint::affine(xo, yo)
        }
    };
    found.sort_by(|l, r| r.0.cmp(&l.0));
    let twos: Vec<&CurvePoint> = found.iter().filter(|(_, o)| *o == 2).map(|(p, _)| p).collect();
    let n = n as u32;
    let (shape, generators) = if twos.len() == 3 {
        let big_order = n / 2;
        let gen = found
            .iter()
            .find(|(_, o)| *o == big_order)
            .map(|(p, _)| p.clone())
            .expect("cyclic factor");
        let inside = short.multiply((big_order / 2) as u64, &gen);
        let other = twos.iter().find(|p| ***p != inside).map(|p| (*p).clone()).expect("three 2-torsion points");
        (TorsionShape::TwoTimes(n / 4), vec![gen, other])
    } else {
        let gens = found
            .iter()
            .find(|(_, o)| *o == n)
            .map(|(p, _)| vec![p.clone()])
            .unwrap_or_default();
        (TorsionShape::Cyclic(n), if n == 1 { Vec::new() } else { gens })
    };
    if !shape.is_mazur() {
        return Err(Error::InconsistentData(format!("torsion order {n} is not a Mazur group")));
    }
    let mut points: Vec<CurvePoint> = found.iter().map(|(p, _)| back(p)).collect();
    points.sort();
    let mut two_torsion: Vec<CurvePoint> = twos.iter().map(|p| back(p)).collect();
    two_torsion.sort();
    Ok(TorsionStructure {
        shape,
        generators: generators.iter().map(back).collect(),
        two_torsion,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn torsion(a: [i64; 5]) -> TorsionStructure {
        let w = WeierstrassModel::from_ints(a).unwrap();
        torsion_structure(&w, &FactorBudget::default()).unwrap()
    }

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::affine(int(x), int(y))
    }

    #[test]
    fn mersenne_fibre_has_klein_four() {
        let t = torsion([0, 33, 0, 32, 0]);
        assert_eq!(t.shape, TorsionShape::TwoTimes(1));
        assert_eq!(t.shape.to_string(), "Z/2xZ/2");
        assert_eq!(t.generators, vec![pt(0, 0), pt(-1, 0)]);
        assert_eq!(t.two_torsion, vec![pt(-32, 0), pt(-1, 0), pt(0, 0)]);
    }

    #[test]
    fn neumann_setzer_b3_is_z2() {
        let t = torsion([0, 3, 0, -16, 0]);
        assert_eq!(t.shape, TorsionShape::Cyclic(2));
        assert_eq!(t.generators, vec![pt(0, 0)]);
    }

    #[test]
    fn congruent_curve() {
        assert_eq!(torsion([0, 0, 0, -1, 0]).shape, TorsionShape::TwoTimes(1));
        assert_eq!(torsion([0, 0, 0, -25, 0]).shape, TorsionShape::TwoTimes(1));
    }

    #[test]
    fn larger_groups() {
        // 11a3: y^2 + y = x^3 - x^2 has Z/5.
        assert_eq!(torsion([0, -1, 1, 0, 0]).shape, TorsionShape::Cyclic(5));
        // y^2 = x^3 + 1 has Z/6.
        assert_eq!(torsion([0, 0, 0, 0, 1]).shape, TorsionShape::Cyclic(6));
        // Brute-force oracle: 15 integral torsion points plus one 2-torsion
        // point with x in Z[1/4].
        assert_eq!(torsion([1, 0, 0, -1070, 7812]).shape, TorsionShape::TwoTimes(4));
        // y^2 = x(x+1)(x+4): (2, 6) has order 4.
        assert_eq!(torsion([0, 5, 0, 4, 0]).shape, TorsionShape::TwoTimes(2));
        // y^2 = x^3 - 2 has trivial torsion.
        assert_eq!(torsion([0, 0, 0, 0, -2]).shape, TorsionShape::Cyclic(1));
    }

    #[test]
    fn cubic_roots() {
        let r = |a: i64, b: i64, c: i64| {
            integer_roots_monic_cubic(&a.into(), &b.into(), &c.into())
                .into_iter()
                .map(|x| x.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(r(33, 32, 0), vec![-32, -1, 0]);
        assert_eq!(r(0, 0, -8), vec![2]);
        assert_eq!(r(-3, 3, -1), vec![1]);
        assert_eq!(r(0, 0, 2), Vec::<i64>::new());
    }

    #[test]
    fn shape_text() {
        for s in ["0", "Z/2", "Z/7", "Z/2xZ/2", "Z/2xZ/8"] {
            assert_eq!(s.parse::<TorsionShape>().unwrap().to_string(), s);
        }
    }

    proptest! {
        #[test]
        fn cubic_roots_found(r1 in -60i64..60, r2 in -60i64..60, r3 in -60i64..60) {
            let a = -(r1 + r2 + r3);
            let b = r1 * r2 + r1 * r3 + r2 * r3;
            let c = -r1 * r2 * r3;
            let roots = integer_roots_monic_cubic(&a.into(), &b.into(), &c.into());
            let mut want = vec![r1, r2, r3];
            want.sort();
            want.dedup();
            prop_assert_eq!(roots, want.into_iter().map(BigInt::from).collect::<Vec<_>>());
        }

        #[test]
        fn torsion_divides_reductions(e1 in -20i64..20, e2 in -20i64..20, shift in 0i64..5) {
            let e3 = e2 + 1 + shift;
            prop_assume!(e1 != e2 && e1 != e3);
            let a = -(e1 + e2 + e3);
            let b = e1 * e2 + e1 * e3 + e2 * e3;
            let c = -e1 * e2 * e3;
            let w = WeierstrassModel::from_ints([0, a, 0, b, c]).unwrap();
            let t = torsion_structure(&w, &FactorBudget::default()).unwrap();
            prop_assert_eq!(t.shape.two_rank(), 2);
            let disc = as_int(&w.discriminant());
            for p in good_primes(&disc, 4) {
                let n = count_points_mod_p([&a.into(), &b.into(), &c.into()], p);
                prop_assert_eq!(n % t.order() as u64, 0);
            }
            for p in &t.points {
                prop_assert!(w.is_torsion(p));
            }
        }
    }
}
