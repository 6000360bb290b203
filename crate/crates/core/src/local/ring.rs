//! Discrete valuation rings seen through what Tate's algorithm needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::place::Place;
use crate::arith::rational::{big, int, is_square};
use crate::arith::residue::{jacobi_big, mod_inverse};
use crate::arith::valuation::rational_valuation;
use crate::arith::{Poly, Rational, Valuation};
use crate::curve::model::Coeff;
use crate::error::{Error, Result};

/// A DVR with a chosen uniformizer and canonical lifts of residues.
pub trait LocalRing {
    type E: Coeff;

    fn place(&self) -> Place;
    /// 0 for residue fields of characteristic zero.
    fn residue_characteristic(&self) -> u64;
    fn valuation(&self, x: &Self::E) -> Valuation;
    fn uniformizer(&self) -> Self::E;
    /// `x / pi^k`, which must be exact.
    fn div_pi_pow(&self, x: &Self::E, k: u32) -> Result<Self::E>;
    /// The canonical lift of the residue of `x`.
    fn reduce(&self, x: &Self::E) -> Result<Self::E>;
    /// A lift of the inverse of the residue of a unit `x`.
    fn residue_inverse(&self, x: &Self::E) -> Result<Self::E>;
    /// A lift of the `p`-th root of the residue of `x`, `p` the residue characteristic.
    fn residue_root(&self, x: &Self::E) -> Result<Self::E>;
    /// Whether `a X^2 + b X + c` has a root in the residue field.
    fn quadratic_has_root(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Result<bool>;

    fn divides(&self, x: &Self::E) -> bool {
        self.valuation(x) > Valuation::Finite(0)
    }
}

/// `Z_(p)`, with elements the `p`-integral rationals.
#[derive(Clone, Debug)]
pub struct PadicRing {
    p: BigInt,
}

impl PadicRing {
    pub fn new(place: &Place) -> Result<PadicRing> {
        match place {
            Place::Prime(p) => Ok(PadicRing { p: p.clone() }),
            other => Err(Error::UnsupportedPlace(format!("{other} is not a rational prime"))),
        }
    }

    fn residue(&self, x: &Rational) -> Result<BigInt> {
        let den = x.denom();
        let inv = mod_inverse(den, &self.p)
            .ok_or_else(|| Error::Domain(format!("{x} is not {}-integral", self.p)))?;
        Ok((x.numer() * inv).mod_floor(&self.p))
    }
}

impl LocalRing for PadicRing {
    type E = Rational;

    fn place(&self) -> Place {
        Place::Prime(self.p.clone())
    }

    fn residue_characteristic(&self) -> u64 {
        u64::try_from(&self.p).unwrap_or(u64::MAX)
    }

    fn valuation(&self, x: &Rational) -> Valuation {
        rational_valuation(x, &self.p)
    }

    fn uniformizer(&self) -> Rational {
        big(self.p.clone())
    }

    fn div_pi_pow(&self, x: &Rational, k: u32) -> Result<Rational> {
        Ok(x / big(num_traits::pow(self.p.clone(), k as usize)))
    }

    fn reduce(&self, x: &Rational) -> Result<Rational> {
        Ok(big(self.residue(x)?))
    }

    fn residue_inverse(&self, x: &Rational) -> Result<Rational> {
        let r = self.residue(x)?;
        mod_inverse(&r, &self.p)
            .map(big)
            .ok_or_else(|| Error::Domain(format!("{x} is not a unit at {}", self.p)))
    }

    fn residue_root(&self, x: &Rational) -> Result<Rational> {
        // Frobenius is the identity on F_p.
        self.reduce(x)
    }

    fn quadratic_has_root(&self, a: &Rational, b: &Rational, c: &Rational) -> Result<bool> {
        let (a, b, c) = (self.residue(a)?, self.residue(b)?, self.residue(c)?);
        if a.is_zero() {
            return Ok(!b.is_zero() || c.is_zero());
        }
        if self.p == BigInt::from(2) {
            // x = 0 or x = 1.
            return Ok(c.is_zero() || (&a + &b + &c).is_even());
        }
        let disc = (&b * &b - BigInt::from(4) * &a * &c).mod_floor(&self.p);
        Ok(disc.is_zero() || jacobi_big(&disc, &self.p) == 1)
    }
}

/// `Q[t]` localized at a monic irreducible `pi`; residue field `Q[t]/(pi)`.
#[derive(Clone, Debug)]
pub struct PolyPlaceRing {
    pi: Poly,
    place: Place,
}

impl PolyPlaceRing {
    /// `place` labels the ring in output; `pi` is the uniformizer actually used.
    pub fn new(pi: Poly, place: Place) -> PolyPlaceRing {
        PolyPlaceRing { pi, place }
    }

    fn degree(&self) -> usize {
        self.pi.degree().unwrap_or(0)
    }

    /// Whether a residue is a square in `Q[t]/(pi)`.
    fn residue_is_square(&self, z: &Poly) -> Result<bool> {
        let z = z.rem(&self.pi);
        match self.degree() {
            1 => Ok(is_square(&z.coeff(0))),
            2 => {
                // pi = t^2 + p1 t + p0, t = (-p1 + sqrt(delta)) / 2, z = A + B sqrt(delta).
                let (p0, p1) = (self.pi.coeff(0), self.pi.coeff(1));
                let delta = &p1 * &p1 - int(4) * &p0;
                let (z0, z1) = (z.coeff(0), z.coeff(1));
                let a = &z0 - &z1 * &p1 / int(2);
                let b = &z1 / int(2);
                if b.is_zero() {
                    return Ok(is_square(&a) || is_square(&(&a / &delta)));
                }
                let norm = &a * &a - &delta * &b * &b;
                let Some(n) = crate::arith::rational::rational_sqrt(&norm) else {
                    return Ok(false);
                };
                Ok([&a + &n, &a - &n].iter().any(|x2| {
                    let x2 = x2 / int(2);
                    !x2.is_zero() && is_square(&x2)
                }))
            }
            d => Err(Error::UnsupportedResidueField(format!("square test in degree {d} extension"))),
        }
    }
}

impl LocalRing for PolyPlaceRing {
    type E = Poly;

    fn place(&self) -> Place {
        self.place.clone()
    }

    fn residue_characteristic(&self) -> u64 {
        0
    }

    fn valuation(&self, x: &Poly) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let mut v = 0;
        let mut cur = x.clone();
        loop {
            let (q, r) = cur.div_rem(&self.pi);
            if !r.is_zero() {
                return Valuation::Finite(v);
            }
            cur = q;
            v += 1;
        }
    }

    fn uniformizer(&self) -> Poly {
        self.pi.clone()
    }

    fn div_pi_pow(&self, x: &Poly, k: u32) -> Result<Poly> {
        let (q, r) = x.div_rem(&self.pi.pow(k));
        if !r.is_zero() {
            return Err(Error::InconsistentData(format!("{x} is not divisible by ({})^{k}", self.pi)));
        }
        Ok(q)
    }

    fn reduce(&self, x: &Poly) -> Result<Poly> {
        Ok(x.rem(&self.pi))
    }

    fn residue_inverse(&self, x: &Poly) -> Result<Poly> {
        x.rem(&self.pi)
            .inverse_mod(&self.pi)
            .ok_or_else(|| Error::Domain(format!("{x} is not a unit at {}", self.place)))
    }

    fn residue_root(&self, _x: &Poly) -> Result<Poly> {
        Err(Error::UnsupportedResidueField("p-th root in characteristic 0".into()))
    }

    fn quadratic_has_root(&self, a: &Poly, b: &Poly, c: &Poly) -> Result<bool> {
        let (a, b, c) = (a.rem(&self.pi), b.rem(&self.pi), c.rem(&self.pi));
        if a.is_zero() {
            return Ok(!b.is_zero() || c.is_zero());
        }
        let disc = &(&b * &b) - &(&Poly::constant(int(4)) * &(&a * &c));
        self.residue_is_square(&disc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn padic(p: i64) -> PadicRing {
        PadicRing::new(&Place::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn padic_basics() {
        let r = padic(7);
        assert_eq!(r.valuation(&int(98)), Valuation::Finite(2));
        assert_eq!(r.reduce(&crate::arith::rational::frac(1, 2)).unwrap(), int(4));
        assert_eq!(r.residue_inverse(&int(3)).unwrap(), int(5));
        assert!(r.quadratic_has_root(&int(1), &int(0), &int(-2)).unwrap());
        assert!(!r.quadratic_has_root(&int(1), &int(0), &int(1)).unwrap());
        let two = padic(2);
        assert!(!two.quadratic_has_root(&int(1), &int(1), &int(1)).unwrap());
        assert!(two.quadratic_has_root(&int(1), &int(1), &int(0)).unwrap());
    }

    #[test]
    fn quadratic_residue_field() {
        let pi = Poly::from_ints(&[64, 0, 1]);
        let r = PolyPlaceRing::new(pi.clone(), Place::Poly(pi));
        // t^2 = -64, so t is a square root of -64 and t/8 of -1.
        assert!(r.residue_is_square(&Poly::from_ints(&[-64])).unwrap());
        assert!(r.residue_is_square(&Poly::from_ints(&[-1])).unwrap());
        assert!(!r.residue_is_square(&Poly::from_ints(&[2])).unwrap());
        // t = 8i = (2 + 2i)^2, while 1 + t has norm 65.
        assert!(r.residue_is_square(&Poly::from_ints(&[0, 1])).unwrap());
        assert!(!r.residue_is_square(&Poly::from_ints(&[1, 1])).unwrap());
        // (1 + t)^2 = 1 + 2t + t^2 = -63 + 2t.
        assert!(r.residue_is_square(&Poly::from_ints(&[-63, 2])).unwrap());
    }

    proptest! {
        #[test]
        fn squares_are_squares_in_quadratic_field(x0 in -20i64..20, x1 in -20i64..20, c in 1i64..30) {
            // pi = t^2 + c has no rational root.
            let pi = Poly::from_ints(&[c, 0, 1]);
            let r = PolyPlaceRing::new(pi.clone(), Place::Poly(pi));
            let z = Poly::from_ints(&[x0, x1]);
            prop_assert!(r.residue_is_square(&(&z * &z)).unwrap());
        }

        #[test]
        fn padic_quadratic_matches_brute_force(a in 0i64..11, b in 0i64..11, c in 0i64..11) {
            let r = padic(11);
            let brute = (0..11).any(|x| (a * x * x + b * x + c) % 11 == 0);
            prop_assert_eq!(r.quadratic_has_root(&int(a), &int(b), &int(c)).unwrap(), brute);
        }
    }
}
