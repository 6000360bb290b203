//! Complete 2-descent on `y^2 = (x - e1)(x - e2)(x - e3)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::f2::{self, Echelon};
use super::isogeny::{prime_support, two_isogeny_selmer, ClassBasis, SelmerReport};
use super::local::{class_width, rational_class, LocalPlace};
use crate::arith::rational::big;
use crate::arith::{FactorBudget, Rational};
use crate::curve::CurvePoint;
use crate::error::{Error, Result};

/// Bound on the numerators tried when searching for local points.
const LOCAL_SEARCH_LIMIT: i64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteSelmer {
    pub dim: u32,
    /// Representatives `(d1, d2)` of the Selmer group, sorted.
    pub pairs: Vec<[String; 2]>,
}

/// Three distinct integer roots with the Kummer map `P -> (x - e1, x - e2)`.
#[derive(Clone, Debug)]
pub struct FullTwoTorsion {
    pub roots: [BigInt; 3],
}

impl FullTwoTorsion {
    pub fn new(e1: BigInt, e2: BigInt, e3: BigInt) -> Result<FullTwoTorsion> {
        if e1 == e2 || e1 == e3 || e2 == e3 {
            return Err(Error::Singular);
        }
        Ok(FullTwoTorsion { roots: [e1, e2, e3] })
    }

    fn cubic(&self, x: &Rational) -> Rational {
        self.roots.iter().fold(Rational::one(), |acc, e| acc * (x - big(e.clone())))
    }

    /// Kummer image of a point as a pair of nonzero rationals.
    pub fn kummer(&self, p: &CurvePoint) -> (Rational, Rational) {
        let [e1, e2, e3] = &self.roots;
        let d = |a: &BigInt, b: &BigInt| big(a - b);
        match p {
            CurvePoint::Infinity => (Rational::one(), Rational::one()),
            CurvePoint::Affine { x, .. } => {
                if x == &big(e1.clone()) {
                    (d(e1, e2) * d(e1, e3), d(e1, e2))
                } else if x == &big(e2.clone()) {
                    (d(e2, e1), d(e2, e1) * d(e2, e3))
                } else {
                    (x - big(e1.clone()), x - big(e2.clone()))
                }
            }
        }
    }

    fn torsion_points(&self) -> Vec<CurvePoint> {
        self.roots.iter().map(|e| CurvePoint::affine(big(e.clone()), Rational::zero())).collect()
    }

    fn local_vector(&self, pair: &(Rational, Rational), place: &LocalPlace) -> u128 {
        let w = class_width(place);
        rational_class(&pair.0, place) | rational_class(&pair.1, place) << w
    }

    /// Image of `E(Q_v)` in `(Q_v^*/Q_v^{*2})^2`.
    fn local_image(&self, place: &LocalPlace) -> Result<Echelon> {
        let target = match place {
            None => 1,
            Some(p) if p == &BigInt::from(2) => 3,
            Some(_) => 2,
        };
        let mut ech = Echelon::default();
        for t in self.torsion_points() {
            ech.insert(self.local_vector(&self.kummer(&t), place));
        }
        let Some(p) = place else {
            return Ok(ech);
        };
        let mut bound = 8i64;
        let mut done = -1i64;
        while ech.dim() < target {
            if done >= LOCAL_SEARCH_LIMIT {
                return Err(Error::LocalUndecided { prime: p.clone(), class: "local Kummer image".into() });
            }
            for n in -bound..=bound {
                if n.abs() <= done {
                    continue;
                }
                let mut den = BigInt::one();
                for _ in 0..3 {
                    let x = Rational::new(BigInt::from(n), den.clone());
                    den = &den * p * p;
                    if self.roots.iter().any(|e| big(e.clone()) == x) {
                        continue;
                    }
                    if rational_class(&self.cubic(&x), place) != 0 {
                        continue;
                    }
                    let pair = (&x - big(self.roots[0].clone()), &x - big(self.roots[1].clone()));
                    ech.insert(self.local_vector(&pair, place));
                    if ech.dim() >= target {
                        return Ok(ech);
                    }
                }
            }
            done = bound;
            bound *= 4;
        }
        Ok(ech)
    }

    /// `{2} + primes((e1 - e2)(e1 - e3)(e2 - e3))`.
    pub(crate) fn class_basis(&self, budget: &FactorBudget) -> Result<ClassBasis> {
        let [e1, e2, e3] = &self.roots;
        let disc = (e1 - e2) * (e1 - e3) * (e2 - e3) * 2;
        Ok(ClassBasis { primes: prime_support(&disc, budget)? })
    }

    /// The 2-Selmer group as the kernel of the global-to-local map on classes supported on `S`.
    pub fn selmer(&self, budget: &FactorBudget) -> Result<CompleteSelmer> {
        let basis = self.class_basis(budget)?;
        let n = basis.dim();
        let mut places: Vec<LocalPlace> = vec![None];
        places.extend(basis.primes.iter().cloned().map(Some));
        let total: u32 = places.iter().map(|v| 2 * class_width(v)).sum();
        if total > 128 || 2 * n > 64 {
            return Err(Error::Domain(format!("too many places ({}) for complete descent", places.len())));
        }
        let images: Vec<Echelon> = places.iter().map(|v| self.local_image(v)).collect::<Result<_>>()?;
        let gens: Vec<(Rational, Rational)> = (0..n)
            .map(|i| (big(basis.value(1 << i)), Rational::one()))
            .chain((0..n).map(|i| (Rational::one(), big(basis.value(1 << i)))))
            .collect();
        let vectors: Vec<u128> = gens
            .iter()
            .map(|g| {
                let mut v = 0u128;
                let mut shift = 0;
                for (place, ech) in places.iter().zip(&images) {
                    v |= ech.reduce(self.local_vector(g, place)) << shift;
                    shift += 2 * class_width(place);
                }
                v
            })
            .collect();
        let ker = f2::kernel(&vectors);
        let mask = (1u64 << n) - 1;
        let mut pairs: Vec<(BigInt, BigInt)> = f2::span(&ker)
            .into_iter()
            .map(|m| (basis.value(m & mask), basis.value(m >> n)))
            .collect();
        pairs.sort();
        Ok(CompleteSelmer {
            dim: ker.len() as u32,
            pairs: pairs.into_iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        })
    }

    /// Dimension of the span of the Kummer images of `points`.
    pub fn image_rank(&self, points: &[CurvePoint]) -> u32 {
        let mut ech = Echelon::default();
        let basis_primes = self.support_of(points);
        let basis = ClassBasis { primes: basis_primes };
        for p in points.iter().chain(self.torsion_points().iter()) {
            let (a, b) = self.kummer(p);
            let (ma, mb) = (basis.mask(&a), basis.mask(&b));
            if let (Some(ma), Some(mb)) = (ma, mb) {
                ech.insert(u128::from(ma) | u128::from(mb) << 64);
            }
        }
        ech.dim() as u32
    }

    /// Primes appearing in the Kummer images, found by trial division against the
    /// image numerators and denominators themselves.
    fn support_of(&self, points: &[CurvePoint]) -> Vec<BigInt> {
        let mut primes: Vec<BigInt> = Vec::new();
        let budget = FactorBudget::default();
        for p in points.iter().chain(self.torsion_points().iter()) {
            let (a, b) = self.kummer(p);
            for x in [a, b] {
                for part in [x.numer().clone(), x.denom().clone()] {
                    if part.is_zero() || part.abs().is_one() {
                        continue;
                    }
                    if let Ok(ps) = prime_support(&part, &budget) {
                        primes.extend(ps);
                    }
                }
            }
        }
        primes.sort();
        primes.dedup();
        primes.truncate(63);
        primes
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == self.cubic(x),
        }
    }
}

/// Complete 2-descent on `y^2 = (x - e1)(x - e2)(x - e3)`, together with the isogeny
/// descent through `(e1, 0)`.
pub fn complete_two_selmer(e1: &BigInt, e2: &BigInt, e3: &BigInt, budget: &FactorBudget) -> Result<SelmerReport> {
    FullTwoTorsion::new(e1.clone(), e2.clone(), e3.clone())?;
    let (f2_, f3) = (e2 - e1, e3 - e1);
    two_isogeny_selmer(&-(&f2_ + &f3), &(f2_ * f3), budget)
}
