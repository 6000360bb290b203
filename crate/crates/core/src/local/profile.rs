//! Reduction data of curves over Q.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::kodaira::{Kodaira, ReductionClass, Splitting};
use super::place::Place;
use super::ring::{LocalRing, PadicRing};
use super::tate::{singular_point_to_origin, tate};
use crate::arith::{factorize, FactorBudget, Valuation};
use crate::arith::rational::int;
use crate::curve::WeierstrassModel;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    pub place: Place,
    pub kodaira: Kodaira,
    pub minimal_model: WeierstrassModel,
    pub disc_valuation: u32,
    pub class: ReductionClass,
}

/// Tate's algorithm at a rational prime.
pub fn tate_reduce(w: &WeierstrassModel, place: &Place) -> Result<ReductionData> {
    let ring = PadicRing::new(place)?;
    let local = tate(&ring, w)?;
    Ok(ReductionData {
        place: place.clone(),
        kodaira: local.kodaira,
        minimal_model: local.minimal,
        disc_valuation: local.disc_valuation,
        class: local.class,
    })
}

/// Whether the tangent directions at the node are rational over the residue field.
pub fn split_multiplicative_test(wmin: &WeierstrassModel, place: &Place) -> Result<Splitting> {
    let ring = PadicRing::new(place)?;
    let disc_v = ring.valuation(&wmin.discriminant());
    let (c4, _) = wmin.c_invariants();
    if disc_v == Valuation::Finite(0) || ring.divides(&c4) || !wmin.is_integral() {
        return Err(Error::NotMultiplicative);
    }
    let moved = singular_point_to_origin(&ring, wmin)?;
    let split = ring.quadratic_has_root(&int(1), moved.a1(), &-moved.a2())?;
    Ok(if split { Splitting::Split } else { Splitting::Nonsplit })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionProfile {
    pub model: WeierstrassModel,
    /// Primes dividing the discriminant of `model`, ascending.
    #[serde(with = "crate::arith::rational::serde_bigint_vec")]
    pub discriminant_primes: Vec<BigInt>,
    /// Places of bad reduction, ascending.
    pub places: Vec<ReductionData>,
    pub alpha: u32,
    pub mu: u32,
}

impl ReductionProfile {
    pub fn is_semistable(&self) -> bool {
        self.alpha == 0
    }

    pub fn at(&self, p: &BigInt) -> Option<&ReductionData> {
        self.places.iter().find(|d| d.place.as_prime() == Some(p))
    }

    pub fn bad_primes(&self) -> Vec<BigInt> {
        self.places.iter().filter_map(|d| d.place.as_prime().cloned()).collect()
    }

    /// Product of `p^{v_p(Δ_min)}` over bad places.
    pub fn minimal_discriminant_abs(&self) -> BigInt {
        self.places.iter().fold(BigInt::one(), |acc, d| {
            acc * num_traits::pow(d.place.as_prime().expect("prime").clone(), d.disc_valuation as usize)
        })
    }
}

/// Runs Tate's algorithm at every prime dividing the discriminant of an integral model.
pub fn reduction_profile(w: &WeierstrassModel, budget: &FactorBudget) -> Result<ReductionProfile> {
    if !w.is_integral() {
        return Err(Error::Domain(format!("model {w} is not integral")));
    }
    let disc = w.discriminant().to_integer();
    let fac = factorize(&disc.abs(), budget)?;
    let mut places = Vec::new();
    let mut discriminant_primes = Vec::new();
    for p in fac.primes() {
        discriminant_primes.push(p.clone());
        let data = tate_reduce(w, &Place::Prime(p.clone()))?;
        if !data.kodaira.is_good() {
            places.push(data);
        }
    }
    let alpha = places.iter().filter(|d| d.class == ReductionClass::Additive).count() as u32;
    let mu = places.iter().filter(|d| d.class.is_multiplicative()).count() as u32;
    Ok(ReductionProfile { model: w.clone(), discriminant_primes, places, alpha, mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::residue::kronecker_symbol;
    use crate::curve::{fibre_model_neumann_setzer, mersenne_fibre};
    use proptest::prelude::*;

    fn model(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_ints(a).unwrap()
    }

    fn at(w: &WeierstrassModel, p: i64) -> ReductionData {
        tate_reduce(w, &Place::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn mersenne_fibre_q5() {
        let w = mersenne_fibre(5);
        let two = at(&w, 2);
        assert_eq!((two.kodaira, two.disc_valuation), (Kodaira::I(2), 2));
        assert_eq!(two.class, ReductionClass::SplitMultiplicative);
        let p = at(&w, 31);
        assert_eq!((p.kodaira, p.class), (Kodaira::I(2), ReductionClass::NonsplitMultiplicative));
        let prof = reduction_profile(&w, &FactorBudget::default()).unwrap();
        assert_eq!((prof.alpha, prof.mu), (0, 2));
        assert_eq!(prof.bad_primes(), vec![BigInt::from(2), BigInt::from(31)]);
        assert_eq!(
            split_multiplicative_test(&two.minimal_model, &Place::prime(2).unwrap()).unwrap(),
            Splitting::Split
        );
        assert_eq!(
            split_multiplicative_test(&w, &Place::prime(31).unwrap()).unwrap(),
            Splitting::Nonsplit
        );
    }

    #[test]
    fn congruent_curve_is_additive_at_two() {
        let w = model([0, 0, 0, -1, 0]);
        let d = at(&w, 2);
        assert_eq!(d.class, ReductionClass::Additive);
        // 32a2: conductor 2^5, Kodaira III at 2 and v(Δ) = 6.
        assert_eq!((d.kodaira, d.disc_valuation), (Kodaira::III, 6));
        let prof = reduction_profile(&w, &FactorBudget::default()).unwrap();
        assert_eq!((prof.alpha, prof.mu), (1, 0));
    }

    #[test]
    fn neumann_setzer_b3() {
        let w = fibre_model_neumann_setzer(&BigInt::from(3));
        let prof = reduction_profile(&w, &FactorBudget::default()).unwrap();
        assert_eq!(prof.discriminant_primes, vec![BigInt::from(2), BigInt::from(73)]);
        // The -1 twist of a conductor-73 curve: additive at 2.
        assert_eq!(at(&w, 2).kodaira, Kodaira::IStar(4));
        assert_eq!(prof.bad_primes(), vec![BigInt::from(2), BigInt::from(73)]);
        assert_eq!((prof.alpha, prof.mu), (1, 1));
        // y^2 = x^3 - 3x^2 - 16x is that conductor-73 curve.
        let twin = fibre_model_neumann_setzer(&BigInt::from(-3));
        assert_eq!(at(&twin, 2).kodaira, Kodaira::I(0));
    }

    #[test]
    fn split_at_three() {
        let w = model([0, 4, 0, 3, 0]);
        assert_eq!(
            split_multiplicative_test(&w, &Place::prime(3).unwrap()).unwrap(),
            Splitting::Split
        );
        assert_eq!(
            split_multiplicative_test(&model([0, 0, 0, -1, 0]), &Place::prime(2).unwrap()),
            Err(Error::NotMultiplicative)
        );
    }

    #[test]
    fn additive_types() {
        // Standard examples with known Kodaira types.
        assert_eq!(at(&model([0, 0, 0, 0, 3]), 3).kodaira, Kodaira::II);
        assert_eq!(at(&model([0, 0, 0, 5, 0]), 5).kodaira, Kodaira::III);
        assert_eq!(at(&model([0, 0, 0, 0, 25]), 5).kodaira, Kodaira::IV);
        assert_eq!(at(&model([0, 0, 0, -25, 0]), 5).kodaira, Kodaira::IStar(0));
        assert_eq!(at(&model([0, 0, 0, 0, 125]), 5).kodaira, Kodaira::IStar(0));
        assert_eq!(at(&model([0, 0, 0, 0, 625]), 5).kodaira, Kodaira::IVStar);
        assert_eq!(at(&model([0, 0, 0, 125, 0]), 5).kodaira, Kodaira::IIIStar);
        assert_eq!(at(&model([0, 0, 0, 0, 3125]), 5).kodaira, Kodaira::IIStar);
        // Non-minimal: y^2 = x^3 + 5^6 is y^2 = x^3 + 1 after u = 5.
        let d = at(&model([0, 0, 0, 0, 15625]), 5);
        assert_eq!((d.kodaira, d.disc_valuation), (Kodaira::I(0), 0));
    }

    #[test]
    fn i_n_star() {
        // The twist by 3 of y^2 = x(x+1)(x+32), good at 3, is I0* there.
        assert_eq!(at(&model([0, 99, 0, 288, 0]), 3).kodaira, Kodaira::IStar(0));
        // y^2 = x(x+1)(x+28) is I2 at 7; its twist x(x+7)(x+196) is I2*.
        assert_eq!(at(&model([0, 29, 0, 28, 0]), 7).kodaira, Kodaira::I(2));
        let w = model([0, 203, 0, 1372, 0]);
        assert_eq!(at(&w, 7).kodaira, Kodaira::IStar(2));
    }

    proptest! {
        #[test]
        fn idempotent_and_consistent(a in -30i64..30, b in -30i64..30, c in -30i64..30) {
            let Ok(w) = WeierstrassModel::from_ints([0, a, 0, b, c]) else { return Ok(()); };
            let prof = reduction_profile(&w, &FactorBudget::default()).unwrap();
            prop_assert_eq!(prof.alpha + prof.mu, prof.places.len() as u32);
            for d in &prof.places {
                let again = tate_reduce(&d.minimal_model, &d.place).unwrap();
                prop_assert_eq!(again.kodaira, d.kodaira);
                prop_assert_eq!(again.disc_valuation, d.disc_valuation);
                let ring = PadicRing::new(&d.place).unwrap();
                prop_assert_eq!(ring.valuation(&d.minimal_model.discriminant()), Valuation::Finite(d.disc_valuation as i64));
                let p = d.place.as_prime().unwrap();
                if p > &BigInt::from(3) {
                    prop_assert_eq!(d.kodaira.euler_number(), d.disc_valuation);
                }
                if let Kodaira::I(n) = d.kodaira {
                    prop_assert_eq!(n, d.disc_valuation);
                    let (c4, c6) = d.minimal_model.c_invariants();
                    prop_assert_eq!(ring.valuation(&c4), Valuation::Finite(0));
                    if p > &BigInt::from(3) {
                        // Split iff -c6 is a square mod p.
                        let k = kronecker_symbol(&(-c6.to_integer()), p).unwrap();
                        let split = d.class == ReductionClass::SplitMultiplicative;
                        prop_assert_eq!(split, k == 1);
                    }
                }
            }
        }
    }
}
