use legendre_rank::arith::FactorBudget;
use legendre_rank::curve::{fibre_model_neumann_setzer, mersenne_fibre};
use legendre_rank::local::{
    reduction_profile, split_multiplicative_test, surface_fibre_types, Family, Kodaira, ReductionClass, Splitting,
};
use num_bigint::BigInt;

#[test]
fn mersenne_fibres_are_semistable_with_two_bad_primes() {
    for q in [5u32, 7, 13, 17, 19, 31] {
        let p: BigInt = (BigInt::from(1) << q) - 1;
        let profile = reduction_profile(&mersenne_fibre(q), &FactorBudget::default()).unwrap();
        assert_eq!(profile.bad_primes(), vec![BigInt::from(2), p.clone()]);
        let at2 = profile.at(&BigInt::from(2)).unwrap();
        let atp = profile.at(&p).unwrap();
        assert_eq!(at2.kodaira, Kodaira::I(2 * q - 8));
        assert_eq!(at2.disc_valuation, 2 * q - 8);
        assert_eq!(atp.disc_valuation, 2);
        assert_eq!(at2.class, ReductionClass::SplitMultiplicative);
        assert_eq!(atp.class, ReductionClass::NonsplitMultiplicative);
        assert_eq!(split_multiplicative_test(&atp.minimal_model, &atp.place).unwrap(), Splitting::Nonsplit);
        assert_eq!((profile.alpha, profile.mu), (0, 2));
    }
}

#[test]
fn neumann_setzer_profile() {
    let profile = reduction_profile(&fibre_model_neumann_setzer(&BigInt::from(3)), &FactorBudget::default()).unwrap();
    assert_eq!(profile.bad_primes(), vec![BigInt::from(2), BigInt::from(73)]);
    assert_eq!((profile.alpha, profile.mu), (1, 1));
}

#[test]
fn surfaces() {
    let l = surface_fibre_types(Family::Legendre).unwrap();
    let kinds: Vec<Kodaira> = l.fibres.iter().map(|f| f.kodaira).collect();
    assert_eq!(kinds, vec![Kodaira::I(2), Kodaira::I(2), Kodaira::IStar(2)]);
    assert_eq!(l.euler_sum, 12);
    assert_eq!(l.computed_singular_locus, vec!["0", "1", "inf"]);
    assert!(l.locus_discrepancy);
    let ns = surface_fibre_types(Family::NeumannSetzer).unwrap();
    assert_eq!(ns.euler_sum, 12);
}
