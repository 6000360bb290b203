use legendre_rank::arith::rational::{frac, int};
use legendre_rank::arith::FactorBudget;
use legendre_rank::curve::{
    fibre_model_legendre, legendre_fibre_raw, naive_point_search, torsion_structure, CurvePoint, TorsionShape,
    WeierstrassModel,
};
use legendre_rank::Error;
use proptest::prelude::*;

#[test]
fn invariants_and_transforms() {
    let e5 = WeierstrassModel::from_ints([0, 33, 0, 32, 0]).unwrap();
    assert_eq!(e5.invariants().discriminant, int(15745024));
    let c1 = WeierstrassModel::from_ints([0, 0, 0, -1, 0]).unwrap();
    assert_eq!((c1.invariants().discriminant, c1.invariants().j), (int(64), int(1728)));
    assert_eq!(WeierstrassModel::from_ints([0, 1, 0, 0, 0]), Err(Error::Singular));
}

#[test]
fn legendre_fibres() {
    let f = fibre_model_legendre(&frac(1, 2)).unwrap();
    assert_eq!(f.model, WeierstrassModel::from_ints([0, 6, 0, 8, 0]).unwrap());
    assert!(matches!(fibre_model_legendre(&int(1)), Err(Error::SingularFibre(_))));
}

#[test]
fn torsion_and_search() {
    let e5 = WeierstrassModel::from_ints([0, 33, 0, 32, 0]).unwrap();
    let t = torsion_structure(&e5, &FactorBudget::default()).unwrap();
    assert_eq!(t.shape, TorsionShape::TwoTimes(1));
    let pts = naive_point_search(&e5, 1000).unwrap();
    assert_eq!(pts.len(), 3);
    let c5 = WeierstrassModel::from_ints([0, 0, 0, -25, 0]).unwrap();
    assert!(naive_point_search(&c5, 50).unwrap().contains(&CurvePoint::affine(int(-4), int(6))));
    let sum = e5
        .point_add(&CurvePoint::affine(int(0), int(0)), &CurvePoint::affine(int(-1), int(0)))
        .unwrap();
    assert_eq!(sum, CurvePoint::affine(int(-32), int(0)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fibre_transform_is_an_isomorphism(m in -60i64..60, n in 1i64..60) {
        let b = frac(m, n);
        prop_assume!(b != int(0) && b != int(1));
        let f = fibre_model_legendre(&b).unwrap();
        let raw = legendre_fibre_raw(&b).unwrap();
        prop_assert_eq!(raw.apply_transform(&f.transform), f.model.clone());
        prop_assert_eq!(raw.invariants().j, f.model.invariants().j);
    }

    #[test]
    fn found_points_lie_on_the_curve(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let w = match WeierstrassModel::from_ints([0, a, 0, b, c]) {
            Ok(w) => w,
            Err(_) => return Ok(()),
        };
        for p in naive_point_search(&w, 40).unwrap() {
            prop_assert!(w.is_on_curve(&p));
        }
        let t = torsion_structure(&w, &FactorBudget::default()).unwrap();
        prop_assert!(t.shape.is_mazur());
        for g in &t.generators {
            prop_assert!(w.is_torsion(g));
        }
    }
}
