use legendre_rank::arith::rational::int;
use legendre_rank::arith::FactorBudget;
use legendre_rank::curve::WeierstrassModel;
use legendre_rank::descent::{
    complete_two_selmer, descent_analysis, selmer_inequality_check, sequence_dimension_check, two_isogeny_selmer,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn small_rank_zero_curves() {
    let b = FactorBudget::default();
    for e in [[-1, 0, 1], [0, -1, -32], [0, -1, -2]] {
        let r = complete_two_selmer(&bi(e[0]), &bi(e[1]), &bi(e[2]), &b).unwrap();
        assert_eq!(r.dim_two, Some(2), "{e:?}");
    }
}

#[test]
fn selmer_serialization_sorted() {
    let r = two_isogeny_selmer(&bi(0), &bi(-25), &FactorBudget::default()).unwrap();
    let mut sorted = r.theta_classes.clone();
    sorted.sort();
    assert_eq!(r.theta_classes, sorted);
    let js = serde_json::to_value(&r).unwrap();
    assert!(js["theta_classes"].is_array());
}

#[test]
fn sequence_bookkeeping() {
    let b = FactorBudget::default();
    let e5 = WeierstrassModel::from_ints([0, 33, 0, 32, 0]).unwrap();
    assert_eq!(sequence_dimension_check(&e5, 0, &b), Ok(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn descent_invariants(a in -20i64..=20, b in -20i64..=20) {
        prop_assume!(b != 0 && a * a - 4 * b != 0);
        let budget = FactorBudget::default();
        let r = two_isogeny_selmer(&bi(a), &bi(b), &budget).unwrap();
        prop_assert!(r.theta_classes.contains(&bi(1)));
        prop_assert!(r.theta_dual_classes.contains(&bi(1)));
        prop_assert_eq!(r.theta_classes.len(), 1usize << r.dim_theta);
        if let Some(d2) = r.dim_two {
            prop_assert!(d2 >= 2);
            prop_assert!(d2 <= r.dim_theta + r.dim_theta_dual);
        }
        prop_assert!(selmer_inequality_check(&bi(a), &bi(b), &budget).unwrap().holds);
        let w = WeierstrassModel::cubic(int(a), int(b), int(0)).unwrap();
        let d = descent_analysis(&w, 30, &budget).unwrap();
        prop_assert!(d.interval.lower <= d.interval.upper);
        for p in &d.points {
            prop_assert!(w.is_on_curve(p));
        }
    }
}
