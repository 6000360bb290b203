use legendre_rank::arith::rational::int;
use legendre_rank::arith::FactorBudget;
use legendre_rank::parity::Parity;
use legendre_rank::pipeline::{
    independent_rank_check, prove_rank_zero, scan_legendre_fibres, Classification, ScanParams,
};

#[test]
fn certificate_and_confirmation_agree() {
    let b = FactorBudget::default();
    for q in [5, 7, 13] {
        let c = prove_rank_zero(q, &b).unwrap();
        let k = independent_rank_check(q, 1000, &b).unwrap();
        assert_eq!(c.concluded_rank, 0);
        assert!(k.confirmed, "q = {q}");
    }
}

#[test]
fn scan_is_deterministic_and_parity_holds() {
    let b = FactorBudget::default();
    let params = ScanParams::new(16);
    let s1 = scan_legendre_fibres(&params, &b);
    let s2 = scan_legendre_fibres(&params, &b);
    assert_eq!(serde_json::to_string(&s1).unwrap(), serde_json::to_string(&s2).unwrap());
    assert!(s1.records.iter().all(|r| r.parity != Some(Parity::Inconsistent)));
    let n = s1.counts[&Classification::NMember];
    let j = s1.counts[&Classification::JMember];
    assert!(n > 0 && j > 0);
    for r in &s1.records {
        if let Some(i) = &r.interval {
            assert_eq!(r.classification == Classification::NMember, i.upper == 0);
            assert_eq!(r.classification == Classification::JMember, i.lower >= 1);
        }
    }
    assert!(s1.records.iter().all(|r| r.b != int(0) && r.b != int(1)));
}
