//! Rank-zero certificates for `E_q: y^2 = x(x+1)(x+2^q)` with `2^q - 1` prime.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::FactorBudget;
use crate::curve::{mersenne_fibre, naive_point_search, CurvePoint, WeierstrassModel};
use crate::descent::{complete_two_selmer, thm23_bound, Thm23Bound};
use crate::error::{Error, Result};
use crate::local::{reduction_profile, split_multiplicative_test, ReductionProfile, Splitting};
use crate::mersenne::{lucas_lehmer, Verdict};
use crate::parity::{global_root_number, parity_consistency, Parity, RootNumberReport, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// Checked by exact computation in this run.
    Computed,
    /// A theorem whose hypotheses were checked in this run.
    DerivedTheorem,
    /// Imported without proof.
    ExternalTheorem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub claim: String,
    pub justification: Justification,
    /// Indices of earlier steps this one uses.
    pub uses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub q: u32,
    pub model: WeierstrassModel,
    pub profile: ReductionProfile,
    pub split_at_two: bool,
    pub nonsplit_at_p: bool,
    pub thm23: Thm23Bound,
    pub root_number: RootNumberReport,
    pub steps: Vec<Step>,
    pub concluded_rank: u32,
}

impl RankCertificate {
    /// Every step refers only to earlier steps.
    pub fn is_well_ordered(&self) -> bool {
        self.steps.iter().enumerate().all(|(i, s)| s.uses.iter().all(|&j| j < i))
    }
}

struct Chain(Vec<Step>);

impl Chain {
    fn push(&mut self, claim: String, justification: Justification, uses: &[usize]) -> usize {
        self.0.push(Step { claim, justification, uses: uses.to_vec() });
        self.0.len() - 1
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::AssertionFailed(what()))
    }
}

fn mersenne_precondition(q: u32) -> Result<BigInt> {
    if q < 5 {
        return Err(Error::PreconditionFailed(format!("q = {q} is below 5")));
    }
    let ll = lucas_lehmer(q).map_err(|_| Error::PreconditionFailed(format!("q = {q} is not prime")))?;
    if ll.verdict == Verdict::Composite {
        return Err(Error::PreconditionFailed(format!("2^{q}-1 composite")));
    }
    Ok(BigInt::from(ll.mersenne))
}

pub fn prove_rank_zero(q: u32, budget: &FactorBudget) -> Result<RankCertificate> {
    let p = mersenne_precondition(q)?;
    let model = mersenne_fibre(q);
    let profile = reduction_profile(&model, budget)?;
    let two = BigInt::from(2);
    let mut chain = Chain(Vec::new());

    let s0 = chain.push(format!("2^{q}-1 = {p} is prime (Lucas-Lehmer, re-tested)"), Justification::Computed, &[]);
    check(profile.bad_primes() == vec![two.clone(), p.clone()], || {
        format!("bad primes {:?}, expected [2, {p}]", profile.bad_primes())
    })?;
    let at2 = profile.at(&two).expect("checked");
    let atp = profile.at(&p).expect("checked");
    let split_at_two = split_multiplicative_test(&at2.minimal_model, &at2.place)? == Splitting::Split;
    let nonsplit_at_p = split_multiplicative_test(&atp.minimal_model, &atp.place)? == Splitting::Nonsplit;
    check(split_at_two, || "reduction at 2 is not split multiplicative".into())?;
    check(nonsplit_at_p, || format!("reduction at {p} is not nonsplit multiplicative"))?;
    check(at2.disc_valuation == 2 * q - 8, || {
        format!("v_2(disc_min) = {}, expected {}", at2.disc_valuation, 2 * q - 8)
    })?;
    check(atp.disc_valuation == 2, || format!("v_p(disc_min) = {}, expected 2", atp.disc_valuation))?;
    let s1 = chain.push(
        format!(
            "Tate's algorithm: split multiplicative I{} at 2, nonsplit multiplicative I2 at {p}, good elsewhere",
            at2.disc_valuation
        ),
        Justification::Computed,
        &[s0],
    );
    check(profile.alpha == 0 && profile.mu == 2, || {
        format!("alpha = {}, mu = {}, expected 0 and 2", profile.alpha, profile.mu)
    })?;
    let s2 = chain.push("alpha = 0, mu = 2".into(), Justification::Computed, &[s1]);

    let thm23 = thm23_bound(&profile)?;
    check(thm23.bound == 1, || format!("2 alpha + mu - 1 = {}, expected 1", thm23.bound))?;
    let s3 = chain.push(
        "rank <= 2 alpha + mu - 1 = 1 for a curve with a rational 2-isogeny".into(),
        Justification::DerivedTheorem,
        &[s2],
    );
    let s4 = chain.push(
        "if rank = 1 the bound is attained, so the 2-primary part of Sha is trivial, in particular finite".into(),
        Justification::DerivedTheorem,
        &[s3],
    );

    let root_number = global_root_number(&profile)?;
    check(root_number.global == Sign::Plus, || format!("w = {}, expected +1", root_number.global))?;
    let s5 = chain.push("w = -w_2 w_p = -(-1)(+1) = +1".into(), Justification::Computed, &[s1]);
    let s6 = chain.push(
        "if the 2-primary part of Sha is finite then (-1)^rank = w (Monsky)".into(),
        Justification::ExternalTheorem,
        &[],
    );
    check(parity_consistency(1, root_number.global) == Parity::Inconsistent, || "rank 1 is parity-consistent".into())?;
    let s7 = chain.push(
        "rank = 1 would give (-1)^1 = w = +1, a contradiction".into(),
        Justification::Computed,
        &[s4, s5, s6],
    );
    chain.push("rank E_q(Q) = 0".into(), Justification::Computed, &[s3, s7]);

    Ok(RankCertificate {
        q,
        model,
        profile,
        split_at_two,
        nonsplit_at_p,
        thm23,
        root_number,
        steps: chain.0,
        concluded_rank: 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankConfirmation {
    pub q: u32,
    pub dim_two: u32,
    pub rank_upper_bound: i64,
    pub search_height: u64,
    pub points_found: Vec<CurvePoint>,
    pub only_torsion: bool,
    pub confirmed: bool,
}

/// Rank zero for `E_q` from complete 2-descent alone, plus a point search sanity check.
pub fn independent_rank_check(q: u32, height: u64, budget: &FactorBudget) -> Result<RankConfirmation> {
    mersenne_precondition(q)?;
    let (e2, e3) = (BigInt::from(-1), -(BigInt::from(1) << q));
    let report = complete_two_selmer(&BigInt::from(0), &e2, &e3, budget)?;
    let dim_two = report.dim_two.expect("full 2-torsion");
    let model = mersenne_fibre(q);
    let points = naive_point_search(&model, height)?;
    let only_torsion = points.iter().all(|p| model.is_torsion(p));
    let rank_upper_bound = dim_two as i64 - 2;
    Ok(RankConfirmation {
        q,
        dim_two,
        rank_upper_bound,
        search_height: height,
        points_found: points,
        only_torsion,
        confirmed: rank_upper_bound == 0 && only_torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q5_certificate() {
        let c = prove_rank_zero(5, &FactorBudget::default()).unwrap();
        assert_eq!((c.profile.alpha, c.profile.mu, c.thm23.bound), (0, 2, 1));
        assert_eq!(c.root_number.global, Sign::Plus);
        assert_eq!(c.concluded_rank, 0);
        assert!(c.is_well_ordered());
        assert!(c.steps.iter().any(|s| s.justification == Justification::ExternalTheorem));
    }

    #[test]
    fn preconditions() {
        let b = FactorBudget::default();
        assert!(matches!(prove_rank_zero(4, &b), Err(Error::PreconditionFailed(_))));
        assert!(matches!(prove_rank_zero(11, &b), Err(Error::PreconditionFailed(m)) if m.contains("composite")));
        assert!(matches!(prove_rank_zero(3, &b), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn q5_confirmation() {
        let c = independent_rank_check(5, 100, &FactorBudget::default()).unwrap();
        assert_eq!(c.dim_two, 2);
        assert!(c.confirmed);
        assert_eq!(c.points_found.len(), 3);
    }
}
