//! The Neumann–Setzer family `y^2 = x^3 + b x^2 - 16 x` with `b^2 + 64` prime.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, FactorBudget};
use crate::curve::{fibre_model_neumann_setzer, torsion_structure, CurvePoint, TorsionShape, WeierstrassModel};
use crate::descent::{descent_analysis, RankInterval};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub b: i64,
    #[serde(with = "crate::arith::rational::serde_bigint")]
    pub prime: BigInt,
    pub model: WeierstrassModel,
    pub torsion: Option<TorsionShape>,
    pub interval: Option<RankInterval>,
    /// A point of infinite order, when one was found.
    pub witness: Option<CurvePoint>,
    /// Torsion `Z/2` and rank interval `[0, 0]`.
    pub agrees: bool,
    pub note: Option<String>,
}

/// `b = residue (mod 4)`, `|b| <= limit`, `b^2 + 64` prime, ascending.
pub fn survey_parameters(limit: i64, residue: i64) -> Vec<i64> {
    (-limit..=limit)
        .filter(|b| b.rem_euclid(4) == residue && is_prime(&BigInt::from(b * b + 64)))
        .collect()
}

pub fn survey_record(b: i64, search_height: u64, budget: &FactorBudget) -> SurveyRecord {
    let model = fibre_model_neumann_setzer(&BigInt::from(b));
    let mut rec = SurveyRecord {
        b,
        prime: BigInt::from(b * b + 64),
        model: model.clone(),
        torsion: None,
        interval: None,
        witness: None,
        agrees: false,
        note: None,
    };
    let run = |rec: &mut SurveyRecord| -> Result<()> {
        rec.torsion = Some(torsion_structure(&model, budget)?.shape);
        let analysis = descent_analysis(&model, search_height, budget)?;
        rec.witness = analysis.points.iter().find(|p| !model.is_torsion(p)).cloned();
        rec.interval = Some(analysis.interval);
        Ok(())
    };
    if let Err(e) = run(&mut rec) {
        rec.note = Some(e.to_string());
    }
    rec.agrees = rec.torsion == Some(TorsionShape::Cyclic(2))
        && rec.interval.as_ref().is_some_and(|i| i.lower == 0 && i.upper == 0);
    rec
}

pub fn neumann_setzer_survey(limit: i64, residue: i64, search_height: u64, budget: &FactorBudget) -> Vec<SurveyRecord> {
    use rayon::prelude::*;
    survey_parameters(limit, residue).par_iter().map(|&b| survey_record(b, search_height, budget)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        let ps = survey_parameters(10, 3);
        assert!(ps.contains(&3) && ps.contains(&7));
        assert!(!ps.contains(&5));
        assert!(ps.iter().all(|b| b.rem_euclid(4) == 3));
    }

    #[test]
    fn three_mod_four_has_points_of_infinite_order() {
        let r = survey_record(3, 50, &FactorBudget::default());
        assert_eq!(r.torsion, Some(TorsionShape::Cyclic(2)));
        assert!(!r.agrees);
        assert_eq!(r.interval.map(|i| (i.lower, i.upper)), Some((1, 1)));
        assert!(r.witness.is_some());
    }

    #[test]
    fn one_mod_four_has_rank_zero() {
        for b in [-3, -7, 5, 13] {
            let r = survey_record(b, 50, &FactorBudget::default());
            assert_eq!(r.torsion, Some(TorsionShape::Cyclic(2)));
            assert!(r.agrees, "b = {b}: {r:?}");
            assert!(r.witness.is_none());
        }
    }
}
