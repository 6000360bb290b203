//! Scans over fibres of the Legendre surface `y^2 = x(x+1)(x+t)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rational::serde_rational;
use crate::arith::{FactorBudget, Rational};
use crate::curve::{fibre_model_legendre, WeierstrassModel};
use crate::descent::{descent_analysis, RankInterval};
use crate::error::Result;
use crate::local::reduction_profile;
use crate::parity::{global_root_number, parity_consistency, Parity, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "N-member")]
    NMember,
    #[serde(rename = "J-member")]
    JMember,
    #[serde(rename = "undecided")]
    Undecided,
    #[serde(rename = "singular")]
    Singular,
    #[serde(rename = "skipped")]
    Skipped,
}

impl Classification {
    pub const ALL: [Classification; 5] = [
        Classification::NMember,
        Classification::JMember,
        Classification::Undecided,
        Classification::Singular,
        Classification::Skipped,
    ];

    /// The generic fibre has rank 0, so membership is read off the rank interval.
    pub fn from_interval(i: &RankInterval) -> Classification {
        if i.upper == 0 {
            Classification::NMember
        } else if i.lower >= 1 {
            Classification::JMember
        } else {
            Classification::Undecided
        }
    }
}

/// Root number of a fibre, or why it was not computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootNumberField {
    Sign(Sign),
    Tag(RootNumberTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootNumberTag {
    #[serde(rename = "root number unsupported")]
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreRecord {
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(with = "crate::arith::rational::serde_bigint")]
    pub height: BigInt,
    pub model: Option<WeierstrassModel>,
    pub alpha: Option<u32>,
    pub mu: Option<u32>,
    pub root_number: Option<RootNumberField>,
    pub interval: Option<RankInterval>,
    pub classification: Classification,
    pub parity: Option<Parity>,
    /// Error text for skipped fibres.
    pub note: Option<String>,
}

impl FibreRecord {
    pub fn sign(&self) -> Option<Sign> {
        match self.root_number {
            Some(RootNumberField::Sign(s)) => Some(s),
            _ => None,
        }
    }

    fn empty(b: &Rational, classification: Classification) -> FibreRecord {
        FibreRecord {
            b: b.clone(),
            height: height(b),
            model: None,
            alpha: None,
            mu: None,
            root_number: None,
            interval: None,
            classification,
            parity: None,
            note: None,
        }
    }
}

/// `max(|m|, n)` for `b = m/n` in lowest terms.
pub fn height(b: &Rational) -> BigInt {
    b.numer().abs().max(b.denom().clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParams {
    pub height: u64,
    /// Height bound for the rational point search on each fibre.
    pub search_height: u64,
}

impl ScanParams {
    pub fn new(height: u64) -> ScanParams {
        ScanParams { height, search_height: 100 }
    }
}

pub fn fibre_record(b: &Rational, search_height: u64, budget: &FactorBudget) -> FibreRecord {
    if b.is_zero() || b.is_one() {
        return FibreRecord::empty(b, Classification::Singular);
    }
    let mut rec = FibreRecord::empty(b, Classification::Skipped);
    match analyse(&mut rec, search_height, budget) {
        Ok(()) => rec,
        Err(e) => {
            rec.classification = Classification::Skipped;
            rec.note = Some(e.to_string());
            rec
        }
    }
}

fn analyse(rec: &mut FibreRecord, search_height: u64, budget: &FactorBudget) -> Result<()> {
    let model = fibre_model_legendre(&rec.b)?.model;
    rec.model = Some(model.clone());
    let profile = reduction_profile(&model, budget)?;
    rec.alpha = Some(profile.alpha);
    rec.mu = Some(profile.mu);
    rec.root_number = Some(if profile.is_semistable() {
        RootNumberField::Sign(global_root_number(&profile)?.global)
    } else {
        RootNumberField::Tag(RootNumberTag::Unsupported)
    });
    let interval = descent_analysis(&model, search_height, budget)?.interval;
    rec.classification = Classification::from_interval(&interval);
    if let (true, Some(w)) = (interval.is_collapsed(), rec.sign()) {
        rec.parity = Some(parity_consistency(interval.lower as u64, w));
    }
    rec.interval = Some(interval);
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanStatistics {
    pub params: ScanParams,
    pub counts: BTreeMap<Classification, usize>,
    pub semistable: usize,
    pub root_number_sum: i64,
    /// Mean of `w` over semistable fibres.
    pub mean_root_number: Option<f64>,
    pub parity_checked: usize,
    pub parity_failures: usize,
    pub records: Vec<FibreRecord>,
}

/// `b = m/n` with `gcd(m, n) = 1`, `n >= 1`, `max(|m|, n) <= height`, `b` not 0 or 1,
/// ordered by height and then by value.
pub fn scan_parameters(height: u64) -> Vec<Rational> {
    let h = height as i64;
    let mut out = Vec::new();
    for n in 1..=h {
        for m in -h..=h {
            if m == 0 || m == n || m.gcd(&n) != 1 {
                continue;
            }
            out.push(Rational::new(BigInt::from(m), BigInt::from(n)));
        }
    }
    out.sort_by(|a, b| height_of(a).cmp(&height_of(b)).then(a.cmp(b)));
    out
}

fn height_of(b: &Rational) -> BigInt {
    height(b)
}

pub fn scan_legendre_fibres(params: &ScanParams, budget: &FactorBudget) -> ScanStatistics {
    let records: Vec<FibreRecord> = scan_parameters(params.height)
        .par_iter()
        .map(|b| fibre_record(b, params.search_height, budget))
        .collect();
    let mut counts: BTreeMap<Classification, usize> = Classification::ALL.iter().map(|&c| (c, 0)).collect();
    let mut semistable = 0;
    let mut root_number_sum = 0i64;
    let mut parity_checked = 0;
    let mut parity_failures = 0;
    for r in &records {
        *counts.entry(r.classification).or_default() += 1;
        if let Some(w) = r.sign() {
            semistable += 1;
            root_number_sum += w.value() as i64;
        }
        match r.parity {
            Some(Parity::Consistent) => parity_checked += 1,
            Some(Parity::Inconsistent) => {
                parity_checked += 1;
                parity_failures += 1;
            }
            None => {}
        }
    }
    let mean_root_number = (semistable > 0).then(|| root_number_sum as f64 / semistable as f64);
    ScanStatistics {
        params: params.clone(),
        counts,
        semistable,
        root_number_sum,
        mean_root_number,
        parity_checked,
        parity_failures,
        records,
    }
}
