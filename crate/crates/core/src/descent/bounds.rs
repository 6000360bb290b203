//! Rank bounds: the `2 alpha + mu - 1` bound, Selmer bookkeeping and rank intervals.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::complete::FullTwoTorsion;
use super::f2::Echelon;
use super::isogeny::{alpha, biquadratic_model, isogeny_descent, torsor_points, ClassBasis, IsogenyDescent, SelmerReport};
use crate::arith::rational::big;
use crate::arith::{FactorBudget, Rational};
use crate::curve::torsion::{integer_roots_monic_cubic, short_integral};
use crate::curve::{naive_point_search, CurvePoint, Transform, WeierstrassModel};
use crate::error::{Error, Result};
use crate::local::{reduction_profile, ReductionProfile};

/// Bound on |u|, |v| in the torsor point search.
const TORSOR_BOUND: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm23Bound {
    pub alpha: u32,
    pub mu: u32,
    pub bound: i64,
}

impl Thm23Bound {
    /// When the rank meets the bound, the 2-primary part of Sha is trivial.
    pub fn sha_two_primary_trivial(&self, rank: i64) -> bool {
        rank == self.bound
    }
}

/// Integral model `y^2 = x^3 + a x^2 + b x` with `(0, 0)` a rational 2-torsion point,
/// the other 2-torsion roots and the transform from the input model.
#[derive(Clone, Debug)]
pub struct TwoTorsionModel {
    pub a: BigInt,
    pub b: BigInt,
    pub other_roots: Vec<BigInt>,
    pub transform: Transform,
}

impl TwoTorsionModel {
    pub fn model(&self) -> WeierstrassModel {
        biquadratic_model(&self.a, &self.b)
    }

    pub fn full_two_torsion(&self) -> Option<FullTwoTorsion> {
        match self.other_roots.as_slice() {
            [e2, e3] => FullTwoTorsion::new(BigInt::zero(), e2.clone(), e3.clone()).ok(),
            _ => None,
        }
    }
}

/// Moves an integral 2-torsion point to the origin; root 0 is kept when present.
pub fn two_torsion_model(w: &WeierstrassModel) -> Result<TwoTorsionModel> {
    let (ws, tr) = short_integral(w);
    let [_, a2, _, a4, a6] = ws.coeffs().clone().map(|c| c.to_integer());
    let roots = integer_roots_monic_cubic(&a2, &a4, &a6);
    let r = match roots.iter().find(|r| r.is_zero()).or(roots.first()) {
        Some(r) => r.clone(),
        None => return Err(Error::NoTwoTorsion),
    };
    let a = &a2 + &r * 3;
    let b = (&r * 3 + &a2 * 2) * &r + &a4;
    let other_roots: Vec<BigInt> = roots.iter().filter(|x| **x != r).map(|x| x - &r).collect();
    let shift = Transform::new(Rational::from_integer(1.into()), big(r), Rational::zero(), Rational::zero())?;
    Ok(TwoTorsionModel { a, b, other_roots, transform: tr.then(&shift) })
}

pub fn thm23_bound(profile: &ReductionProfile) -> Result<Thm23Bound> {
    two_torsion_model(&profile.model)?;
    Ok(Thm23Bound { alpha: profile.alpha, mu: profile.mu, bound: 2 * profile.alpha as i64 + profile.mu as i64 - 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub dim_theta: u32,
    pub dim_theta_dual: u32,
    pub alpha: u32,
    pub mu: u32,
    pub lhs: u32,
    pub rhs: u32,
    pub holds: bool,
}

/// Both sides of `dim S_theta + dim S_theta' <= 2 alpha + mu + 1`.
pub fn selmer_inequality_check(a: &BigInt, b: &BigInt, budget: &FactorBudget) -> Result<InequalityReport> {
    let d = isogeny_descent(a, b, budget)?;
    let profile = reduction_profile(&d.pair.curve(), budget)?;
    let lhs = d.side.dim + d.dual_side.dim;
    let rhs = 2 * profile.alpha + profile.mu + 1;
    Ok(InequalityReport {
        dim_theta: d.side.dim,
        dim_theta_dual: d.dual_side.dim,
        alpha: profile.alpha,
        mu: profile.mu,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// `dim Sha[2] = dim S_2 - rank - 2` for a curve with full rational 2-torsion of known rank.
pub fn sequence_dimension_check(w: &WeierstrassModel, rank: u32, budget: &FactorBudget) -> Result<u32> {
    let tm = two_torsion_model(w)?;
    let full = tm.full_two_torsion().ok_or(Error::NoTwoTorsion)?;
    let dim_two = full.selmer(budget)?.dim;
    (dim_two as i64 - rank as i64 - 2)
        .try_into()
        .map_err(|_| Error::InconsistentData(format!("dim S_2 = {dim_two} is below rank {rank} + 2")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    /// `2 alpha + mu - 1`.
    ReductionBound,
    IsogenyDescent,
    CompleteDescent,
    /// Images of found points under the descent maps.
    PointImages,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalStatus {
    Collapsed,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankInterval {
    pub lower: u32,
    pub upper: u32,
    pub lower_method: BoundMethod,
    pub upper_methods: Vec<BoundMethod>,
    pub status: IntervalStatus,
}

impl RankInterval {
    pub fn is_collapsed(&self) -> bool {
        self.lower == self.upper
    }
}

/// Everything computed on the way to a rank interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentAnalysis {
    #[serde(with = "crate::arith::rational::serde_bigint")]
    pub a: BigInt,
    #[serde(with = "crate::arith::rational::serde_bigint")]
    pub b: BigInt,
    pub selmer: SelmerReport,
    pub thm23: Option<Thm23Bound>,
    pub points: Vec<CurvePoint>,
    pub interval: RankInterval,
}

fn image_dim(points: &[CurvePoint], b: &BigInt, basis: &ClassBasis) -> Result<u32> {
    let mut ech = Echelon::default();
    ech.insert(u128::from(basis.mask(&big(b.clone())).unwrap_or(0)));
    for p in points {
        let m = basis
            .mask(&alpha(p, b))
            .ok_or_else(|| Error::InconsistentData(format!("point {p} has an image outside the Selmer support")))?;
        ech.insert(u128::from(m));
    }
    Ok(ech.dim() as u32)
}

/// Points on `E` (or `E'`) from the naive search plus torsor points for unexplained classes.
fn collect_points(
    a: &BigInt,
    b: &BigInt,
    classes: &[u64],
    basis: &ClassBasis,
    height: u64,
) -> Result<Vec<CurvePoint>> {
    let mut points = naive_point_search(&biquadratic_model(a, b), height)?;
    let mut ech = Echelon::default();
    ech.insert(u128::from(basis.mask(&big(b.clone())).unwrap_or(0)));
    for p in &points {
        if let Some(m) = basis.mask(&alpha(p, b)) {
            ech.insert(u128::from(m));
        }
    }
    for &c in classes {
        if ech.contains(u128::from(c)) {
            continue;
        }
        if let Some(p) = torsor_points(a, b, &basis.value(c), TORSOR_BOUND).into_iter().next() {
            ech.insert(u128::from(c));
            points.push(p);
        }
    }
    points.sort();
    points.dedup();
    Ok(points)
}

fn lower_from_isogeny(d: &IsogenyDescent, height: u64) -> Result<(u32, Vec<CurvePoint>)> {
    let pts = collect_points(&d.pair.a, &d.pair.b, &d.side.masks, &d.basis, height)?;
    let dual = collect_points(&d.pair.a_dual, &d.pair.b_dual, &d.dual_side.masks, &d.dual_basis, height)?;
    let dim = image_dim(&pts, &d.pair.b, &d.basis)? + image_dim(&dual, &d.pair.b_dual, &d.dual_basis)?;
    Ok((dim.saturating_sub(2), pts))
}

/// Rank interval for a curve with a rational 2-torsion point, from descent above and
/// images of points found up to height `height` below.
pub fn descent_analysis(w: &WeierstrassModel, height: u64, budget: &FactorBudget) -> Result<DescentAnalysis> {
    let tm = two_torsion_model(w)?;
    let d = isogeny_descent(&tm.a, &tm.b, budget)?;
    let profile = reduction_profile(&tm.model(), budget)?;
    let thm23 = thm23_bound(&profile)?;

    let mut selmer = SelmerReport {
        dim_theta: d.side.dim,
        dim_theta_dual: d.dual_side.dim,
        theta_classes: d.side.classes.clone(),
        theta_dual_classes: d.dual_side.classes.clone(),
        dim_two: None,
        two_classes: None,
    };
    let mut candidates = vec![
        (thm23.bound, BoundMethod::ReductionBound),
        (selmer.isogeny_rank_bound(), BoundMethod::IsogenyDescent),
    ];
    let full = tm.full_two_torsion();
    if let Some(full) = &full {
        let c = full.selmer(budget)?;
        candidates.push((c.dim as i64 - 2, BoundMethod::CompleteDescent));
        selmer.dim_two = Some(c.dim);
        selmer.two_classes = Some(c.pairs);
    }
    let upper = candidates.iter().map(|c| c.0).min().expect("nonempty");
    if upper < 0 {
        return Err(Error::InconsistentData(format!("negative rank bound {upper}")));
    }
    let upper_methods: Vec<BoundMethod> = candidates.iter().filter(|c| c.0 == upper).map(|c| c.1).collect();

    let (mut lower, points) = if upper == 0 { (0, Vec::new()) } else { lower_from_isogeny(&d, height)? };
    if let Some(full) = &full {
        if upper > 0 {
            lower = lower.max(full.image_rank(&points).saturating_sub(2));
        }
    }
    let upper = upper as u32;
    if lower > upper {
        return Err(Error::InconsistentData(format!("rank interval [{lower}, {upper}] is empty")));
    }
    let status = if lower == upper { IntervalStatus::Collapsed } else { IntervalStatus::Undecided };
    let points = points.iter().map(|p| map_back(p, &tm.transform)).collect();
    Ok(DescentAnalysis {
        a: tm.a,
        b: tm.b,
        selmer,
        thm23: Some(thm23),
        points,
        interval: RankInterval { lower, upper, lower_method: BoundMethod::PointImages, upper_methods, status },
    })
}

fn map_back(p: &CurvePoint, tr: &Transform) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => {
            let (x, y) = tr.backward(x, y);
            CurvePoint::affine(x, y)
        }
    }
}

pub fn descent_rank_interval(w: &WeierstrassModel, height: u64, budget: &FactorBudget) -> Result<RankInterval> {
    Ok(descent_analysis(w, height, budget)?.interval)
}
