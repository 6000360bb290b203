//! 2-descent: isogeny Selmer groups, complete 2-descent and rank bounds.

pub mod bounds;
pub mod complete;
pub mod f2;
pub mod isogeny;
pub mod local;

pub use isogeny::{isogenous_curve, torsor_points, two_isogeny_selmer, IsogenyPair, SelmerReport};
pub use complete::{complete_two_selmer, CompleteSelmer, FullTwoTorsion};
pub use local::quartic_soluble_qp;
pub use bounds::{
    descent_analysis, descent_rank_interval, selmer_inequality_check, sequence_dimension_check, thm23_bound,
    two_torsion_model, BoundMethod, DescentAnalysis, InequalityReport, IntervalStatus, RankInterval, Thm23Bound,
};
