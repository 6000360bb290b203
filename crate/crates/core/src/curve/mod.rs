pub mod families;
pub mod model;
pub mod point;
pub mod search;
pub mod torsion;

pub use families::{
    fibre_model_legendre, fibre_model_neumann_setzer, legendre_fibre_raw, legendre_surface, mersenne_fibre,
    neumann_setzer_surface, FibreModel,
};
pub use model::{compute_invariants, Invariants, SurfaceModel, Transform, Weierstrass, WeierstrassModel};
pub use point::CurvePoint;
pub use search::naive_point_search;
pub use torsion::{torsion_structure, TorsionShape, TorsionStructure};
