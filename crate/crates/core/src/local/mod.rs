pub mod kodaira;
pub mod place;
pub mod profile;
pub mod ring;
pub mod surface;
pub mod tate;

pub use kodaira::{Kodaira, ReductionClass, Splitting};
pub use place::Place;
pub use profile::{reduction_profile, split_multiplicative_test, tate_reduce, ReductionData, ReductionProfile};
pub use surface::{surface_fibre_types, Family, FibreType, SurfaceFibreReport};
