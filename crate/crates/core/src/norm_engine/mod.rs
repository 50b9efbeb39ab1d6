//! Space descriptions and evaluation of norms, dual norms, polars and faces
//! of the unit ball.

mod json;
mod polytope;
mod space;
mod spec;

pub use json::{parse_space_spec, SpaceDescription};
pub use polytope::{Facet, PolyhedralBall};
pub use space::Space;
pub(crate) use space::face_indices;
pub use spec::{Exponent, SpaceSpec};
