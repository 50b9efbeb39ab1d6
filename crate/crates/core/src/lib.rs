//! Approximate smoothness and Birkhoff-James orthogonality in
//! finite-dimensional real normed spaces.
//!
//! A space is described by a [`SpaceSpec`] (a polyhedral ball, an `ℓp` space,
//! or a direct sum `X ⊕_p Y`) and prepared as a [`Space`]. On top of that:
//!
//! * [`support_map`]: supporting functionals `J(x)`, `diam J(x)` and the
//!   constants `E(X)`, `S(X)`, `R(X)`;
//! * [`derivatives`]: one-sided norm derivatives, exact and numeric;
//! * [`orthogonality`]: exact and approximate Birkhoff-James orthogonality
//!   and right-additivity checks;
//! * [`catalog`]: regular polygons, the sharp hexagon family, prisms;
//! * [`oracle`]: brute-force and sampling cross-checks.

pub mod catalog;
pub mod coords;
pub mod derivatives;
pub mod error;
pub mod norm_engine;
pub mod oracle;
pub mod orthogonality;
pub mod support_map;
pub mod tolerance;

pub use coords::{Functional, Vector};
pub use error::{NormError, Result};
pub use norm_engine::{parse_space_spec, Exponent, PolyhedralBall, Space, SpaceDescription, SpaceSpec};
pub use tolerance::ToleranceConfig;
