use std::sync::Arc;

use super::polytope::PolyhedralBall;
use super::spec::SpaceSpec;
use crate::coords::{Functional, Vector};
use crate::error::{NormError, Result};
use crate::tolerance::ToleranceConfig;

/// Composed balls larger than this are not materialized.
const MAX_POLYTOPE_SIZE: usize = 1 << 16;

/// A [`SpaceSpec`] prepared for computation.
///
/// Construction resolves the polyhedral unit ball when every leaf and every
/// direct sum admits one (polyhedral leaves, `ℓ1`/`ℓ∞` leaves, one-dimensional
/// leaves, and sums with `p ∈ {1, ∞}`), and prepares the two summands of a
/// direct sum as spaces of their own. Immutable afterwards.
#[derive(Debug, Clone)]
pub struct Space {
    spec: SpaceSpec,
    tol: ToleranceConfig,
    ball: Option<Arc<PolyhedralBall>>,
    summands: Option<Box<(Space, Space)>>,
}

impl Space {
    pub fn new(spec: SpaceSpec) -> Result<Self> {
        Self::with_tolerance(spec, ToleranceConfig::default())
    }

    pub fn with_tolerance(spec: SpaceSpec, tol: ToleranceConfig) -> Result<Self> {
        tol.validate()?;
        match &spec {
            SpaceSpec::Polyhedral(ball) => {
                let ball = Arc::clone(ball);
                Ok(Self { spec, tol, ball: Some(ball), summands: None })
            }
            SpaceSpec::Lp { p, dim } => {
                if *dim == 0 {
                    return Err(NormError::InvalidInput("lp dimension must be at least 1".into()));
                }
                let ball = if *dim == 1 {
                    Some(PolyhedralBall::segment())
                } else if p.is_infinite() {
                    PolyhedralBall::cube(*dim).ok()
                } else if p.is_one() {
                    PolyhedralBall::cross_polytope(*dim).ok()
                } else {
                    None
                };
                Ok(Self { spec, tol, ball: ball.map(Arc::new), summands: None })
            }
            SpaceSpec::DirectSum { p, left, right } => {
                let l = Space::with_tolerance((**left).clone(), tol)?;
                let r = Space::with_tolerance((**right).clone(), tol)?;
                let ball = match (&l.ball, &r.ball) {
                    (Some(a), Some(b)) if p.is_infinite() || p.is_one() => {
                        let (nv, nf) = if p.is_infinite() {
                            (a.vertices().len() * b.vertices().len(), a.facets().len() + b.facets().len())
                        } else {
                            (a.vertices().len() + b.vertices().len(), a.facets().len() * b.facets().len())
                        };
                        (nv <= MAX_POLYTOPE_SIZE && nf <= MAX_POLYTOPE_SIZE).then(|| {
                            Arc::new(if p.is_infinite() { a.product(b) } else { a.free_sum(b) })
                        })
                    }
                    _ => None,
                };
                Ok(Self { spec, tol, ball, summands: Some(Box::new((l, r))) })
            }
        }
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn tolerance(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// The unit ball as a polytope, when the space is polyhedral.
    pub fn ball(&self) -> Option<&PolyhedralBall> {
        self.ball.as_deref()
    }

    pub(crate) fn require_ball(&self, what: &str) -> Result<&PolyhedralBall> {
        self.ball().ok_or_else(|| {
            NormError::Capability(format!("{what} needs a polyhedral unit ball, but {} has none", self.spec.label()))
        })
    }

    /// Left and right summands of a direct sum.
    pub fn summands(&self) -> Option<(&Space, &Space)> {
        self.summands.as_deref().map(|(l, r)| (l, r))
    }

    pub fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(NormError::DimensionMismatch { expected: self.dim(), got });
        }
        Ok(())
    }

    /// `‖x‖`.
    pub fn norm(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x.dim())?;
        Ok(self.spec.norm_raw(x.coords()))
    }

    /// `‖f‖` in the dual space.
    pub fn dual_norm(&self, f: &Functional) -> Result<f64> {
        self.check_dim(f.dim())?;
        Ok(self.spec.dual_norm_raw(f.coords()))
    }

    /// The dual unit ball.
    pub fn polar(&self) -> Result<PolyhedralBall> {
        Ok(self.require_ball("polar")?.polar())
    }

    /// Extreme points of `M_f⁺ = {x ∈ S_X : f(x) = ‖f‖}`.
    pub fn face_of_ball(&self, f: &Functional) -> Result<Vec<Vector>> {
        self.check_dim(f.dim())?;
        if f.is_zero() {
            return Err(NormError::ZeroVector("functional"));
        }
        let ball = self.require_ball("face_of_ball")?;
        Ok(face_indices(ball.vertices().iter().map(|v| f.apply(v)), self.tol.face)
            .into_iter()
            .map(|i| ball.vertices()[i].clone())
            .collect())
    }
}

/// Indices whose value is within relative slack `tol` of the maximum.
pub(crate) fn face_indices(values: impl Iterator<Item = f64>, tol: f64) -> Vec<usize> {
    let values: Vec<f64> = values.collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cut = max - tol * max.abs();
    values.iter().enumerate().filter(|(_, &v)| v >= cut).map(|(i, _)| i).collect()
}
