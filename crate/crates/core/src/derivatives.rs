//! One-sided norm derivatives
//! `ρ'±(x, y) = lim_{λ→0±} (‖x+λy‖² - ‖x‖²) / 2λ`.
//!
//! The exact values come from the supporting face:
//! `ρ'+(x, y) = ‖x‖ max f(y)` and `ρ'-(x, y) = ‖x‖ min f(y)` over `f ∈ J(x)`,
//! both attained at extreme points of the face. Difference quotients are kept
//! as an independent numeric check.

use serde::{Deserialize, Serialize};

use crate::coords::Vector;
use crate::error::{NormError, Result};
use crate::support_map::{face_diameter, support_set};
use crate::norm_engine::Space;

/// Steps used by [`rho_numeric_schedule`], coarsest first.
pub const DEFAULT_STEPS: [f64; 3] = [1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativePair {
    pub x: Vector,
    pub y: Vector,
    pub rho_plus: f64,
    pub rho_minus: f64,
}

/// Which difference quotient approximates the derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientForm {
    /// `(‖x+λy‖² - ‖x‖²) / 2λ`; carries an `O(λ)` bias.
    Squared,
    /// `‖x‖ (‖x+λy‖ - ‖x‖) / λ`; exact for polyhedral norms below the
    /// first breakpoint.
    #[default]
    Unsquared,
}

pub fn rho(space: &Space, x: &Vector, y: &Vector) -> Result<DerivativePair> {
    space.check_dim(y.dim())?;
    let face = support_set(space, x)?;
    let (lo, hi) = face
        .vertices
        .iter()
        .map(|f| f.apply(y))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Ok(DerivativePair {
        x: x.clone(),
        y: y.clone(),
        rho_plus: face.attained_value * hi,
        rho_minus: face.attained_value * lo,
    })
}

/// The squared difference quotient at step `lambda`: approximates `ρ'+` for
/// `λ > 0` and `ρ'-` for `λ < 0`.
pub fn rho_numeric(space: &Space, x: &Vector, y: &Vector, lambda: f64) -> Result<f64> {
    rho_numeric_with(space, x, y, lambda, QuotientForm::Squared)
}

pub fn rho_numeric_with(space: &Space, x: &Vector, y: &Vector, lambda: f64, form: QuotientForm) -> Result<f64> {
    space.check_dim(x.dim())?;
    space.check_dim(y.dim())?;
    if x.is_zero() {
        return Err(NormError::ZeroVector("x"));
    }
    if lambda == 0.0 || !lambda.is_finite() || lambda.abs() > 1e-3 {
        return Err(NormError::InvalidInput(format!("step must satisfy 0 < |lambda| <= 1e-3, got {lambda}")));
    }
    let n0 = space.norm(x)?;
    let n1 = space.norm(&(x + &y.scale(lambda)))?;
    Ok(match form {
        QuotientForm::Squared => (n1 * n1 - n0 * n0) / (2.0 * lambda),
        QuotientForm::Unsquared => n0 * (n1 - n0) / lambda,
    })
}

/// Difference quotients over a decreasing step schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericDerivative {
    pub steps: Vec<f64>,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    /// Quotients move monotonically as the step shrinks, which convexity of
    /// `λ ↦ ‖x+λy‖` guarantees; a violation points at rounding trouble.
    pub monotone: bool,
}

impl NumericDerivative {
    /// Estimates at the finest step.
    pub fn estimate(&self) -> (f64, f64) {
        (*self.plus.last().unwrap_or(&f64::NAN), *self.minus.last().unwrap_or(&f64::NAN))
    }
}

pub fn rho_numeric_schedule(space: &Space, x: &Vector, y: &Vector, steps: &[f64], form: QuotientForm) -> Result<NumericDerivative> {
    if steps.is_empty() {
        return Err(NormError::InvalidInput("step schedule is empty".into()));
    }
    let plus = steps.iter().map(|&h| rho_numeric_with(space, x, y, h, form)).collect::<Result<Vec<_>>>()?;
    let minus = steps.iter().map(|&h| rho_numeric_with(space, x, y, -h, form)).collect::<Result<Vec<_>>>()?;
    let slack = 1e-9 * (1.0 + space.norm(x)? * space.norm(y)?);
    // Forward quotients decrease and backward ones increase as |λ| shrinks.
    let monotone = plus.windows(2).all(|w| w[1] <= w[0] + slack) && minus.windows(2).all(|w| w[1] >= w[0] - slack);
    Ok(NumericDerivative { steps: steps.to_vec(), plus, minus, monotone })
}

/// `sup_{y ∈ S_X} (ρ'+(x, y) - ρ'-(x, y))`, which equals `‖x‖ diam J(x)`.
///
/// On a polyhedral space the gap is a sublinear function of `y`, so its
/// maximum over the ball is taken at a vertex; the vertices are scanned
/// directly. Elsewhere the supremum of `(f - g)(y)` over the sphere is the
/// dual norm of `f - g`.
pub fn smoothness_gap(space: &Space, x: &Vector) -> Result<f64> {
    let face = support_set(space, x)?;
    match space.ball() {
        Some(ball) => {
            let mut gap: f64 = 0.0;
            for y in ball.vertices() {
                let d = rho(space, x, y)?;
                gap = gap.max(d.rho_plus - d.rho_minus);
            }
            Ok(gap)
        }
        None => Ok(face.attained_value * face_diameter(space, &face.vertices)?),
    }
}

/// The same supremum taken over a finite set of unit vectors only; never
/// exceeds [`smoothness_gap`].
pub fn sampled_smoothness_gap(space: &Space, x: &Vector, directions: &[Vector]) -> Result<f64> {
    let face = support_set(space, x)?;
    let mut gap: f64 = 0.0;
    for y in directions {
        let (lo, hi) = face
            .vertices
            .iter()
            .map(|f| f.apply(y))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        gap = gap.max(face.attained_value * (hi - lo));
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sharp_hexagon_apex, sharp_hexagon_directions, sharp_hexagon_space, regular_polygon_space};
    use crate::norm_engine::{Exponent, SpaceSpec};
    use crate::support_map::diam_support;
    use approx::assert_abs_diff_eq;

    fn linf2() -> Space {
        Space::new(SpaceSpec::lp(Exponent::INFINITY, 2)).unwrap()
    }

    fn l2() -> Space {
        Space::new(SpaceSpec::lp(Exponent::new(2.0).unwrap(), 2)).unwrap()
    }

    #[test]
    fn square_corner_derivatives() {
        let d = rho(&linf2(), &Vector::from([1.0, 1.0]), &Vector::from([1.0, 0.0])).unwrap();
        assert_eq!((d.rho_plus, d.rho_minus), (1.0, 0.0));
    }

    #[test]
    fn derivative_along_x_is_norm_squared() {
        let s = Space::new(regular_polygon_space(5).unwrap().space).unwrap();
        let x = Vector::from([0.3, -1.7]);
        let d = rho(&s, &x, &x).unwrap();
        let n = s.norm(&x).unwrap();
        assert_abs_diff_eq!(d.rho_plus, n * n, epsilon = 1e-12);
        assert_abs_diff_eq!(d.rho_minus, n * n, epsilon = 1e-12);
    }

    #[test]
    fn sharp_hexagon_apex_derivative() {
        let s = Space::new(sharp_hexagon_space(1.0).unwrap()).unwrap();
        let (r1, _) = sharp_hexagon_directions(1.0);
        let d = rho(&s, &sharp_hexagon_apex(1.0), &r1).unwrap();
        assert_abs_diff_eq!(d.rho_plus, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.rho_minus, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn quotients_on_the_square() {
        let s = linf2();
        let (x, y) = (Vector::from([1.0, 1.0]), Vector::from([1.0, 0.0]));
        let plus = rho_numeric(&s, &x, &y, 1e-6).unwrap();
        assert_abs_diff_eq!(plus, 1.0000005, epsilon = 1e-9);
        assert_abs_diff_eq!(plus, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(rho_numeric(&s, &x, &y, -1e-6).unwrap(), 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(rho_numeric_with(&s, &x, &y, 1e-6, QuotientForm::Unsquared).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn quotients_at_a_smooth_point() {
        let (x, y) = (Vector::from([1.0, 0.0]), Vector::from([0.0, 1.0]));
        for h in [1e-6, -1e-6] {
            assert_abs_diff_eq!(rho_numeric(&l2(), &x, &y, h).unwrap(), 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn numeric_rejects_bad_steps() {
        let (x, y) = (Vector::from([1.0, 0.0]), Vector::from([0.0, 1.0]));
        assert!(rho_numeric(&l2(), &x, &y, 0.0).is_err());
        assert!(rho_numeric(&l2(), &x, &y, 1e-2).is_err());
        assert_eq!(rho_numeric(&l2(), &Vector::from([0.0, 0.0]), &y, 1e-6), Err(NormError::ZeroVector("x")));
    }

    #[test]
    fn schedule_is_monotone() {
        let s = Space::new(regular_polygon_space(4).unwrap().space).unwrap();
        let r = rho_numeric_schedule(&s, &Vector::from([1.0, 0.0]), &Vector::from([0.2, 1.0]), &DEFAULT_STEPS, QuotientForm::Squared).unwrap();
        assert!(r.monotone);
        let exact = rho(&s, &Vector::from([1.0, 0.0]), &Vector::from([0.2, 1.0])).unwrap();
        let (p, m) = r.estimate();
        assert_abs_diff_eq!(p, exact.rho_plus, epsilon = 1e-5);
        assert_abs_diff_eq!(m, exact.rho_minus, epsilon = 1e-5);
    }

    #[test]
    fn gap_matches_face_diameter() {
        let sq = linf2();
        assert_eq!(smoothness_gap(&sq, &Vector::from([1.0, 1.0])).unwrap(), 2.0);
        let hex = Space::new(regular_polygon_space(3).unwrap().space).unwrap();
        assert_abs_diff_eq!(smoothness_gap(&hex, &Vector::from([1.0, 0.0])).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(smoothness_gap(&l2(), &Vector::from([0.6, 0.8])).unwrap(), 0.0);
        let x = Vector::from([2.0, 0.0]);
        assert_abs_diff_eq!(
            smoothness_gap(&hex, &x).unwrap(),
            2.0 * diam_support(&hex, &x).unwrap(),
            epsilon = 1e-12
        );
    }
}
