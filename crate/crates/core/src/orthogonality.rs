//! Birkhoff-James orthogonality, its approximate variant, and the
//! right-additivity bounds for approximately smooth points.
//!
//! `x ⊥_B^ε y` holds iff some `f ∈ J(x)` has `|f(y)| <= ε‖y‖`. Over a
//! polytopal face, `|f(y)|` is minimized either at zero (when `f(y)` changes
//! sign across the extreme points) or at an extreme point, so everything here
//! is exact and needs no optimizer.

use serde::{Deserialize, Serialize};

use crate::coords::{Functional, Vector};
use crate::derivatives::rho;
use crate::error::{NormError, Result};
use crate::norm_engine::Space;
use crate::support_map::{diam_support, support_set};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub x: Vector,
    pub y: Vector,
    pub is_bj: bool,
    /// Least `ε` with `x ⊥_B^ε y`.
    pub eps_min: f64,
    /// A point of `J(x)` attaining `eps_min`.
    pub witness: Functional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypotheses not met; nothing to check.
    Vacuous,
}

impl Verdict {
    fn judge(hypothesis: bool, conclusion: bool) -> Self {
        match (hypothesis, conclusion) {
            (false, _) => Verdict::Vacuous,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditivityVerdicts {
    pub window: Verdict,
    pub orthogonal_pair: Verdict,
    pub half_eps: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub x: Vector,
    pub y1: Vector,
    pub y2: Vector,
    /// `diam J(x)`.
    pub eps_x: f64,
    /// Some `ε >= max(eps_x, ε(y₁), ε(y₂))` lies below `2‖y₁+y₂‖ / 3(‖y₁‖+‖y₂‖)`.
    pub hyp_window: bool,
    /// `y₁`, `y₂` both orthogonal and `eps_x < 2‖y₁+y₂‖ / (‖y₁‖+‖y₂‖)`.
    pub hyp_orthogonal_pair: bool,
    /// `y₁`, `y₂` both orthogonal, `eps_x < 2` and
    /// `min(‖y₁‖, ‖y₂‖) <= ‖(y₁+y₂)/2‖`.
    pub hyp_half_eps: bool,
    /// `eps_min(x, y₁+y₂)`.
    pub eps_out: f64,
    pub verdicts: AdditivityVerdicts,
}

pub fn is_bj_orthogonal(space: &Space, x: &Vector, y: &Vector) -> Result<bool> {
    let d = rho(space, x, y)?;
    if y.is_zero() {
        return Ok(true);
    }
    let slack = space.tolerance().norm * space.norm(x)? * space.norm(y)?;
    Ok(d.rho_minus <= slack && d.rho_plus >= -slack)
}

/// Least `ε` such that `x ⊥_B^ε y`, i.e. `min |f(y)| / ‖y‖` over `f ∈ J(x)`.
pub fn eps_min(space: &Space, x: &Vector, y: &Vector) -> Result<f64> {
    Ok(orthogonality_report(space, x, y)?.eps_min)
}

pub fn orthogonality_report(space: &Space, x: &Vector, y: &Vector) -> Result<OrthogonalityReport> {
    space.check_dim(y.dim())?;
    let face = support_set(space, x)?;
    let tol = space.tolerance().norm;
    let ny = space.norm(y)?;
    let report = |eps_min: f64, witness: Functional| OrthogonalityReport {
        x: x.clone(),
        y: y.clone(),
        is_bj: eps_min <= tol,
        eps_min,
        witness,
    };
    if ny == 0.0 {
        return Ok(report(0.0, face.vertices[0].clone()));
    }
    let values: Vec<f64> = face.vertices.iter().map(|f| f.apply(y) / ny).collect();
    let (imin, imax) = argmin_argmax(&values);
    let (lo, hi) = (values[imin], values[imax]);
    if lo <= 0.0 && hi >= 0.0 {
        // The segment between the two extremes crosses zero.
        let witness = if hi - lo > 0.0 {
            let t = hi / (hi - lo);
            &face.vertices[imin].scale(t) + &face.vertices[imax].scale(1.0 - t)
        } else {
            face.vertices[imin].clone()
        };
        return Ok(report(0.0, witness));
    }
    let i = if lo > 0.0 { imin } else { imax };
    Ok(report(values[i].abs(), face.vertices[i].clone()))
}

fn argmin_argmax(values: &[f64]) -> (usize, usize) {
    let mut imin = 0;
    let mut imax = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[imin] {
            imin = i;
        }
        if *v > values[imax] {
            imax = i;
        }
    }
    (imin, imax)
}

/// Checks `‖x+λy‖² >= ‖x‖² - 2ε‖x‖‖λy‖` at every `λ` of the grid, with
/// slack `τ‖x‖²`.
pub fn check_def_inequality(space: &Space, x: &Vector, y: &Vector, eps: f64, lambdas: &[f64]) -> Result<bool> {
    Ok(worst_def_slack(space, x, y, eps, lambdas)?.0 >= -space.tolerance().norm * space.norm(x)?.powi(2))
}

/// Smallest value of `‖x+λy‖² - ‖x‖² + 2ε‖x‖‖λy‖` over the grid, and the
/// step where it occurs.
pub fn worst_def_slack(space: &Space, x: &Vector, y: &Vector, eps: f64, lambdas: &[f64]) -> Result<(f64, f64)> {
    space.check_dim(x.dim())?;
    space.check_dim(y.dim())?;
    if x.is_zero() {
        return Err(NormError::ZeroVector("x"));
    }
    if lambdas.is_empty() {
        return Err(NormError::InvalidInput("lambda grid is empty".into()));
    }
    let nx = space.norm(x)?;
    let ny = space.norm(y)?;
    let mut worst = (f64::INFINITY, 0.0);
    for &l in lambdas {
        let moved = space.norm(&(x + &y.scale(l)))?;
        let slack = moved * moved - nx * nx + 2.0 * eps * nx * ny * l.abs();
        if slack < worst.0 {
            worst = (slack, l);
        }
    }
    Ok(worst)
}

pub fn additivity_report(space: &Space, x: &Vector, y1: &Vector, y2: &Vector) -> Result<AdditivityReport> {
    space.check_dim(y1.dim())?;
    space.check_dim(y2.dim())?;
    let tol = space.tolerance().norm;
    let eps_x = diam_support(space, x)?;
    let sum = y1 + y2;
    let (n1, n2, ns) = (space.norm(y1)?, space.norm(y2)?, space.norm(&sum)?);
    let e1 = eps_min(space, x, y1)?;
    let e2 = eps_min(space, x, y2)?;
    let eps_out = eps_min(space, x, &sum)?;
    let nonzero = n1 > 0.0 && n2 > 0.0 && ns > 0.0;
    let bj = is_bj_orthogonal(space, x, y1)? && is_bj_orthogonal(space, x, y2)?;

    let (hyp_window, hyp_orthogonal_pair) = if nonzero {
        let eps = eps_x.max(e1).max(e2);
        (eps < 2.0 * ns / (3.0 * (n1 + n2)), bj && eps_x < 2.0 * ns / (n1 + n2))
    } else {
        (false, false)
    };
    let hyp_half_eps = bj && ns > 0.0 && eps_x < 2.0 && n1.min(n2) <= 0.5 * ns + tol * (n1 + n2);

    Ok(AdditivityReport {
        x: x.clone(),
        y1: y1.clone(),
        y2: y2.clone(),
        eps_x,
        hyp_window,
        hyp_orthogonal_pair,
        hyp_half_eps,
        eps_out,
        verdicts: AdditivityVerdicts {
            window: Verdict::judge(hyp_window, eps_out < 1.0),
            orthogonal_pair: Verdict::judge(hyp_orthogonal_pair, eps_out < 1.0),
            half_eps: Verdict::judge(hyp_half_eps, eps_out <= eps_x / 2.0 + tol),
        },
    })
}

/// Whether the unit vectors `y₁`, `y₂` witness that approximate orthogonality
/// is not right-additive at `x`: each `yᵢ` is approximately orthogonal to `x`
/// with some `ε < 1`, while the normalized sum is not, for any `ε < 1`.
///
/// Returns `false` when `y₁ + y₂ = θ`.
pub fn non_additivity_witness(space: &Space, x: &Vector, y1: &Vector, y2: &Vector) -> Result<bool> {
    let tol = space.tolerance().norm;
    for (name, y) in [("y1", y1), ("y2", y2)] {
        let n = space.norm(y)?;
        if (n - 1.0).abs() > tol {
            return Err(NormError::InvalidInput(format!("{name} must be a unit vector, has norm {n}")));
        }
    }
    let sum = y1 + y2;
    let ns = space.norm(&sum)?;
    if ns <= tol {
        return Ok(false);
    }
    let unit_sum = sum.scale(1.0 / ns);
    Ok(eps_min(space, x, y1)? < 1.0 - tol
        && eps_min(space, x, y2)? < 1.0 - tol
        && eps_min(space, x, &unit_sum)? >= 1.0 - tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sharp_hexagon_apex, sharp_hexagon_directions, sharp_hexagon_space, regular_polygon_space};
    use crate::norm_engine::{Exponent, SpaceSpec};
    use approx::assert_abs_diff_eq;

    fn linf2() -> Space {
        Space::new(SpaceSpec::lp(Exponent::INFINITY, 2)).unwrap()
    }

    fn l2() -> Space {
        Space::new(SpaceSpec::lp(Exponent::new(2.0).unwrap(), 2)).unwrap()
    }

    fn v(a: f64, b: f64) -> Vector {
        Vector::from([a, b])
    }

    fn log_grid() -> Vec<f64> {
        (-3..=3).flat_map(|k| [10f64.powi(k), -(10f64.powi(k))]).collect()
    }

    #[test]
    fn bj_examples() {
        assert!(is_bj_orthogonal(&linf2(), &v(1.0, 1.0), &v(1.0, 0.0)).unwrap());
        assert!(!is_bj_orthogonal(&l2(), &v(1.0, 0.0), &v(1.0, 0.0)).unwrap());
        assert!(is_bj_orthogonal(&l2(), &v(1.0, 0.0), &v(0.0, 0.0)).unwrap());
        let s = Space::new(sharp_hexagon_space(0.3).unwrap()).unwrap();
        let (r1, r2) = sharp_hexagon_directions(0.3);
        assert!(is_bj_orthogonal(&s, &sharp_hexagon_apex(0.3), &r1).unwrap());
        assert!(is_bj_orthogonal(&s, &sharp_hexagon_apex(0.3), &r2).unwrap());
        assert!(is_bj_orthogonal(&l2(), &v(0.0, 0.0), &v(1.0, 0.0)).is_err());
    }

    #[test]
    fn eps_min_examples() {
        assert_abs_diff_eq!(eps_min(&linf2(), &v(1.0, 1.0), &v(1.0, 0.25)).unwrap(), 0.25, epsilon = 1e-15);
        let s = Space::new(sharp_hexagon_space(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(eps_min(&s, &sharp_hexagon_apex(1.0), &v(0.0, 2.0)).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(eps_min(&linf2(), &v(1.0, 1.0), &v(1.0, 0.0)).unwrap(), 0.0);
        assert_eq!(eps_min(&linf2(), &v(1.0, 1.0), &v(0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn witness_lies_in_the_face_and_attains() {
        let hex = Space::new(regular_polygon_space(3).unwrap().space).unwrap();
        let x = v(1.0, 0.0);
        for y in [v(0.0, 1.0), v(0.3, 1.0), v(-1.0, 0.1), v(2.0, -0.5)] {
            let r = orthogonality_report(&hex, &x, &y).unwrap();
            assert_abs_diff_eq!(r.witness.apply(&x), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(hex.dual_norm(&r.witness).unwrap(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r.witness.apply(&y).abs() / hex.norm(&y).unwrap(), r.eps_min, epsilon = 1e-12);
        }
    }

    #[test]
    fn def_inequality_examples() {
        let (x, y) = (v(1.0, 1.0), v(1.0, 0.25));
        assert!(check_def_inequality(&linf2(), &x, &y, 0.25, &log_grid()).unwrap());
        assert!(!check_def_inequality(&linf2(), &x, &y, 0.1, &log_grid()).unwrap());
        assert!(check_def_inequality(&linf2(), &x, &v(0.0, 0.0), 0.0, &log_grid()).unwrap());
        assert!(check_def_inequality(&linf2(), &x, &y, 0.25, &[]).is_err());
    }

    #[test]
    fn additivity_on_the_hexagon() {
        let hex = Space::new(regular_polygon_space(3).unwrap().space).unwrap();
        let r = additivity_report(&hex, &v(1.0, 0.0), &v(0.0, 1.0), &v(0.0, 3.0)).unwrap();
        assert!(r.hyp_half_eps);
        assert_eq!(r.eps_out, 0.0);
        assert_abs_diff_eq!(r.eps_x, 1.0, epsilon = 1e-12);
        assert_eq!(r.verdicts.half_eps, Verdict::Pass);
        assert_eq!(r.verdicts.orthogonal_pair, Verdict::Pass);
    }

    #[test]
    fn square_counterexample_is_vacuous() {
        let alpha = 0.25;
        let r = additivity_report(&linf2(), &v(1.0, 1.0), &v(1.0, -alpha), &v(-alpha, 1.0)).unwrap();
        assert_eq!(r.eps_out, 1.0);
        assert_eq!(r.eps_x, 2.0);
        assert!(!r.hyp_window && !r.hyp_orthogonal_pair && !r.hyp_half_eps);
        assert_eq!(
            r.verdicts,
            AdditivityVerdicts { window: Verdict::Vacuous, orthogonal_pair: Verdict::Vacuous, half_eps: Verdict::Vacuous }
        );
    }

    #[test]
    fn smooth_space_is_right_additive() {
        let r = additivity_report(&l2(), &v(1.0, 0.0), &v(0.0, 1.0), &v(0.0, 2.5)).unwrap();
        assert_eq!(r.eps_out, 0.0);
        assert_eq!(r.verdicts.orthogonal_pair, Verdict::Pass);
        assert_eq!(r.verdicts.half_eps, Verdict::Pass);
        assert_eq!(r.verdicts.window, Verdict::Pass);
    }

    #[test]
    fn non_additivity_witnesses() {
        assert!(non_additivity_witness(&linf2(), &v(1.0, 1.0), &v(1.0, 0.25), &v(0.25, 1.0)).unwrap());
        assert!(!non_additivity_witness(&linf2(), &v(1.0, 1.0), &v(1.0, -1.0), &v(-1.0, 1.0)).unwrap());
        let s = Space::new(sharp_hexagon_space(1.0).unwrap()).unwrap();
        let (r1, r2) = sharp_hexagon_directions(1.0);
        let (y1, y2) = (r1.scale(1.0 / s.norm(&r1).unwrap()), r2.scale(1.0 / s.norm(&r2).unwrap()));
        assert!(non_additivity_witness(&s, &sharp_hexagon_apex(1.0), &y1, &y2).unwrap());
        assert!(non_additivity_witness(&linf2(), &v(1.0, 1.0), &v(2.0, 0.5), &v(0.25, 1.0)).is_err());
    }
}
