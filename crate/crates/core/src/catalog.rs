//! Concrete spaces: regular polygons, the hexagonal family `B_δ` with a
//! sharp top vertex, direct sums and prisms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coords::{Functional, Vector};
use crate::error::{NormError, Result};
use crate::norm_engine::{Exponent, PolyhedralBall, Space, SpaceSpec};
use crate::support_map::{support_set, SupportFace};

const BUILD_TOL: f64 = 1e-9;

/// The plane normed by a regular `2n`-gon inscribed in the Euclidean circle.
#[derive(Debug, Clone)]
pub struct RegularPolygonSpace {
    pub n: usize,
    pub space: SpaceSpec,
}

/// `x_k = (cos((k-1)π/n), sin((k-1)π/n))` for `k = 1..=2n`.
pub fn regular_polygon_vertices(n: usize) -> Vec<Vector> {
    (0..2 * n)
        .map(|k| {
            let t = k as f64 * PI / n as f64;
            Vector::from([t.cos(), t.sin()])
        })
        .collect()
}

/// Closed-form supporting functional of edge `x_k x_{k+1}`:
/// `f_k(x, y) = (x cos((2k-1)π/2n) + y sin((2k-1)π/2n)) sec(π/2n)`.
pub fn regular_polygon_facets(n: usize) -> Vec<Functional> {
    let sec = 1.0 / (PI / (2 * n) as f64).cos();
    (1..=2 * n)
        .map(|k| {
            let t = (2 * k - 1) as f64 * PI / (2 * n) as f64;
            Functional::from([t.cos() * sec, t.sin() * sec])
        })
        .collect()
}

pub fn regular_polygon_space(n: usize) -> Result<RegularPolygonSpace> {
    if n < 2 {
        return Err(NormError::InvalidInput(format!("regular polygon needs n >= 2, got {n}")));
    }
    let ball = PolyhedralBall::from_parts(2, regular_polygon_vertices(n), regular_polygon_facets(n), BUILD_TOL)?;
    Ok(RegularPolygonSpace { n, space: SpaceSpec::polyhedral(ball) })
}

/// `E(X)` of the regular `2n`-gon space:
/// `2 tan(π/2n)` for even `n`, `2 tan(π/2n) sin((n-1)π/2n)` for odd `n`.
pub fn closed_form_e(n: usize) -> f64 {
    let half = PI / (2 * n) as f64;
    if n % 2 == 0 {
        2.0 * half.tan()
    } else {
        2.0 * half.tan() * ((n - 1) as f64 * half).sin()
    }
}

/// Unit ball `conv{(1,1), (0,1+δ), (-1,1), (-1,-1), (0,-1-δ), (1,-1)}`.
pub fn sharp_hexagon_space(delta: f64) -> Result<SpaceSpec> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(NormError::InvalidInput(format!("delta must be positive, got {delta}")));
    }
    let pts: Vec<Vector> = [
        [1.0, 1.0],
        [0.0, 1.0 + delta],
        [-1.0, 1.0],
        [-1.0, -1.0],
        [0.0, -1.0 - delta],
        [1.0, -1.0],
    ]
    .into_iter()
    .map(Vector::from)
    .collect();
    Ok(SpaceSpec::polyhedral(PolyhedralBall::planar(&pts, BUILD_TOL)?))
}

/// The sharp vertex `P = (0, 1+δ)` of `B_δ`.
pub fn sharp_hexagon_apex(delta: f64) -> Vector {
    Vector::from([0.0, 1.0 + delta])
}

/// `R₁ = (1, δ)` and `R₂ = (-1, δ)`, both orthogonal to the apex.
pub fn sharp_hexagon_directions(delta: f64) -> (Vector, Vector) {
    (Vector::from([1.0, delta]), Vector::from([-1.0, delta]))
}

/// The two extreme supporting functionals at the apex,
/// `(±δ/(1+δ), 1/(1+δ))`.
pub fn sharp_hexagon_apex_functionals(delta: f64) -> (Functional, Functional) {
    let s = 1.0 + delta;
    (Functional::from([delta / s, 1.0 / s]), Functional::from([-delta / s, 1.0 / s]))
}

pub fn direct_sum_space(p: Exponent, left: SpaceSpec, right: SpaceSpec) -> SpaceSpec {
    SpaceSpec::direct_sum(p, left, right)
}

/// `ℝ` with its absolute value, as the segment `[-1, 1]`.
pub fn real_line() -> SpaceSpec {
    SpaceSpec::polyhedral(PolyhedralBall::segment())
}

/// Right prism over the regular `2n`-gon: `X ⊕_∞ ℝ`.
pub fn prism_space(n: usize) -> Result<SpaceSpec> {
    Ok(direct_sum_space(Exponent::INFINITY, regular_polygon_space(n)?.space, real_line()))
}

/// Which description of `J((x, y))` applies in `X ⊕_p Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectSumCase {
    /// `1 < p < ∞`: Hölder-weighted pairs `(f, g)`.
    Weighted,
    /// `p = 1`, `y = θ`: `J(x) × B_{Y*}`.
    SumLeftOnly,
    /// `p = 1`, `x = θ`: `B_{X*} × J(y)`.
    SumRightOnly,
    /// `p = 1`, both nonzero: `J(x) × J(y)`.
    SumBoth,
    /// `p = ∞`, `‖x‖ > ‖y‖`: `J(x) × {θ}`.
    MaxLeft,
    /// `p = ∞`, `‖x‖ < ‖y‖`: `{θ} × J(y)`.
    MaxRight,
    /// `p = ∞`, `‖x‖ = ‖y‖`: the pairs `(αf, (1-α)g)` lie in the face.
    MaxTie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectSumFace {
    pub face: SupportFace,
    pub case: DirectSumCase,
    /// The summand formula only yields a subset of `J((x, y))` in this case.
    pub inclusion_only: bool,
}

/// `J((x, y))` in `X ⊕_p Y` assembled from the summand faces.
///
/// In the tie case of `p = ∞` the face is read off the product polytope when
/// one is available; otherwise the summand formula is used.
pub fn direct_sum_support(space: &Space, z: &Vector) -> Result<DirectSumFace> {
    let formula = summand_formula_face(space, z)?;
    if formula.case == DirectSumCase::MaxTie && space.ball().is_some() {
        return Ok(DirectSumFace { face: support_set(space, z)?, ..formula });
    }
    Ok(formula)
}

/// The extreme points produced by the summand formulas alone.
pub fn summand_formula_face(space: &Space, z: &Vector) -> Result<DirectSumFace> {
    let SpaceSpec::DirectSum { p, .. } = space.spec() else {
        return Err(NormError::InvalidInput(format!("{} is not a direct sum", space.spec().label())));
    };
    let p = *p;
    let (left, right) = space.summands().expect("direct sums carry their summands");
    space.check_dim(z.dim())?;
    if z.is_zero() {
        return Err(NormError::ZeroVector("x"));
    }
    let (x, y) = z.split(left.dim());
    let (nx, ny) = (left.norm(&x)?, right.norm(&y)?);
    let norm = p.combine(nx, ny);
    let faces = |s: &Space, v: &Vector| -> Result<Vec<Functional>> {
        if v.is_zero() {
            Ok(vec![Functional::zeros(s.dim())])
        } else {
            Ok(support_set(s, v)?.vertices)
        }
    };
    let dual_vertices = |s: &Space| -> Result<Vec<Functional>> {
        let ball = s.ball().ok_or_else(|| {
            NormError::Capability(format!("dual ball of {} has infinitely many extreme points", s.spec().label()))
        })?;
        Ok(ball.facets().iter().map(|f| f.normal.clone()).collect())
    };
    let pairs = |fs: &[Functional], gs: &[Functional], a: f64, b: f64| -> Vec<Functional> {
        fs.iter().flat_map(|f| gs.iter().map(move |g| f.scale(a).concat(&g.scale(b)))).collect()
    };

    let (vertices, case) = if p.is_intermediate() {
        let e = p.value() - 1.0;
        let (a, b) = ((nx / norm).powf(e), (ny / norm).powf(e));
        (pairs(&faces(left, &x)?, &faces(right, &y)?, a, b), DirectSumCase::Weighted)
    } else if p.is_one() {
        if y.is_zero() {
            (pairs(&faces(left, &x)?, &dual_vertices(right)?, 1.0, 1.0), DirectSumCase::SumLeftOnly)
        } else if x.is_zero() {
            (pairs(&dual_vertices(left)?, &faces(right, &y)?, 1.0, 1.0), DirectSumCase::SumRightOnly)
        } else {
            (pairs(&faces(left, &x)?, &faces(right, &y)?, 1.0, 1.0), DirectSumCase::SumBoth)
        }
    } else {
        let tie = (nx - ny).abs() <= space.tolerance().norm * nx.max(ny);
        let zl = [Functional::zeros(left.dim())];
        let zr = [Functional::zeros(right.dim())];
        if tie {
            let mut v = pairs(&faces(left, &x)?, &zr, 1.0, 1.0);
            v.extend(pairs(&zl, &faces(right, &y)?, 1.0, 1.0));
            (v, DirectSumCase::MaxTie)
        } else if nx > ny {
            (pairs(&faces(left, &x)?, &zr, 1.0, 1.0), DirectSumCase::MaxLeft)
        } else {
            (pairs(&zl, &faces(right, &y)?, 1.0, 1.0), DirectSumCase::MaxRight)
        }
    };
    Ok(DirectSumFace {
        face: SupportFace { x: z.clone(), vertices, attained_value: norm },
        case,
        inclusion_only: case == DirectSumCase::MaxTie,
    })
}
