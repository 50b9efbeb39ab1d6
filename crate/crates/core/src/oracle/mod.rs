//! Brute-force and sampling cross-checks for the analytic routines.
//!
//! Everything random here is driven by ChaCha8 seeded from a `u64`; trial
//! `k` of a run with seed `s` uses stream `k` of seed `s`, so any single
//! trial can be replayed in isolation.

pub mod suites;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::coords::Vector;
use crate::derivatives::{rho, rho_numeric_with, QuotientForm};
use crate::error::{NormError, Result};
use crate::norm_engine::{PolyhedralBall, Space, SpaceSpec};
use crate::orthogonality::{eps_min, worst_def_slack};
use crate::support_map::support_set;

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Deterministic unit vectors of a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub seed: u64,
    pub count: usize,
    pub points: Vec<Vector>,
}

impl SampleSet {
    /// Points on the unit sphere.
    ///
    /// For planar polyhedral balls the boundary is cut into `count` pieces
    /// of equal length in the space's own norm and one point is placed in
    /// each, shifted by a common seeded phase; every sphere point is then
    /// within `perimeter / (2 count)` of a sample. Elsewhere the points are
    /// normalized Gaussian directions.
    pub fn on_sphere(space: &Space, seed: u64, count: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = match space.ball() {
            Some(ball) if ball.dim() == 2 => stratified_boundary(space, ball, count, rng.random::<f64>())?,
            _ => (0..count).map(|_| random_unit_vector(space, &mut rng)).collect::<Result<Vec<_>>>()?,
        };
        Ok(Self { seed, count, points })
    }
}

fn stratified_boundary(space: &Space, ball: &PolyhedralBall, count: usize, phase: f64) -> Result<Vec<Vector>> {
    let vs = ball.vertices();
    let n = vs.len();
    let lengths = (0..n).map(|k| space.norm(&(&vs[(k + 1) % n] - &vs[k]))).collect::<Result<Vec<_>>>()?;
    let perimeter: f64 = lengths.iter().sum();
    let mut out = Vec::with_capacity(count);
    let (mut edge, mut start) = (0, 0.0);
    for i in 0..count {
        let s = (i as f64 + phase) / count as f64 * perimeter;
        while edge + 1 < n && s > start + lengths[edge] {
            start += lengths[edge];
            edge += 1;
        }
        let t = ((s - start) / lengths[edge]).clamp(0.0, 1.0);
        let (a, b) = (&vs[edge], &vs[(edge + 1) % n]);
        out.push(&a.scale(1.0 - t) + &b.scale(t));
    }
    Ok(out)
}

/// Normalized Gaussian direction.
pub fn random_unit_vector(space: &Space, rng: &mut impl Rng) -> Result<Vector> {
    loop {
        let v = Vector::from((0..space.dim()).map(|_| rng.sample::<f64, _>(StandardNormal)).collect::<Vec<_>>());
        let n = space.norm(&v)?;
        if n > 1e-12 {
            return Ok(v.scale(1.0 / n));
        }
    }
}

/// Symmetric polygon with `2m` candidate vertices: `m` sorted angles in
/// `(0, π)` with radii in `[0.5, 2]`, reflected through the origin and
/// reduced to its extreme points.
pub fn random_polygon(seed: u64, m: usize) -> Result<SpaceSpec> {
    random_polygon_with(&mut ChaCha8Rng::seed_from_u64(seed), m)
}

pub fn random_polygon_with(rng: &mut impl Rng, m: usize) -> Result<SpaceSpec> {
    if m < 2 {
        return Err(NormError::InvalidInput(format!("random polygon needs m >= 2, got {m}")));
    }
    loop {
        let mut angles: Vec<f64> = (0..m).map(|_| rng.random_range(1e-3..std::f64::consts::PI - 1e-3)).collect();
        angles.sort_by(f64::total_cmp);
        // Nearly equal angles make needle-thin facets; draw again.
        if angles.windows(2).any(|w| w[1] - w[0] < 1e-3) {
            continue;
        }
        let mut pts = Vec::with_capacity(2 * m);
        for a in angles {
            let r = rng.random_range(0.5..=2.0);
            let p = Vector::from([r * a.cos(), r * a.sin()]);
            pts.push(-&p);
            pts.push(p);
        }
        if let Ok(ball) = PolyhedralBall::planar(&pts, 1e-9) {
            return Ok(SpaceSpec::polyhedral(ball));
        }
    }
}

/// Checks a computed `J(x)` against the definition.
///
/// Every reported functional must attain `‖x‖` at `x`, have dual norm one,
/// stay below one on the sampled unit vectors, and agree with a forward
/// difference quotient. On polyhedral spaces every dual-ball vertex left out
/// of the face must also fall short of `‖x‖` by more than `τ/10`.
pub fn verify_support_by_sampling(space: &Space, x: &Vector, samples: &SampleSet) -> Result<bool> {
    let tol = *space.tolerance();
    let face = support_set(space, x)?;
    let nx = space.norm(x)?;
    for f in &face.vertices {
        if (f.apply(x) - nx).abs() > tol.face * nx.max(1.0) {
            return Ok(false);
        }
        if (space.dual_norm(f)? - 1.0).abs() > tol.norm {
            return Ok(false);
        }
        if samples.points.iter().any(|y| f.apply(y) > 1.0 + tol.norm) {
            return Ok(false);
        }
    }
    if let Some(ball) = space.ball() {
        let unit = x.scale(1.0 / nx);
        for facet in ball.facets() {
            let g = &facet.normal;
            let member = face.vertices.iter().any(|f| f.max_abs_diff(g) <= tol.face);
            if !member && g.apply(&unit) >= 1.0 - tol.face / 10.0 {
                return Ok(false);
            }
        }
    }
    for y in samples.points.iter().take(16) {
        let exact = rho(space, x, y)?.rho_plus;
        let numeric = rho_numeric_with(space, x, y, 1e-7, QuotientForm::Unsquared)?;
        if (exact - numeric).abs() > 1e-5 * nx.max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Geometric grid of `count` steps, half of each sign, with `|λ|` spanning
/// `[1e-6, 1e3]`.
pub fn lambda_grid(count: usize) -> Vec<f64> {
    let half = (count / 2).max(2);
    let (lo, hi) = (-6.0f64, 3.0f64);
    (0..half)
        .flat_map(|i| {
            let l = 10f64.powf(lo + (hi - lo) * i as f64 / (half - 1) as f64);
            [l, -l]
        })
        .collect()
}

/// Runs the inequality check on `grid`, then twice more on a grid ten times
/// finer around the worst step found so far.
fn def_holds_adaptive(space: &Space, x: &Vector, y: &Vector, eps: f64, grid: &[f64]) -> Result<bool> {
    let floor = -space.tolerance().norm * space.norm(x)?.powi(2);
    let half = (grid.len() / 2).max(2);
    let mut spacing = 9.0 / (half - 1) as f64;
    let mut points = grid.to_vec();
    for _ in 0..3 {
        let (slack, at) = worst_def_slack(space, x, y, eps, &points)?;
        if slack < floor {
            return Ok(false);
        }
        spacing /= 10.0;
        points = (-10..=10).map(|k| at * 10f64.powf(k as f64 * spacing)).collect();
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub eps_min: f64,
    /// Inequality holds at `eps_min + 1e-6`.
    pub holds_above: bool,
    /// Inequality fails at `eps_min - 1e-3`; `None` when `eps_min <= 1e-3`.
    pub fails_below: Option<bool>,
}

impl InequalityCheck {
    pub fn passed(&self) -> bool {
        self.holds_above && self.fails_below.unwrap_or(true)
    }
}

/// Compares the face-based `eps_min` against the defining inequality
/// sampled on an adaptive grid of `lambda_count` steps.
pub fn inequality_check(space: &Space, x: &Vector, y: &Vector, lambda_count: usize) -> Result<InequalityCheck> {
    if y.is_zero() {
        return Err(NormError::ZeroVector("y"));
    }
    let e = eps_min(space, x, y)?;
    let grid = lambda_grid(lambda_count);
    let holds_above = def_holds_adaptive(space, x, y, e + 1e-6, &grid)?;
    let fails_below = if e > 1e-3 { Some(!def_holds_adaptive(space, x, y, e - 1e-3, &grid)?) } else { None };
    Ok(InequalityCheck { eps_min: e, holds_above, fails_below })
}

pub fn verify_inequality_vs_eps_min(space: &Space, x: &Vector, y: &Vector, lambda_count: usize) -> Result<bool> {
    Ok(inequality_check(space, x, y, lambda_count)?.passed())
}
