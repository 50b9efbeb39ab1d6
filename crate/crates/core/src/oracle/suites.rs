//! Named verification suites. Each one reproduces a closed-form result or a
//! structural identity over a deterministic family of inputs and reports
//! every violation together with the seed and trial index that produced it.

use std::ops::RangeInclusive;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    inequality_check, random_polygon, random_polygon_with, random_unit_vector, trial_rng, verify_support_by_sampling,
    SampleSet,
};
use crate::catalog::{
    closed_form_e, direct_sum_space, sharp_hexagon_apex, sharp_hexagon_directions, sharp_hexagon_space, prism_space,
    real_line, regular_polygon_facets, regular_polygon_space, regular_polygon_vertices, summand_formula_face,
    DirectSumCase,
};
use crate::coords::{contains_all, same_point_set, Functional, Vector};
use crate::derivatives::{rho, rho_numeric, sampled_smoothness_gap, smoothness_gap};
use crate::error::Result;
use crate::norm_engine::{Exponent, PolyhedralBall, Space, SpaceSpec};
use crate::orthogonality::{additivity_report, eps_min, is_bj_orthogonal, non_additivity_witness, Verdict};
use crate::support_map::{
    diam_support, face_diameter, facetwise_face_diameters, facetwise_segment_lengths, space_constants, support_set,
};

/// Names accepted by [`run_named`], in execution order.
pub const SUITE_NAMES: [&str; 13] = [
    "support_sampling",
    "regular_polygons",
    "sharp_hexagon",
    "rotundity",
    "duality",
    "smoothness_gap",
    "derivatives",
    "direct_sum_faces",
    "direct_sum_smoothness",
    "additivity_window",
    "additivity_orthogonal_pair",
    "additivity_half_eps",
    "eps_min_inequality",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    /// Largest deviation observed, where the suite measures one.
    pub max_error: f64,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    fn new(name: &str, seed: u64) -> Self {
        Self { name: name.into(), seed, trials: 0, max_error: 0.0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.trials > 0
    }

    fn check(&mut self, trial: u64, ok: bool, detail: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures.push(Failure { trial, detail: detail() });
        }
    }

    /// Records `|error| <= tol`.
    fn within(&mut self, trial: u64, error: f64, tol: f64, what: impl FnOnce() -> String) {
        self.max_error = self.max_error.max(error.abs());
        self.check(trial, error.abs() <= tol, || format!("{}: error {error:e} exceeds {tol:e}", what()));
    }

    fn error(&mut self, trial: u64, e: impl std::fmt::Display) {
        self.trials += 1;
        self.failures.push(Failure { trial, detail: format!("error: {e}") });
    }
}

/// Runs a suite by name with its default parameters.
pub fn run_named(name: &str, seed: u64) -> Option<SuiteResult> {
    Some(match name {
        "support_sampling" => support_sampling(seed, 1_000, 256),
        "regular_polygons" => regular_polygons(2..=12, 1e-9),
        "sharp_hexagon" => sharp_hexagon(&[0.01, 0.1, 0.5, 1.0, 2.0, 10.0], 1e-9),
        "rotundity" => rotundity(seed, 50, 1e-12),
        "duality" => duality(seed, 50, 1e-9),
        "smoothness_gap" => smoothness_gap_suite(seed, 20, 10_000, 1e-12, 1e-3),
        "derivatives" => derivatives(seed, 10, 1_000, 1e-6, 1e-5),
        "direct_sum_faces" => direct_sum_faces(seed, 20, 1e-9),
        "direct_sum_smoothness" => direct_sum_smoothness(seed, 1_000, 1e-9),
        "additivity_window" => additivity_window(seed, 10_000),
        "additivity_orthogonal_pair" => additivity_orthogonal_pair(seed, 10_000),
        "additivity_half_eps" => additivity_half_eps(seed, 10_000, 1e-9),
        "eps_min_inequality" => eps_min_inequality(seed, 1_000, 200),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    SUITE_NAMES.iter().filter_map(|n| run_named(n, seed)).collect()
}

fn polyhedral_space(spec: SpaceSpec) -> Space {
    Space::new(spec).expect("catalog spaces are valid")
}

fn ball_of(space: &Space) -> &PolyhedralBall {
    space.ball().expect("polyhedral space")
}

fn coords<T: AsRef<[f64]>>(items: impl IntoIterator<Item = T>) -> Vec<Vec<f64>> {
    items.into_iter().map(|c| c.as_ref().to_vec()).collect()
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        self.coords()
    }
}

impl AsRef<[f64]> for Functional {
    fn as_ref(&self) -> &[f64] {
        self.coords()
    }
}

/// A mixed family of spaces for sampled checks: random polygons, smooth and
/// polyhedral `ℓp`, a prism and direct sums.
fn mixed_space(rng: &mut rand_chacha::ChaCha8Rng) -> Result<Space> {
    let spec = match rng.random_range(0..6) {
        0 | 1 => {
            let m = rng.random_range(2..=9);
            random_polygon_with(rng, m)?
        }
        2 => {
            let p = *[1.0, 1.5, 2.0, 3.0, f64::INFINITY].choose(rng).expect("nonempty");
            SpaceSpec::lp(Exponent::new(p)?, rng.random_range(2..=4))
        }
        3 => prism_space(rng.random_range(2..=6))?,
        4 => {
            let p = *[1.0, f64::INFINITY].choose(rng).expect("nonempty");
            let (a, b) = (rng.random_range(2..=5), rng.random_range(2..=5));
            direct_sum_space(Exponent::new(p)?, random_polygon_with(rng, a)?, random_polygon_with(rng, b)?)
        }
        _ => {
            let p = *[1.5, 2.0, 4.0].choose(rng).expect("nonempty");
            direct_sum_space(Exponent::new(p)?, regular_polygon_space(rng.random_range(2..=6))?.space, real_line())
        }
    };
    Space::new(spec)
}

/// Every computed `J(x)` against the definition, on `inputs` random
/// `(space, x)` pairs with `samples` sphere points each.
pub fn support_sampling(seed: u64, inputs: u64, samples: usize) -> SuiteResult {
    let mut r = SuiteResult::new("support_sampling", seed);
    for trial in 0..inputs {
        let mut rng = trial_rng(seed, trial);
        let outcome = (|| -> Result<()> {
            let space = mixed_space(&mut rng)?;
            let x = match space.ball() {
                Some(b) if rng.random_bool(0.5) => b.vertices().choose(&mut rng).expect("nonempty").clone(),
                _ => random_unit_vector(&space, &mut rng)?,
            }
            .scale(rng.random_range(0.2..5.0));
            let set = SampleSet::on_sphere(&space, rng.random(), samples)?;
            let ok = verify_support_by_sampling(&space, &x, &set)?;
            r.check(trial, ok, || format!("{}: face of {:?} contradicted by sampling", space.spec().label(), x.coords()));
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(trial, e);
        }
    }
    r
}

/// `E` of regular `2n`-gons against the closed form, and the hull-derived
/// facet functionals against their closed form.
pub fn regular_polygons(ns: RangeInclusive<usize>, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("regular_polygons", 0);
    for n in ns {
        let trial = n as u64;
        let space = polyhedral_space(regular_polygon_space(n).expect("n >= 2").space);
        match space_constants(&space) {
            Ok(c) => r.within(trial, c.e - closed_form_e(n), tol, || format!("E of 2n-gon, n = {n}")),
            Err(e) => r.error(trial, e),
        }
        match PolyhedralBall::planar(&regular_polygon_vertices(n), 1e-9) {
            Ok(hull) => {
                let derived = coords(hull.facets().iter().map(|f| &f.normal));
                let closed = coords(regular_polygon_facets(n));
                r.check(trial, same_point_set(&derived, &closed, tol), || format!("facet functionals differ, n = {n}"));
            }
            Err(e) => r.error(trial, e),
        }
    }
    r
}

/// The sharp hexagon: `diam J(P) = 2δ/(1+δ)`, `P ⊥ R₁`, `P ⊥ R₂`, and `P`
/// is not approximately orthogonal to `R₁ + R₂`.
pub fn sharp_hexagon(deltas: &[f64], tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("sharp_hexagon", 0);
    for (i, &delta) in deltas.iter().enumerate() {
        let trial = i as u64;
        let space = polyhedral_space(sharp_hexagon_space(delta).expect("delta > 0"));
        let p = sharp_hexagon_apex(delta);
        let (r1, r2) = sharp_hexagon_directions(delta);
        let outcome = (|| -> Result<()> {
            let d = diam_support(&space, &p)?;
            r.within(trial, d - 2.0 * delta / (1.0 + delta), tol, || format!("diam J(P), delta = {delta}"));
            let (b1, b2) = (is_bj_orthogonal(&space, &p, &r1)?, is_bj_orthogonal(&space, &p, &r2)?);
            r.check(trial, b1 && b2, || format!("P not orthogonal to R1/R2, delta = {delta}"));
            let e = eps_min(&space, &p, &(&r1 + &r2))?;
            r.check(trial, e >= 1.0 - tol, || format!("eps_min(P, R1+R2) = {e}, delta = {delta}"));
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(trial, e);
        }
    }
    r
}

/// `S = R`, and `S` equals the facet-wise supremum of `diam M_f⁺`, on random
/// polygons.
pub fn rotundity(seed: u64, count: u64, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("rotundity", seed);
    for trial in 0..count {
        let mut rng = trial_rng(seed, trial);
        let m = rng.random_range(2..=9);
        let space = polyhedral_space(random_polygon_with(&mut rng, m).expect("m >= 2"));
        let outcome = (|| -> Result<()> {
            let c = space_constants(&space)?;
            r.check(trial, c.s == c.r, || format!("S = {} but R = {}", c.s, c.r));
            let by_face = facetwise_face_diameters(&space)?;
            let by_incidence = facetwise_segment_lengths(&space)?;
            let sup = by_face.iter().copied().fold(0.0, f64::max);
            r.within(trial, c.s - sup, tol, || "S against facet-wise sup".into());
            let worst = by_face.iter().zip(&by_incidence).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            r.within(trial, worst, tol, || "facet-wise diameters disagree".into());
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(trial, e);
        }
    }
    r
}

/// `E(X) = S(X*)` on random polygons.
pub fn duality(seed: u64, count: u64, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("duality", seed);
    for trial in 0..count {
        let mut rng = trial_rng(seed, trial);
        let m = rng.random_range(2..=9);
        let space = polyhedral_space(random_polygon_with(&mut rng, m).expect("m >= 2"));
        let outcome = (|| -> Result<()> {
            let e = space_constants(&space)?.e;
            let dual = polyhedral_space(SpaceSpec::polyhedral(space.polar()?));
            let s_dual = space_constants(&dual)?.s;
            r.within(trial, e - s_dual, tol, || format!("E(X) = {e}, S(X*) = {s_dual}"));
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(trial, e);
        }
    }
    r
}

/// Planar test polygons: regular `2n`-gons, sharp hexagons and `random`
/// random polygons.
pub fn test_polygons(seed: u64, random: u64) -> Vec<(String, Space)> {
    let mut out: Vec<(String, Space)> = (2..=12)
        .map(|n| (format!("regular_{n}"), polyhedral_space(regular_polygon_space(n).expect("n >= 2").space)))
        .collect();
    for delta in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0] {
        out.push((format!("sharp_hexagon_{delta}"), polyhedral_space(sharp_hexagon_space(delta).expect("delta > 0"))));
    }
    for k in 0..random {
        let mut rng = trial_rng(seed, 1_000_000 + k);
        let m = rng.random_range(2..=9);
        out.push((format!("random_{k}"), polyhedral_space(random_polygon_with(&mut rng, m).expect("m >= 2"))));
    }
    out
}

/// The exact gap `sup_y (ρ'+ - ρ'-)` at every vertex equals `‖x‖ diam J(x)`,
/// and its value over `directions` sampled unit vectors never exceeds it and
/// comes within `sampled_tol`.
pub fn smoothness_gap_suite(seed: u64, random: u64, directions: usize, exact_tol: f64, sampled_tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("smoothness_gap", seed);
    for (k, (name, space)) in test_polygons(seed, random).into_iter().enumerate() {
        let outcome = (|| -> Result<()> {
            let samples = SampleSet::on_sphere(&space, seed.wrapping_add(k as u64), directions)?;
            for (i, x) in ball_of(&space).vertices().iter().enumerate() {
                let trial = (k * 1000 + i) as u64;
                let exact = smoothness_gap(&space, x)?;
                let via_diam = space.norm(x)? * diam_support(&space, x)?;
                r.within(trial, exact - via_diam, exact_tol, || format!("{name} vertex {i}: gap vs norm * diam"));
                let sampled = sampled_smoothness_gap(&space, x, &samples.points)?;
                r.check(trial, sampled <= exact + exact_tol, || format!("{name} vertex {i}: sampled {sampled} > exact {exact}"));
                r.within(trial, exact - sampled, sampled_tol, || format!("{name} vertex {i}: sampled sup too low"));
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(k as u64, e);
        }
    }
    r
}

fn polyhedral_family(seed: u64, random: u64) -> Vec<(String, Space)> {
    let mut spaces = test_polygons(seed, random);
    spaces.push(("prism_3".into(), polyhedral_space(prism_space(3).expect("n >= 2"))));
    spaces.push(("l1_3".into(), polyhedral_space(SpaceSpec::lp(Exponent::ONE, 3))));
    spaces.push((
        "hexagon_l1_sum_line".into(),
        polyhedral_space(direct_sum_space(Exponent::ONE, regular_polygon_space(3).expect("n >= 2").space, real_line())),
    ));
    spaces
}

/// A pair `(x, y)` with norms in `[0.5, 2]`; `x` is a ball vertex three times
/// in ten. Generic points whose step `x ± step·y` crosses a breakpoint of the
/// norm are redrawn: there the quotient measures the neighbouring facet, and
/// such points have probability of order `step`.
fn derivative_sample(space: &Space, step: f64, rng: &mut rand_chacha::ChaCha8Rng) -> Result<(Vector, Vector)> {
    loop {
        let x = match space.ball() {
            Some(b) if rng.random_bool(0.3) => b.vertices().choose(rng).expect("nonempty").clone(),
            _ => random_unit_vector(space, rng)?,
        }
        .scale(rng.random_range(0.5..2.0));
        let y = random_unit_vector(space, rng)?.scale(rng.random_range(0.5..2.0));
        let face = coords(&support_set(space, &x)?.vertices);
        let mut stays = true;
        for h in [step, -step] {
            let moved = coords(&support_set(space, &(&x + &y.scale(h)))?.vertices);
            stays &= contains_all(&face, &moved, 1e-9);
        }
        if stays {
            return Ok((x, y));
        }
    }
}

/// Squared difference quotients at `±step` against `ρ'±`.
pub fn derivatives(seed: u64, random: u64, per_space: u64, step: f64, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("derivatives", seed);
    for (k, (name, space)) in polyhedral_family(seed, random).into_iter().enumerate() {
        for t in 0..per_space {
            let trial = k as u64 * per_space + t;
            let mut rng = trial_rng(seed, trial);
            let outcome = (|| -> Result<()> {
                let (x, y) = derivative_sample(&space, step, &mut rng)?;
                let exact = rho(&space, &x, &y)?;
                let plus = rho_numeric(&space, &x, &y, step)?;
                let minus = rho_numeric(&space, &x, &y, -step)?;
                r.within(trial, plus - exact.rho_plus, tol, || format!("{name}: forward quotient"));
                r.within(trial, minus - exact.rho_minus, tol, || format!("{name}: backward quotient"));
                r.check(trial, exact.rho_minus <= exact.rho_plus + 1e-9, || format!("{name}: rho- > rho+"));
                Ok(())
            })();
            if let Err(e) = outcome {
                r.error(trial, e);
            }
        }
    }
    r
}

/// Random point of a polygon space with prescribed norm.
fn point_with_norm(space: &Space, norm: f64, rng: &mut impl Rng) -> Result<Vector> {
    Ok(random_unit_vector(space, rng)?.scale(norm))
}

/// A vertex of the ball, scaled.
fn vertex_with_norm(space: &Space, norm: f64, rng: &mut impl Rng) -> Vector {
    ball_of(space).vertices().choose(rng).expect("nonempty").scale(norm)
}

/// Summand formulas for `J((x, y))` against the generic polytope face for
/// `p ∈ {1, ∞}`, and attainment plus unit dual norm of the weighted formula
/// for `p ∈ {1.5, 2, 3}`.
pub fn direct_sum_faces(seed: u64, pairs: u64, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("direct_sum_faces", seed);
    for pair in 0..pairs {
        let mut rng = trial_rng(seed, pair);
        let (mx, my) = (rng.random_range(2..=6), rng.random_range(2..=6));
        let x_spec = random_polygon_with(&mut rng, mx).expect("m >= 2");
        let y_spec = random_polygon_with(&mut rng, my).expect("m >= 2");
        let (xs, ys) = (polyhedral_space(x_spec.clone()), polyhedral_space(y_spec.clone()));
        for (pi, p) in [Exponent::ONE, Exponent::INFINITY].into_iter().enumerate() {
            let z = polyhedral_space(direct_sum_space(p, x_spec.clone(), y_spec.clone()));
            for case in 0..8u64 {
                let trial = pair * 100 + pi as u64 * 10 + case;
                let outcome = (|| -> Result<()> {
                    let (nx, ny) = (rng.random_range(0.2..2.0), rng.random_range(0.2..2.0));
                    let mut x = if case % 2 == 0 { vertex_with_norm(&xs, nx, &mut rng) } else { point_with_norm(&xs, nx, &mut rng)? };
                    let mut y = if case % 3 == 0 { vertex_with_norm(&ys, ny, &mut rng) } else { point_with_norm(&ys, ny, &mut rng)? };
                    match case {
                        6 => x = Vector::zeros(2),
                        7 => y = Vector::zeros(2),
                        4 | 5 if p.is_infinite() => y = y.scale(nx / ny),
                        _ => {}
                    }
                    let point = x.concat(&y);
                    let generic = support_set(&z, &point)?;
                    let formula = summand_formula_face(&z, &point)?;
                    let (g, f) = (coords(&generic.vertices), coords(&formula.face.vertices));
                    let ok = if formula.case == DirectSumCase::MaxTie {
                        contains_all(&g, &f, tol)
                    } else {
                        same_point_set(&g, &f, tol)
                    };
                    r.check(trial, ok, || format!("p = {p}, case {:?}: formula {f:?} vs polytope {g:?}", formula.case));
                    Ok(())
                })();
                if let Err(e) = outcome {
                    r.error(trial, e);
                }
            }
        }
        for (pi, p) in [1.5, 2.0, 3.0].into_iter().enumerate() {
            let z = polyhedral_space(direct_sum_space(Exponent::new(p).expect("p >= 1"), x_spec.clone(), y_spec.clone()));
            for case in 0..4u64 {
                let trial = pair * 100 + 50 + pi as u64 * 10 + case;
                let outcome = (|| -> Result<()> {
                    let x = if case == 3 { Vector::zeros(2) } else { point_with_norm(&xs, rng.random_range(0.2..2.0), &mut rng)? };
                    let y = if case == 2 { vertex_with_norm(&ys, 0.7, &mut rng) } else { vertex_with_norm(&ys, rng.random_range(0.2..2.0), &mut rng) };
                    let point = x.concat(&y);
                    let norm = z.norm(&point)?;
                    for f in support_set(&z, &point)?.vertices {
                        r.within(trial, f.apply(&point) - norm, tol * norm.max(1.0), || format!("p = {p}: F(z) != |z|"));
                        r.within(trial, z.dual_norm(&f)? - 1.0, tol, || format!("p = {p}: dual norm of F"));
                    }
                    Ok(())
                })();
                if let Err(e) = outcome {
                    r.error(trial, e);
                }
            }
        }
    }
    r
}

/// Smoothness of points in direct sums: the prism over the hexagon, `⊕_1`
/// axis points, and `diam J((x, y)) <= max(diam J(x), diam J(y))` for
/// `1 < p < ∞`.
pub fn direct_sum_smoothness(seed: u64, samples: u64, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("direct_sum_smoothness", seed);
    let hexagon = regular_polygon_space(3).expect("n >= 2").space;
    let prism = polyhedral_space(prism_space(3).expect("n >= 2"));
    for (i, t) in [0.0, 0.5, -0.5, 0.9, -0.999, 1.0, -1.0].into_iter().enumerate() {
        let point = Vector::from([1.0, 0.0, t]);
        let expected = if f64::abs(t) < 1.0 { 1.0 } else { 2.0 };
        match diam_support(&prism, &point) {
            Ok(d) => r.within(i as u64, d - expected, tol, || format!("prism at (v1, {t})")),
            Err(e) => r.error(i as u64, e),
        }
    }
    let plus_line = polyhedral_space(direct_sum_space(Exponent::ONE, hexagon.clone(), real_line()));
    let plus_hex = polyhedral_space(direct_sum_space(Exponent::ONE, hexagon.clone(), hexagon.clone()));
    for (i, (space, point)) in [
        (&plus_line, Vector::from([1.0, 0.0, 0.0])),
        (&plus_line, Vector::from([0.3, 0.4, 0.0])),
        (&plus_line, Vector::from([0.0, 0.0, -2.0])),
        (&plus_hex, Vector::from([0.5, 0.2, 0.0, 0.0])),
        (&plus_hex, Vector::from([0.0, 0.0, 1.0, 0.0])),
    ]
    .into_iter()
    .enumerate()
    {
        match diam_support(space, &point) {
            Ok(d) => r.within(100 + i as u64, d - 2.0, tol, || format!("l1 sum at axis point {:?}", point.coords())),
            Err(e) => r.error(100 + i as u64, e),
        }
    }
    for trial in 0..samples {
        let mut rng = trial_rng(seed, trial);
        let outcome = (|| -> Result<()> {
            let p = *[1.5, 2.0, 3.0, 4.0].choose(&mut rng).expect("nonempty");
            let (mx, my) = (rng.random_range(2..=7), rng.random_range(2..=7));
            let xs = polyhedral_space(random_polygon_with(&mut rng, mx)?);
            let ys = polyhedral_space(random_polygon_with(&mut rng, my)?);
            let z = polyhedral_space(direct_sum_space(Exponent::new(p)?, xs.spec().clone(), ys.spec().clone()));
            let pick = |s: &Space, rng: &mut rand_chacha::ChaCha8Rng| -> Result<Vector> {
                Ok(match rng.random_range(0..3) {
                    0 => vertex_with_norm(s, rng.random_range(0.2..2.0), rng),
                    1 => point_with_norm(s, rng.random_range(0.2..2.0), rng)?,
                    _ => Vector::zeros(2),
                })
            };
            let (x, y) = (pick(&xs, &mut rng)?, pick(&ys, &mut rng)?);
            if x.is_zero() && y.is_zero() {
                return Ok(());
            }
            let ex = if x.is_zero() { 0.0 } else { diam_support(&xs, &x)? };
            let ey = if y.is_zero() { 0.0 } else { diam_support(&ys, &y)? };
            let ez = diam_support(&z, &x.concat(&y))?;
            r.check(1000 + trial, ez <= ex.max(ey) + tol, || format!("p = {p}: diam J(z) = {ez} > max({ex}, {ey})"));
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(1000 + trial, e);
        }
    }
    r
}

/// Random point of `J(x)` in the plane, and a direction it annihilates.
fn killed_direction(face: &[Functional], rng: &mut impl Rng) -> Vector {
    let t: f64 = rng.random();
    let (a, b) = (&face[0], &face[face.len() - 1]);
    let f = &a.scale(t) + &b.scale(1.0 - t);
    Vector::from([-f[1], f[0]])
}

/// Random polygon together with a sphere point and `diam J(x)`; vertices are
/// drawn four times out of five.
fn random_base_point(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(Space, Vector, Vec<Functional>, f64)> {
    let m = rng.random_range(3..=10);
    let space = polyhedral_space(random_polygon_with(rng, m)?);
    let x = if rng.random_bool(0.8) {
        vertex_with_norm(&space, rng.random_range(0.5..2.0), rng)
    } else {
        point_with_norm(&space, rng.random_range(0.5..2.0), rng)?
    };
    let face = support_set(&space, &x)?.vertices;
    let eps_x = face_diameter(&space, &face)?;
    Ok((space, x, face, eps_x))
}

fn sign(rng: &mut impl Rng) -> f64 {
    if rng.random_bool(0.5) { 1.0 } else { -1.0 }
}

const MAX_ATTEMPTS_PER_TRIAL: usize = 200;

/// Approximate orthogonality is right-additive when `x` is `ε`-smooth and
/// `ε` lies in the window: `eps_out < 1` on `trials` random admissible
/// inputs.
pub fn additivity_window(seed: u64, trials: u64) -> SuiteResult {
    let mut r = SuiteResult::new("additivity_window", seed);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let outcome = (|| -> Result<bool> {
            for _ in 0..MAX_ATTEMPTS_PER_TRIAL {
                let (space, x, face, eps_x) = random_base_point(&mut rng)?;
                if eps_x >= 0.6 {
                    continue;
                }
                let s = sign(&mut rng);
                let mut ys = Vec::with_capacity(2);
                for _ in 0..2 {
                    let w = killed_direction(&face, &mut rng);
                    let u = random_unit_vector(&space, &mut rng)?;
                    let eta = rng.random_range(0.0..0.3);
                    ys.push((&w.scale(s / space.norm(&w)?) + &u.scale(eta)).scale(rng.random_range(0.2..5.0)));
                }
                let rep = additivity_report(&space, &x, &ys[0], &ys[1])?;
                if !rep.hyp_window {
                    continue;
                }
                r.check(trial, rep.verdicts.window == Verdict::Pass, || {
                    format!("eps_out = {} with eps_x = {}, y1 = {:?}, y2 = {:?}", rep.eps_out, rep.eps_x, ys[0].coords(), ys[1].coords())
                });
                return Ok(true);
            }
            Ok(false)
        })();
        match outcome {
            Ok(true) => {}
            Ok(false) => r.error(trial, "no admissible input found"),
            Err(e) => r.error(trial, e),
        }
    }
    r
}

/// Birkhoff-James orthogonality is approximately right-additive when
/// `diam J(x) < 2‖y₁+y₂‖/(‖y₁‖+‖y₂‖)`.
pub fn additivity_orthogonal_pair(seed: u64, trials: u64) -> SuiteResult {
    let mut r = SuiteResult::new("additivity_orthogonal_pair", seed);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let outcome = (|| -> Result<bool> {
            for _ in 0..MAX_ATTEMPTS_PER_TRIAL {
                let (space, x, face, _) = random_base_point(&mut rng)?;
                let y1 = killed_direction(&face, &mut rng).scale(sign(&mut rng) * rng.random_range(0.2..5.0));
                let y2 = killed_direction(&face, &mut rng).scale(sign(&mut rng) * rng.random_range(0.2..5.0));
                let rep = additivity_report(&space, &x, &y1, &y2)?;
                if !rep.hyp_orthogonal_pair {
                    continue;
                }
                r.check(trial, rep.verdicts.orthogonal_pair == Verdict::Pass, || {
                    format!("eps_out = {} with eps_x = {}, y1 = {:?}, y2 = {:?}", rep.eps_out, rep.eps_x, y1.coords(), y2.coords())
                });
                return Ok(true);
            }
            Ok(false)
        })();
        match outcome {
            Ok(true) => {}
            Ok(false) => r.error(trial, "no admissible input found"),
            Err(e) => r.error(trial, e),
        }
    }
    r
}

/// `x ⊥ y₁`, `x ⊥ y₂` and `min(‖y₁‖, ‖y₂‖) <= ‖(y₁+y₂)/2‖` give
/// `x ⊥^{ε/2} (y₁+y₂)` with `ε = diam J(x)`.
pub fn additivity_half_eps(seed: u64, trials: u64, tol: f64) -> SuiteResult {
    let mut r = SuiteResult::new("additivity_half_eps", seed);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let outcome = (|| -> Result<bool> {
            for _ in 0..MAX_ATTEMPTS_PER_TRIAL {
                let (space, x, face, eps_x) = random_base_point(&mut rng)?;
                if eps_x >= 2.0 - 1e-9 {
                    continue;
                }
                let s1 = rng.random_range(0.2..5.0);
                let s2 = s1 * 10f64.powf(rng.random_range(-1.0..1.0));
                let y1 = killed_direction(&face, &mut rng).scale(sign(&mut rng) * s1);
                let y2 = killed_direction(&face, &mut rng).scale(sign(&mut rng) * s2);
                let rep = additivity_report(&space, &x, &y1, &y2)?;
                if !rep.hyp_half_eps {
                    continue;
                }
                let bound = rep.eps_x / 2.0 + tol;
                r.max_error = r.max_error.max(rep.eps_out - rep.eps_x / 2.0);
                r.check(trial, rep.eps_out <= bound, || {
                    format!("eps_out = {} > eps_x/2 = {}, y1 = {:?}, y2 = {:?}", rep.eps_out, rep.eps_x / 2.0, y1.coords(), y2.coords())
                });
                return Ok(true);
            }
            Ok(false)
        })();
        match outcome {
            Ok(true) => {}
            Ok(false) => r.error(trial, "no admissible input found"),
            Err(e) => r.error(trial, e),
        }
    }
    let square = polyhedral_space(SpaceSpec::lp(Exponent::INFINITY, 2));
    let sharp = polyhedral_space(sharp_hexagon_space(1.0).expect("delta > 0"));
    let (r1, r2) = sharp_hexagon_directions(1.0);
    let witnesses = (|| -> Result<(bool, bool)> {
        let sq = non_additivity_witness(&square, &Vector::from([1.0, 1.0]), &Vector::from([1.0, 0.25]), &Vector::from([0.25, 1.0]))?;
        let (y1, y2) = (r1.scale(1.0 / sharp.norm(&r1)?), r2.scale(1.0 / sharp.norm(&r2)?));
        Ok((sq, non_additivity_witness(&sharp, &sharp_hexagon_apex(1.0), &y1, &y2)?))
    })();
    match witnesses {
        Ok((a, b)) => {
            r.check(u64::MAX - 1, a, || "square witness rejected".into());
            r.check(u64::MAX, b, || "sharp hexagon witness rejected".into());
        }
        Err(e) => r.error(u64::MAX, e),
    }
    r
}

/// Face-based `eps_min` against the defining inequality on random triples.
pub fn eps_min_inequality(seed: u64, triples: u64, lambda_count: usize) -> SuiteResult {
    let mut r = SuiteResult::new("eps_min_inequality", seed);
    for trial in 0..triples {
        let mut rng = trial_rng(seed, trial);
        let outcome = (|| -> Result<()> {
            let spec = match rng.random_range(0..6) {
                0 => regular_polygon_space(rng.random_range(2..=8))?.space,
                1 => sharp_hexagon_space(*[0.1, 0.5, 1.0, 3.0].choose(&mut rng).expect("nonempty"))?,
                2 => prism_space(3)?,
                3 => SpaceSpec::lp(Exponent::new(*[2.0, 3.0].choose(&mut rng).expect("nonempty"))?, 2),
                _ => random_polygon(rng.random(), rng.random_range(2..=8))?,
            };
            let space = polyhedral_space(spec);
            let x = match space.ball() {
                Some(b) if rng.random_bool(0.5) => b.vertices().choose(&mut rng).expect("nonempty").clone(),
                _ => random_unit_vector(&space, &mut rng)?,
            }
            .scale(rng.random_range(0.5..2.0));
            let y = random_unit_vector(&space, &mut rng)?.scale(rng.random_range(0.5..2.0));
            let c = inequality_check(&space, &x, &y, lambda_count)?;
            r.check(trial, c.passed(), || format!("{}: {c:?} at x = {:?}, y = {:?}", space.spec().label(), x.coords(), y.coords()));
            Ok(())
        })();
        if let Err(e) = outcome {
            r.error(trial, e);
        }
    }
    r
}
