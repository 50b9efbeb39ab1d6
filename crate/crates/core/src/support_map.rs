//! Supporting functionals `J(x)`, their diameter, and the space constants
//! `E(X)`, `S(X)`, `R(X)`.

use serde::{Deserialize, Serialize};

use crate::catalog::direct_sum_support;
use crate::coords::{Functional, Vector};
use crate::error::{NormError, Result};
use crate::norm_engine::{face_indices, Space, SpaceSpec};

/// `J(x)` given by its extreme points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportFace {
    pub x: Vector,
    pub vertices: Vec<Functional>,
    /// `‖x‖`, the common value `f(x)` of every `f ∈ J(x)`.
    pub attained_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub x: Vector,
    /// `diam J(x)`.
    #[serde(rename = "eps")]
    pub eps_x: f64,
    pub face: Vec<Functional>,
    pub is_smooth: bool,
    pub is_approx_smooth: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceConstants {
    /// `sup diam J(x)` over the unit sphere.
    #[serde(rename = "E")]
    pub e: f64,
    /// `sup diam M_f⁺` over norm-one functionals.
    #[serde(rename = "S")]
    pub s: f64,
    /// Length of the longest segment on the unit sphere.
    #[serde(rename = "R")]
    pub r: f64,
}

pub fn support_set(space: &Space, x: &Vector) -> Result<SupportFace> {
    space.check_dim(x.dim())?;
    if x.is_zero() {
        return Err(NormError::ZeroVector("x"));
    }
    let norm = space.norm(x)?;
    let unit = x.scale(1.0 / norm);

    if let Some(ball) = space.ball() {
        let facets = ball.facets();
        let idx = face_indices(facets.iter().map(|f| f.normal.apply(&unit)), space.tolerance().face);
        return Ok(SupportFace {
            x: x.clone(),
            vertices: idx.into_iter().map(|j| facets[j].normal.clone()).collect(),
            attained_value: norm,
        });
    }
    match space.spec() {
        SpaceSpec::Lp { p, .. } if p.is_intermediate() => {
            let e = p.value() - 1.0;
            let f = unit.coords().iter().map(|&c| c.signum() * c.abs().powf(e)).collect::<Vec<_>>();
            Ok(SupportFace { x: x.clone(), vertices: vec![Functional::from(f)], attained_value: norm })
        }
        SpaceSpec::DirectSum { .. } => Ok(direct_sum_support(space, x)?.face),
        _ => Err(NormError::Capability(format!("support set in {}", space.spec().label()))),
    }
}

/// Largest dual-norm distance between two of the given functionals.
pub fn face_diameter(space: &Space, vertices: &[Functional]) -> Result<f64> {
    let mut diam: f64 = 0.0;
    for (i, f) in vertices.iter().enumerate() {
        for g in &vertices[i + 1..] {
            diam = diam.max(space.dual_norm(&(f - g))?);
        }
    }
    Ok(diam)
}

/// `diam J(x)`, the least `ε` for which `x` is `ε`-smooth.
pub fn diam_support(space: &Space, x: &Vector) -> Result<f64> {
    face_diameter(space, &support_set(space, x)?.vertices)
}

pub fn smoothness_report(space: &Space, x: &Vector) -> Result<SmoothnessReport> {
    let face = support_set(space, x)?;
    let eps_x = face_diameter(space, &face.vertices)?;
    let tol = space.tolerance();
    Ok(SmoothnessReport {
        x: x.clone(),
        eps_x,
        face: face.vertices,
        is_smooth: eps_x <= tol.norm,
        is_approx_smooth: eps_x <= 2.0 - tol.strict,
    })
}

/// `diam M_f⁺` for every facet functional `f`, measured in the space norm,
/// with the face recomputed from the functional.
pub fn facetwise_face_diameters(space: &Space) -> Result<Vec<f64>> {
    let ball = space.require_ball("facetwise_face_diameters")?;
    ball.facets()
        .iter()
        .map(|f| {
            let face = space.face_of_ball(&f.normal)?;
            point_set_diameter(space, &face)
        })
        .collect()
}

/// Longest segment inside each facet, read off the stored incidence table.
pub fn facetwise_segment_lengths(space: &Space) -> Result<Vec<f64>> {
    let ball = space.require_ball("facetwise_segment_lengths")?;
    ball.facets()
        .iter()
        .map(|f| {
            let pts: Vec<Vector> = f.vertices.iter().map(|&i| ball.vertices()[i].clone()).collect();
            point_set_diameter(space, &pts)
        })
        .collect()
}

fn point_set_diameter(space: &Space, pts: &[Vector]) -> Result<f64> {
    let mut diam: f64 = 0.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            diam = diam.max(space.norm(&(a - b))?);
        }
    }
    Ok(diam)
}

/// `E(X)` as the largest `‖f_i - f_j‖` over facet functionals whose facets
/// share a vertex.
pub fn e_from_adjacent_facets(space: &Space) -> Result<f64> {
    let ball = space.require_ball("e_from_adjacent_facets")?;
    let mut e: f64 = 0.0;
    for v in 0..ball.vertices().len() {
        let normals: Vec<Functional> = ball.vertex_facets(v).iter().map(|&j| ball.facets()[j].normal.clone()).collect();
        e = e.max(face_diameter(space, &normals)?);
    }
    Ok(e)
}

/// `(E, S, R)` of a polyhedral space. `E` only needs the vertices of the
/// ball: every other sphere point has `J` inside the `J` of a vertex.
pub fn space_constants(space: &Space) -> Result<SpaceConstants> {
    let ball = space.require_ball("space_constants")?;
    let mut e: f64 = 0.0;
    for v in ball.vertices() {
        e = e.max(diam_support(space, v)?);
    }
    let s = facetwise_face_diameters(space)?.into_iter().fold(0.0, f64::max);
    let r = facetwise_segment_lengths(space)?.into_iter().fold(0.0, f64::max);
    Ok(SpaceConstants { e, s, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sharp_hexagon_apex, sharp_hexagon_apex_functionals, sharp_hexagon_space, regular_polygon_space};
    use crate::coords::same_point_set;
    use crate::norm_engine::Exponent;
    use approx::assert_abs_diff_eq;

    fn linf2() -> Space {
        Space::new(SpaceSpec::lp(Exponent::INFINITY, 2)).unwrap()
    }

    fn hexagon() -> Space {
        Space::new(regular_polygon_space(3).unwrap().space).unwrap()
    }

    fn coords(fs: &[Functional]) -> Vec<Vec<f64>> {
        fs.iter().map(|f| f.coords().to_vec()).collect()
    }

    #[test]
    fn square_corner() {
        let s = linf2();
        let face = support_set(&s, &Vector::from([1.0, 1.0])).unwrap();
        assert!(same_point_set(&coords(&face.vertices), &[vec![1.0, 0.0], vec![0.0, 1.0]], 1e-12));
        assert_eq!(diam_support(&s, &Vector::from([1.0, 1.0])).unwrap(), 2.0);
        let r = smoothness_report(&s, &Vector::from([1.0, 1.0])).unwrap();
        assert!(!r.is_smooth && !r.is_approx_smooth);
        let r = smoothness_report(&s, &Vector::from([1.0, 0.3])).unwrap();
        assert!(r.is_smooth && r.is_approx_smooth);
    }

    #[test]
    fn sharp_hexagon_apex_face() {
        for delta in [0.01, 0.5, 1.0, 3.0] {
            let s = Space::new(sharp_hexagon_space(delta).unwrap()).unwrap();
            let face = support_set(&s, &sharp_hexagon_apex(delta)).unwrap();
            let (f, g) = sharp_hexagon_apex_functionals(delta);
            assert!(same_point_set(&coords(&face.vertices), &coords(&[f, g]), 1e-12));
            assert_abs_diff_eq!(face.attained_value, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(
                diam_support(&s, &sharp_hexagon_apex(delta)).unwrap(),
                2.0 * delta / (1.0 + delta),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn euclidean_support_is_normalization() {
        let s = Space::new(SpaceSpec::lp(Exponent::new(2.0).unwrap(), 2)).unwrap();
        let face = support_set(&s, &Vector::from([3.0, 4.0])).unwrap();
        assert_eq!(face.vertices.len(), 1);
        assert_abs_diff_eq!(face.vertices[0][0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(face.vertices[0][1], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(face.attained_value, 5.0, epsilon = 1e-15);
        assert_eq!(diam_support(&s, &Vector::from([3.0, 4.0])).unwrap(), 0.0);
    }

    #[test]
    fn lp_support_attains_norm() {
        let s = Space::new(SpaceSpec::lp(Exponent::new(3.0).unwrap(), 3)).unwrap();
        let x = Vector::from([1.0, -2.0, 0.5]);
        let face = support_set(&s, &x).unwrap();
        let f = &face.vertices[0];
        assert_abs_diff_eq!(f.apply(&x), s.norm(&x).unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(s.dual_norm(f).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert_eq!(support_set(&linf2(), &Vector::from([0.0, 0.0])), Err(NormError::ZeroVector("x")));
        assert!(diam_support(&linf2(), &Vector::from([0.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn hexagon_constants() {
        let c = space_constants(&hexagon()).unwrap();
        assert_abs_diff_eq!(c.e, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.s, 1.0, epsilon = 1e-12);
        assert_eq!(c.s, c.r);
        assert_abs_diff_eq!(e_from_adjacent_facets(&hexagon()).unwrap(), c.e, epsilon = 1e-12);
    }

    #[test]
    fn square_and_octagon_constants() {
        let c = space_constants(&linf2()).unwrap();
        assert_eq!((c.e, c.s, c.r), (2.0, 2.0, 2.0));
        let oct = Space::new(regular_polygon_space(4).unwrap().space).unwrap();
        assert_abs_diff_eq!(space_constants(&oct).unwrap().e, 0.828_427_124_746_190_1, epsilon = 1e-12);
    }

    #[test]
    fn constants_need_a_polytope() {
        let s = Space::new(SpaceSpec::lp(Exponent::new(2.0).unwrap(), 2)).unwrap();
        assert!(matches!(space_constants(&s), Err(NormError::Capability(_))));
    }

    #[test]
    fn report_json_shape() {
        let r = smoothness_report(&hexagon(), &Vector::from([1.0, 0.0])).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["x", "eps", "face", "is_smooth", "is_approx_smooth"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let c = serde_json::to_value(space_constants(&linf2()).unwrap()).unwrap();
        assert_eq!(c["E"], 2.0);
    }
}
