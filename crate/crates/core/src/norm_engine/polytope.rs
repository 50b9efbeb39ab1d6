//! Centrally symmetric polytopes carried in both V- and H-representation.
//!
//! The ball is `{x : h_j(x) <= 1 for every facet functional h_j}` and equals
//! the convex hull of the stored vertices. Vertex/facet incidence is kept
//! explicitly so that faces of the ball and of its polar can be read off
//! without any hull computation. A genuine hull is only ever computed in the
//! plane; higher-dimensional balls come from [`PolyhedralBall::product`] and
//! [`PolyhedralBall::free_sum`], whose combinatorics are known in closed form.

use crate::coords::{dot, Functional, Vector};
use crate::error::{NormError, Result};

/// Vertices beyond this count are refused when building cubes.
const MAX_CUBE_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    /// `h` with `h(x) = 1` on the facet and `h <= 1` on the ball.
    pub normal: Functional,
    /// Indices of the vertices lying on the facet.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralBall {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    /// `vertex_facets[i]` lists the facets incident to vertex `i`.
    vertex_facets: Vec<Vec<usize>>,
}

impl PolyhedralBall {
    /// Builds a planar ball from a centrally symmetric point set.
    ///
    /// Points that are not extreme are dropped. The result lists vertices
    /// counterclockwise starting from the one with the smallest polar angle
    /// in `[0, 2π)`, and facet `k` joins vertices `k` and `k + 1` (cyclic).
    pub fn planar(points: &[Vector], tol: f64) -> Result<Self> {
        if points.len() < 4 {
            return Err(NormError::Geometry(format!(
                "a symmetric planar ball needs at least 4 points, got {}",
                points.len()
            )));
        }
        for p in points {
            if p.dim() != 2 {
                return Err(NormError::DimensionMismatch { expected: 2, got: p.dim() });
            }
            if p.coords().iter().any(|c| !c.is_finite()) {
                return Err(NormError::InvalidInput("non-finite vertex coordinate".into()));
            }
        }
        check_symmetric(points, tol)?;

        let hull = convex_hull_ccw(points);
        if hull.len() < 4 {
            return Err(NormError::Geometry("point set spans no open neighbourhood of the origin".into()));
        }
        let start = hull
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| polar_angle(a).total_cmp(&polar_angle(b)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let n = hull.len();
        let vertices: Vec<Vector> = (0..n).map(|k| Vector::from(hull[(start + k) % n].to_vec())).collect();

        let mut normals = Vec::with_capacity(n);
        for k in 0..n {
            let a = &vertices[k];
            let b = &vertices[(k + 1) % n];
            let det = a[0] * b[1] - a[1] * b[0];
            let scale = a.coords().iter().chain(b.coords()).map(|c| c.abs()).fold(0.0, f64::max);
            if det <= tol * scale * scale {
                return Err(NormError::Geometry("origin is not an interior point of the ball".into()));
            }
            normals.push(Functional::from(vec![(b[1] - a[1]) / det, (a[0] - b[0]) / det]));
        }
        Self::from_parts(2, vertices, normals, tol)
    }

    /// Assembles a ball from vertices and facet functionals, computing the
    /// incidence table and checking every structural invariant.
    ///
    /// In the plane the caller must supply vertices counterclockwise and
    /// facets so that facet `k` joins vertices `k` and `k + 1`.
    pub fn from_parts(dim: usize, vertices: Vec<Vector>, normals: Vec<Functional>, tol: f64) -> Result<Self> {
        if dim == 0 {
            return Err(NormError::InvalidInput("dimension must be at least 1".into()));
        }
        for v in &vertices {
            if v.dim() != dim {
                return Err(NormError::DimensionMismatch { expected: dim, got: v.dim() });
            }
        }
        for h in &normals {
            if h.dim() != dim {
                return Err(NormError::DimensionMismatch { expected: dim, got: h.dim() });
            }
        }
        let facets: Vec<Facet> = normals
            .into_iter()
            .map(|normal| {
                let incident = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| (normal.apply(v) - 1.0).abs() <= tol)
                    .map(|(i, _)| i)
                    .collect();
                Facet { normal, vertices: incident }
            })
            .collect();
        let ball = Self::with_incidence(dim, vertices, facets);
        ball.validate(tol)?;
        Ok(ball)
    }

    fn with_incidence(dim: usize, vertices: Vec<Vector>, facets: Vec<Facet>) -> Self {
        let mut vertex_facets = vec![Vec::new(); vertices.len()];
        for (j, f) in facets.iter().enumerate() {
            for &i in &f.vertices {
                vertex_facets[i].push(j);
            }
        }
        Self { dim, vertices, facets, vertex_facets }
    }

    /// The segment `[-1, 1]`, i.e. the unit ball of the real line.
    pub fn segment() -> Self {
        Self::with_incidence(
            1,
            vec![Vector::from([1.0]), Vector::from([-1.0])],
            vec![
                Facet { normal: Functional::from([1.0]), vertices: vec![0] },
                Facet { normal: Functional::from([-1.0]), vertices: vec![1] },
            ],
        )
    }

    /// Unit ball of `ℓ∞^d`.
    pub fn cube(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_CUBE_DIM {
            return Err(NormError::Capability(format!(
                "cube of dimension {dim} (supported: 1..={MAX_CUBE_DIM})"
            )));
        }
        let mut ball = Self::segment();
        for _ in 1..dim {
            ball = ball.product(&Self::segment());
        }
        Ok(ball)
    }

    /// Unit ball of `ℓ1^d`.
    pub fn cross_polytope(dim: usize) -> Result<Self> {
        Ok(Self::cube(dim)?.polar())
    }

    /// Unit ball of `X ⊕_∞ Y`: the Cartesian product of the two balls.
    pub fn product(&self, other: &Self) -> Self {
        let (na, nb) = (self.vertices.len(), other.vertices.len());
        let mut vertices = Vec::with_capacity(na * nb);
        for a in &self.vertices {
            for b in &other.vertices {
                vertices.push(a.concat(b));
            }
        }
        let mut facets = Vec::with_capacity(self.facets.len() + other.facets.len());
        for f in &self.facets {
            facets.push(Facet {
                normal: f.normal.concat(&Functional::zeros(other.dim)),
                vertices: f.vertices.iter().flat_map(|&i| (0..nb).map(move |j| i * nb + j)).collect(),
            });
        }
        for g in &other.facets {
            facets.push(Facet {
                normal: Functional::zeros(self.dim).concat(&g.normal),
                vertices: (0..na).flat_map(|i| g.vertices.iter().map(move |&j| i * nb + j)).collect(),
            });
        }
        Self::with_incidence(self.dim + other.dim, vertices, facets)
    }

    /// Unit ball of `X ⊕_1 Y`: the convex hull of `B_X × {0}` and `{0} × B_Y`.
    pub fn free_sum(&self, other: &Self) -> Self {
        let na = self.vertices.len();
        let vertices: Vec<Vector> = self
            .vertices
            .iter()
            .map(|a| a.concat(&Vector::zeros(other.dim)))
            .chain(other.vertices.iter().map(|b| Vector::zeros(self.dim).concat(b)))
            .collect();
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                let mut incident = f.vertices.clone();
                incident.extend(g.vertices.iter().map(|&j| na + j));
                facets.push(Facet { normal: f.normal.concat(&g.normal), vertices: incident });
            }
        }
        Self::with_incidence(self.dim + other.dim, vertices, facets)
    }

    /// The dual unit ball: facet functionals become vertices and vertices
    /// become facet functionals, with the incidence table transposed.
    pub fn polar(&self) -> Self {
        let vertices: Vec<Vector> = self.facets.iter().map(|f| Vector::from(f.normal.coords())).collect();
        let n = self.vertices.len();
        // In the plane facet k of the polar must join polar vertices k, k+1,
        // which are the two edges meeting at vertex k+1.
        let order: Vec<usize> = if self.dim == 2 { (0..n).map(|k| (k + 1) % n).collect() } else { (0..n).collect() };
        let facets = order
            .into_iter()
            .map(|i| Facet {
                normal: Functional::from(self.vertices[i].coords()),
                vertices: self.vertex_facets[i].clone(),
            })
            .collect();
        Self::with_incidence(self.dim, vertices, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_facets(&self, vertex: usize) -> &[usize] {
        &self.vertex_facets[vertex]
    }

    /// Minkowski functional of the ball.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        self.facets.iter().map(|f| dot(f.normal.coords(), x)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Support function of the ball, i.e. the dual norm.
    pub fn support(&self, f: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(f, v.coords())).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Checks every structural invariant of the representation.
    pub fn validate(&self, tol: f64) -> Result<()> {
        check_symmetric(&self.vertices, tol)?;
        for (j, f) in self.facets.iter().enumerate() {
            if f.vertices.len() < self.dim {
                return Err(NormError::Geometry(format!(
                    "facet {j} has {} incident vertices, need at least {}",
                    f.vertices.len(),
                    self.dim
                )));
            }
            for (i, v) in self.vertices.iter().enumerate() {
                let value = f.normal.apply(v);
                if value > 1.0 + tol {
                    return Err(NormError::Geometry(format!("vertex {i} lies outside facet {j}")));
                }
                let on = (value - 1.0).abs() <= tol;
                if on != f.vertices.contains(&i) {
                    return Err(NormError::Geometry(format!("incidence of vertex {i} and facet {j} is inconsistent")));
                }
            }
        }
        for (i, incident) in self.vertex_facets.iter().enumerate() {
            let normals: Vec<&[f64]> = incident.iter().map(|&j| self.facets[j].normal.coords()).collect();
            if rank(&normals, self.dim) < self.dim {
                return Err(NormError::Geometry(format!("vertex {i} is not an extreme point")));
            }
        }
        if self.dim == 2 {
            let n = self.vertices.len();
            for k in 0..n {
                let (a, b) = (&self.vertices[k], &self.vertices[(k + 1) % n]);
                if a[0] * b[1] - a[1] * b[0] <= 0.0 {
                    return Err(NormError::Geometry("planar vertices are not in counterclockwise order".into()));
                }
                let mut expected = vec![k, (k + 1) % n];
                expected.sort_unstable();
                let mut got = self.facets[k].vertices.clone();
                got.sort_unstable();
                if got != expected {
                    return Err(NormError::Geometry(format!("facet {k} does not join vertices {k} and {}", (k + 1) % n)));
                }
            }
        }
        Ok(())
    }
}

fn check_symmetric(points: &[Vector], tol: f64) -> Result<()> {
    for p in points {
        let scale = p.coords().iter().map(|c| c.abs()).fold(1.0, f64::max);
        let mirrored = points.iter().any(|q| p.coords().iter().zip(q.coords()).all(|(a, b)| (a + b).abs() <= tol * scale));
        if !mirrored {
            return Err(NormError::Geometry(format!("vertex set is not centrally symmetric: -{:?} missing", p.coords())));
        }
    }
    Ok(())
}

fn polar_angle(p: &[f64; 2]) -> f64 {
    let a = p[1].atan2(p[0]);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

fn cross(o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; collinear boundary points are dropped.
fn convex_hull_ccw(points: &[Vector]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| a == b);
    if pts.len() < 3 {
        return pts;
    }
    let scale = pts.iter().flat_map(|p| p.iter()).map(|c| c.abs()).fold(0.0, f64::max);
    let eps = 1e-12 * scale * scale;
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    hull
}

/// Numerical rank of a set of row vectors in `dim` dimensions.
fn rank(rows: &[&[f64]], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let scale = m.iter().flatten().map(|c| c.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let eps = 1e-9 * scale;
    let mut r = 0;
    for col in 0..dim {
        let Some(pivot) = (r..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())) else {
            break;
        };
        if m[pivot][col].abs() <= eps {
            continue;
        }
        m.swap(r, pivot);
        for i in r + 1..m.len() {
            let factor = m[i][col] / m[r][col];
            for c in col..dim {
                m[i][c] -= factor * m[r][c];
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::same_point_set;

    fn pts(raw: &[[f64; 2]]) -> Vec<Vector> {
        raw.iter().map(|p| Vector::from(*p)).collect()
    }

    fn coords(vs: &[Vector]) -> Vec<Vec<f64>> {
        vs.iter().map(|v| v.coords().to_vec()).collect()
    }

    fn square() -> PolyhedralBall {
        PolyhedralBall::planar(&pts(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]), 1e-9).unwrap()
    }

    #[test]
    fn square_has_expected_representation() {
        let b = square();
        assert_eq!(b.vertices()[0].coords(), &[1.0, 1.0]);
        let normals: Vec<Vec<f64>> = b.facets().iter().map(|f| f.normal.coords().to_vec()).collect();
        assert!(same_point_set(
            &normals,
            &[vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 0.0]],
            1e-12
        ));
        assert_eq!(b.gauge(&[0.5, -0.25]), 0.5);
        assert_eq!(b.support(&[1.0, -1.0]), 2.0);
    }

    #[test]
    fn planar_drops_non_extreme_points() {
        let b = PolyhedralBall::planar(
            &pts(&[[1.0, 1.0], [1.0, 0.0], [-1.0, 0.0], [-1.0, 1.0], [0.2, 0.1], [-0.2, -0.1], [-1.0, -1.0], [1.0, -1.0]]),
            1e-9,
        )
        .unwrap();
        assert_eq!(b.vertices().len(), 4);
    }

    #[test]
    fn planar_rejects_asymmetric_and_degenerate_sets() {
        assert!(PolyhedralBall::planar(&pts(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [2.0, -1.0]]), 1e-9).is_err());
        assert!(PolyhedralBall::planar(&pts(&[[1.0, 0.0], [-1.0, 0.0], [2.0, 0.0], [-2.0, 0.0]]), 1e-9).is_err());
        assert!(PolyhedralBall::planar(&pts(&[[1.0, 0.0], [-1.0, 0.0]]), 1e-9).is_err());
    }

    #[test]
    fn square_polar_is_cross_polytope() {
        let polar = square().polar();
        polar.validate(1e-9).unwrap();
        assert!(same_point_set(
            &coords(polar.vertices()),
            &[vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]],
            1e-12
        ));
        assert!(same_point_set(&coords(polar.polar().vertices()), &coords(square().vertices()), 1e-12));
    }

    #[test]
    fn product_and_free_sum_are_valid() {
        let sq = square();
        let prism = sq.product(&PolyhedralBall::segment());
        prism.validate(1e-9).unwrap();
        assert_eq!(prism.vertices().len(), 8);
        assert_eq!(prism.facets().len(), 6);
        let bipyramid = sq.free_sum(&PolyhedralBall::segment());
        bipyramid.validate(1e-9).unwrap();
        assert_eq!(bipyramid.vertices().len(), 6);
        assert_eq!(bipyramid.facets().len(), 8);
        assert!(same_point_set(&coords(prism.polar().vertices()), &coords(sq.polar().free_sum(&PolyhedralBall::segment()).vertices()), 1e-12));
    }

    #[test]
    fn cube_and_cross_polytope() {
        let c = PolyhedralBall::cube(3).unwrap();
        c.validate(1e-9).unwrap();
        assert_eq!((c.vertices().len(), c.facets().len()), (8, 6));
        let o = PolyhedralBall::cross_polytope(3).unwrap();
        o.validate(1e-9).unwrap();
        assert_eq!((o.vertices().len(), o.facets().len()), (6, 8));
        assert!(PolyhedralBall::cube(0).is_err());
    }

    #[test]
    fn from_parts_detects_bad_facets() {
        let vs = pts(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]);
        let bad = vec![Functional::from([0.5, 0.5]); 4];
        assert!(PolyhedralBall::from_parts(2, vs, bad, 1e-9).is_err());
    }

    #[test]
    fn rank_of_rows() {
        assert_eq!(rank(&[&[1.0, 0.0], &[2.0, 0.0]], 2), 1);
        assert_eq!(rank(&[&[1.0, 1.0], &[1.0, -1.0]], 2), 2);
    }
}
