//! JSON description of a space, as read by the CLI.
//!
//! ```json
//! {"type":"direct_sum","p":"inf",
//!  "left":{"type":"regular_polygon","n":3},
//!  "right":{"type":"lp","p":2.0,"dim":1}}
//! ```

use serde::{Deserialize, Serialize};

use super::polytope::PolyhedralBall;
use super::spec::{Exponent, SpaceSpec};
use crate::catalog;
use crate::coords::Vector;
use crate::error::{NormError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDescription {
    /// Planar ball given by a centrally symmetric point set.
    Polyhedral { vertices: Vec<Vec<f64>> },
    Lp { p: Exponent, dim: usize },
    DirectSum { p: Exponent, left: Box<SpaceDescription>, right: Box<SpaceDescription> },
    RegularPolygon { n: usize },
    #[serde(rename = "example_3_1")]
    SharpHexagon { delta: f64 },
    Prism { n: usize },
}

impl SpaceDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| NormError::InvalidInput(format!("space spec: {e}")))
    }

    pub fn to_spec(&self) -> Result<SpaceSpec> {
        match self {
            SpaceDescription::Polyhedral { vertices } => {
                let dim = vertices.first().map(Vec::len).unwrap_or(0);
                let pts = vertices.iter().cloned().map(Vector::new).collect::<Result<Vec<_>>>()?;
                match dim {
                    1 => {
                        let r = pts.iter().map(|v| v[0].abs()).fold(0.0, f64::max);
                        if r == 0.0 || pts.iter().any(|v| v.dim() != 1) {
                            return Err(NormError::Geometry("one-dimensional ball needs a nonzero radius".into()));
                        }
                        // [-r, r] is r times the unit segment; only r = 1 is a unit ball up to scaling.
                        if (r - 1.0).abs() > 1e-12 {
                            return Err(NormError::InvalidInput("one-dimensional polyhedral ball must be [-1, 1]".into()));
                        }
                        Ok(SpaceSpec::polyhedral(PolyhedralBall::segment()))
                    }
                    2 => Ok(SpaceSpec::polyhedral(PolyhedralBall::planar(&pts, 1e-9)?)),
                    _ => Err(NormError::Capability(format!(
                        "polyhedral vertex lists are accepted in dimensions 1 and 2 only (got {dim}); build higher dimensions with direct_sum"
                    ))),
                }
            }
            SpaceDescription::Lp { p, dim } => {
                if *dim == 0 {
                    return Err(NormError::InvalidInput("lp: field `dim` must be at least 1".into()));
                }
                Ok(SpaceSpec::lp(*p, *dim))
            }
            SpaceDescription::DirectSum { p, left, right } => {
                Ok(SpaceSpec::direct_sum(*p, left.to_spec()?, right.to_spec()?))
            }
            SpaceDescription::RegularPolygon { n } => Ok(catalog::regular_polygon_space(*n)?.space),
            SpaceDescription::SharpHexagon { delta } => catalog::sharp_hexagon_space(*delta),
            SpaceDescription::Prism { n } => catalog::prism_space(*n),
        }
    }
}

/// Parses a JSON space description straight into a [`SpaceSpec`].
pub fn parse_space_spec(text: &str) -> Result<SpaceSpec> {
    SpaceDescription::from_json(text)?.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_variant() {
        for (text, dim) in [
            (r#"{"type":"polyhedral","vertices":[[1,1],[-1,1],[-1,-1],[1,-1]]}"#, 2),
            (r#"{"type":"lp","p":"inf","dim":3}"#, 3),
            (r#"{"type":"lp","p":2.0,"dim":3}"#, 3),
            (r#"{"type":"direct_sum","p":1.0,"left":{"type":"lp","p":2,"dim":2},"right":{"type":"regular_polygon","n":4}}"#, 4),
            (r#"{"type":"regular_polygon","n":4}"#, 2),
            (r#"{"type":"example_3_1","delta":0.25}"#, 2),
            (r#"{"type":"prism","n":3}"#, 3),
        ] {
            assert_eq!(parse_space_spec(text).unwrap().dim(), dim, "{text}");
        }
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse_space_spec(r#"{"type":"regular_polygon"}"#).unwrap_err().to_string();
        assert!(err.contains("`n`"), "{err}");
        let err = parse_space_spec(r#"{"type":"lp","p":"huge","dim":2}"#).unwrap_err().to_string();
        assert!(err.contains("p must be"), "{err}");
        assert!(parse_space_spec(r#"{"type":"hexagon"}"#).is_err());
        assert!(parse_space_spec(r#"{"type":"regular_polygon","n":1}"#).is_err());
    }

    #[test]
    fn description_round_trips() {
        let d = SpaceDescription::DirectSum {
            p: Exponent::INFINITY,
            left: Box::new(SpaceDescription::SharpHexagon { delta: 0.5 }),
            right: Box::new(SpaceDescription::Lp { p: Exponent::ONE, dim: 1 }),
        };
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains(r#""type":"example_3_1""#));
        assert_eq!(SpaceDescription::from_json(&text).unwrap(), d);
    }
}
