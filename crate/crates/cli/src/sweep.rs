use clap::ValueEnum;
use normlab::catalog::{closed_form_e, sharp_hexagon_apex, sharp_hexagon_directions, sharp_hexagon_space, regular_polygon_space};
use normlab::orthogonality::{eps_min, is_bj_orthogonal};
use normlab::support_map::{diam_support, space_constants};
use normlab::{Space, ToleranceConfig};
use serde_json::json;

use crate::output::Table;
use crate::{CliResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Regular 2n-gon, parameter `n`.
    #[value(name = "regular_polygon")]
    RegularPolygon,
    /// Sharp hexagon, parameter `delta`.
    #[value(name = "example_3_1")]
    SharpHexagon,
}

fn parse_range(range: &str) -> CliResult<(f64, f64)> {
    let bad = || Failure::Input(format!("--range: expected `a:b`, got {range:?}"));
    let (a, b) = range.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn run(family: Family, param: &str, range: &str, points: usize, tol: ToleranceConfig) -> CliResult<Table> {
    let (a, b) = parse_range(range)?;
    match family {
        Family::RegularPolygon => {
            if param != "n" {
                return Err(Failure::Input(format!("--param: regular_polygon takes `n`, got {param:?}")));
            }
            if a.fract() != 0.0 || b.fract() != 0.0 || a < 2.0 {
                return Err(Failure::Input("--range: n must run over integers >= 2".into()));
            }
            let mut rows = Vec::new();
            for n in a as usize..=b as usize {
                let space = Space::with_tolerance(regular_polygon_space(n)?.space, tol)?;
                let computed = space_constants(&space)?.e;
                let closed = closed_form_e(n);
                rows.push(vec![json!(n), json!(computed), json!(closed), json!((computed - closed).abs())]);
            }
            Ok(Table { columns: ["n", "E_computed", "E_closed_form", "abs_diff"].map(String::from).to_vec(), rows })
        }
        Family::SharpHexagon => {
            if param != "delta" {
                return Err(Failure::Input(format!("--param: example_3_1 takes `delta`, got {param:?}")));
            }
            if a <= 0.0 {
                return Err(Failure::Input("--range: delta must be positive".into()));
            }
            if points == 0 {
                return Err(Failure::Input("--points: must be at least 1".into()));
            }
            let mut rows = Vec::new();
            for k in 0..points {
                let delta = if points == 1 { a } else { a + (b - a) * k as f64 / (points - 1) as f64 };
                let space = Space::with_tolerance(sharp_hexagon_space(delta)?, tol)?;
                let p = sharp_hexagon_apex(delta);
                let (r1, r2) = sharp_hexagon_directions(delta);
                let diam = diam_support(&space, &p)?;
                let closed = 2.0 * delta / (1.0 + delta);
                rows.push(vec![
                    json!(delta),
                    json!(diam),
                    json!(closed),
                    json!((diam - closed).abs()),
                    json!(is_bj_orthogonal(&space, &p, &r1)?),
                    json!(is_bj_orthogonal(&space, &p, &r2)?),
                    json!(eps_min(&space, &p, &(&r1 + &r2))?),
                ]);
            }
            let columns = ["delta", "diam_computed", "diam_closed_form", "abs_diff", "bj_r1", "bj_r2", "eps_min_r1_plus_r2"];
            Ok(Table { columns: columns.map(String::from).to_vec(), rows })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2:12").unwrap(), (2.0, 12.0));
        assert!(parse_range("12:2").is_err());
        assert!(parse_range("2-12").is_err());
    }

    #[test]
    fn polygon_sweep_matches_closed_form() {
        let t = run(Family::RegularPolygon, "n", "2:12", 0, ToleranceConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert!(t.rows.iter().all(|r| r[3].as_f64().unwrap() <= 1e-9));
    }
}
