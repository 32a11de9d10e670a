//! Lorenz and Zenga orderings.
//!
//! Dominance means more inequality: X dominates Y under the Lorenz ordering
//! when `L_X(p) ≤ L_Y(p)` for all `p`, and under the Zenga ordering when its
//! uniformity ratio is lower, `U_X(p) ≤ U_Y(p)`. Since `U` is increasing in
//! `L` at fixed `p`, the two orderings coincide.

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{open_grid, uniformity_at};
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::format::{round15, round15_vec};

pub const DEFAULT_GRID: usize = 1001;
pub const MIN_GRID: usize = 10;

/// Per-point gaps at or below this are ties.
const POINT_TOL: f64 = 1e-12;
/// Dominance needs at least one gap above this.
const STRICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    FirstDominates,
    SecondDominates,
    Equal,
    Crossing,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::FirstDominates => "first_dominates",
            Relation::SecondDominates => "second_dominates",
            Relation::Equal => "equal",
            Relation::Crossing => "crossing",
        }
    }

    /// The relation seen with the arguments swapped.
    pub fn flipped(self) -> Relation {
        match self {
            Relation::FirstDominates => Relation::SecondDominates,
            Relation::SecondDominates => Relation::FirstDominates,
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceVerdict {
    pub relation: Relation,
    /// Largest `|curve_Y − curve_X|` over the comparison points.
    #[serde(serialize_with = "round15")]
    pub max_gap: f64,
    /// Ranks where the sign of `curve_Y − curve_X` changes, located by
    /// linear interpolation.
    #[serde(serialize_with = "round15_vec")]
    pub crossings: Vec<f64>,
    pub grid_size: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn lorenz_dominance(
    x: &Distribution,
    y: &Distribution,
    grid_size: usize,
) -> Result<DominanceVerdict> {
    let points = comparison_points(x, y, grid_size)?;
    let gaps: Vec<Option<(f64, f64)>> = points
        .par_iter()
        .map(|&p| Some((p, y.lorenz_at(p) - x.lorenz_at(p))))
        .collect();
    Ok(classify(gaps, grid_size, Vec::new()))
}

/// Compares uniformity ratios. Points where either upper tail is empty are
/// skipped and reported in `warnings`.
pub fn zenga_dominance(
    x: &Distribution,
    y: &Distribution,
    grid_size: usize,
) -> Result<DominanceVerdict> {
    let points = comparison_points(x, y, grid_size)?;
    let gaps: Vec<Option<(f64, f64)>> = points
        .par_iter()
        .map(|&p| {
            let q = 1.0 - p;
            match (uniformity_at(x, p, q), uniformity_at(y, p, q)) {
                (Ok(ux), Ok(uy)) => Some((p, uy - ux)),
                _ => None,
            }
        })
        .collect();
    let warnings = points
        .iter()
        .zip(&gaps)
        .filter(|(_, g)| g.is_none())
        .map(|(p, _)| format!("skipped p = {p}: empty upper tail"))
        .collect();
    Ok(classify(gaps, grid_size, warnings))
}

/// True iff the Lorenz and Zenga verdicts name the same relation.
pub fn equivalence_check(x: &Distribution, y: &Distribution, grid_size: usize) -> Result<bool> {
    let l = lorenz_dominance(x, y, grid_size)?;
    let z = zenga_dominance(x, y, grid_size)?;
    Ok(l.relation == z.relation)
}

fn comparison_points(x: &Distribution, y: &Distribution, grid_size: usize) -> Result<Vec<f64>> {
    if grid_size < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "dominance grid needs at least {MIN_GRID} points, got {grid_size}"
        )));
    }
    let mut points = open_grid(grid_size);
    for d in [x, y] {
        if d.as_empirical().is_some() {
            points.extend(d.breakpoints().into_iter().filter(|&p| p > 0.0 && p < 1.0));
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(points)
}

fn classify(
    gaps: Vec<Option<(f64, f64)>>,
    grid_size: usize,
    warnings: Vec<String>,
) -> DominanceVerdict {
    let gaps: Vec<(f64, f64)> = gaps.into_iter().flatten().collect();
    let max_gap = gaps.iter().fold(0.0f64, |m, &(_, g)| m.max(g.abs()));

    let signed: Vec<(f64, f64)> = gaps
        .into_iter()
        .filter(|&(_, g)| g.abs() > POINT_TOL)
        .collect();
    let any_pos = signed.iter().any(|&(_, g)| g > 0.0);
    let any_neg = signed.iter().any(|&(_, g)| g < 0.0);

    let (relation, crossings) = if max_gap <= STRICT_TOL {
        (Relation::Equal, Vec::new())
    } else if any_pos && any_neg {
        let crossings = signed
            .windows(2)
            .filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0))
            .map(|w| {
                let ((pa, a), (pb, b)) = (w[0], w[1]);
                pa + (pb - pa) * a / (a - b)
            })
            .collect();
        (Relation::Crossing, crossings)
    } else if any_pos {
        (Relation::FirstDominates, Vec::new())
    } else {
        (Relation::SecondDominates, Vec::new())
    };

    DominanceVerdict {
        relation,
        max_gap,
        crossings,
        grid_size,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(v: &[f64]) -> Distribution {
        Distribution::empirical(v.to_vec()).unwrap()
    }

    #[test]
    fn two_point_dominates_equal_split() {
        let x = sample(&[1.0, 3.0]);
        let y = sample(&[2.0, 2.0]);
        let l = lorenz_dominance(&x, &y, DEFAULT_GRID).unwrap();
        assert_eq!(l.relation, Relation::FirstDominates);
        assert!((l.max_gap - 0.25).abs() < 1e-12);
        let z = zenga_dominance(&x, &y, DEFAULT_GRID).unwrap();
        assert_eq!(z.relation, Relation::FirstDominates);
        assert!(equivalence_check(&x, &y, DEFAULT_GRID).unwrap());
        let back = lorenz_dominance(&y, &x, DEFAULT_GRID).unwrap();
        assert_eq!(back.relation, Relation::SecondDominates);
    }

    #[test]
    fn identical_inputs_are_equal() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let v = lorenz_dominance(&u, &u, DEFAULT_GRID).unwrap();
        assert_eq!(v.relation, Relation::Equal);
        assert_eq!(v.max_gap, 0.0);
        assert_eq!(
            zenga_dominance(&u, &u, DEFAULT_GRID).unwrap().relation,
            Relation::Equal
        );
    }

    #[test]
    fn touching_curves_do_not_cross() {
        // Partial sums 0.5, 2, 6 against 1, 2, 6: equal at 2/3, never reversed.
        let x = sample(&[0.5, 1.5, 4.0]);
        let y = sample(&[1.0, 1.0, 4.0]);
        assert_eq!(
            lorenz_dominance(&x, &y, DEFAULT_GRID).unwrap().relation,
            Relation::FirstDominates
        );
    }

    #[test]
    fn crossing_is_located() {
        // Partial sums 0.5, 2.5, 6 against 1, 2, 6.
        let x = sample(&[0.5, 2.0, 3.5]);
        let y = sample(&[1.0, 1.0, 4.0]);
        let v = lorenz_dominance(&x, &y, DEFAULT_GRID).unwrap();
        assert_eq!(v.relation, Relation::Crossing);
        assert_eq!(v.crossings.len(), 1);
        // L_Y − L_X is 1/12 at 1/3 and −1/12 at 2/3, linear in between.
        assert!((v.crossings[0] - 0.5).abs() < 1e-12);
        assert_eq!(
            zenga_dominance(&x, &y, DEFAULT_GRID).unwrap().relation,
            Relation::Crossing
        );
    }

    #[test]
    fn pareto_orderings_agree() {
        let x = Distribution::pareto(2.0, 1.0).unwrap();
        let y = Distribution::pareto(3.0, 1.0).unwrap();
        let l = lorenz_dominance(&x, &y, DEFAULT_GRID).unwrap();
        assert_eq!(l.relation, Relation::FirstDominates);
        assert!(equivalence_check(&x, &y, DEFAULT_GRID).unwrap());
    }

    #[test]
    fn small_grid_rejected() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert!(lorenz_dominance(&u, &u, 9).is_err());
    }

    #[test]
    fn serializes_without_empty_warnings() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let v = lorenz_dominance(&u, &u, 10).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"relation":"equal","max_gap":0.0,"crossings":[],"grid_size":10}"#
        );
    }
}
