use serde::{Deserialize, Serialize};

use super::{Result, ScenarioError, Trace, Vantage};
use crate::Vec3;

/// Accumulated turning below this magnitude counts as straight.
pub const STRAIGHT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curvature {
    /// Clockwise turning seen from +z.
    Right,
    /// Counterclockwise turning seen from +z.
    Left,
    Straight,
}

impl std::fmt::Display for Curvature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Curvature::Right => "right",
            Curvature::Left => "left",
            Curvature::Straight => "straight",
        })
    }
}

/// Which way the path bends in the chosen frame.
///
/// Sums `(v_i × (v_{i+1} − v_i))·ẑ` over consecutive samples.
pub fn curvature_sign(trace: &Trace, vantage: Vantage) -> Result<Curvature> {
    if trace.len() < 3 {
        return Err(ScenarioError::UndefinedCurvature(format!(
            "need at least 3 samples, have {}",
            trace.len()
        )));
    }
    let velocities: Vec<Vec3> = trace.samples.iter().map(|s| s.velocity(vantage)).collect();
    if velocities.iter().all(|v| v.norm() == 0.0) {
        return Err(ScenarioError::UndefinedCurvature("body never moves".into()));
    }
    let turning: f64 = velocities
        .windows(2)
        .map(|w| w[0].cross(w[1] - w[0]).z)
        .sum();
    Ok(if turning.abs() < STRAIGHT_TOLERANCE {
        Curvature::Straight
    } else if turning < 0.0 {
        Curvature::Right
    } else {
        Curvature::Left
    })
}

/// Largest in-plane distance from the total-least-squares line through `points`.
pub fn max_line_residual(points: &[Vec3]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let n = points.len() as f64;
    let c = points.iter().fold(Vec3::ZERO, |acc, p| acc + *p) / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in points {
        let d = *p - c;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        sxy += d.x * d.y;
    }
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let dir = Vec3::planar(angle.cos(), angle.sin());
    points
        .iter()
        .map(|p| (*p - c).flatten().cross(dir).z.abs())
        .fold(0.0, f64::max)
}
