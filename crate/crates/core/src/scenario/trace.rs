use serde::{Deserialize, Serialize};

use super::{ScenarioConfig, Vantage};
use crate::rotframe::ForceBreakdown;
use crate::Vec3;

/// One recorded instant, in both frames.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub t: f64,
    pub r_rot: Vec3,
    pub v_rot: Vec3,
    pub r_in: Vec3,
    pub v_in: Vec3,
    pub theta: f64,
    pub forces: ForceBreakdown,
}

impl TraceSample {
    pub fn position(&self, vantage: Vantage) -> Vec3 {
        match vantage {
            Vantage::Rotating => self.r_rot,
            Vantage::Inertial => self.r_in,
        }
    }

    pub fn velocity(&self, vantage: Vantage) -> Vec3 {
        match vantage {
            Vantage::Rotating => self.v_rot,
            Vantage::Inertial => self.v_in,
        }
    }
}

/// Position of `sample` as drawn from `vantage`, tagged with that frame.
pub fn vantage_view(sample: &TraceSample, vantage: Vantage) -> (Vec3, Vantage) {
    (sample.position(vantage), vantage)
}

/// Samples recorded at a fixed stride over one session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub config: ScenarioConfig,
    pub samples: Vec<TraceSample>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Time between consecutive samples.
    pub fn sample_interval(&self) -> f64 {
        self.config.dt * f64::from(self.config.record_stride)
    }

    pub fn path(&self, vantage: Vantage) -> Vec<Vec3> {
        self.samples.iter().map(|s| s.position(vantage)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(theta: f64) -> TraceSample {
        TraceSample {
            t: 0.0,
            r_rot: Vec3::new(1.0, 0.0, 0.0),
            v_rot: Vec3::ZERO,
            r_in: Vec3::new(1.0, 0.0, 0.0).rotate_z(theta),
            v_in: Vec3::ZERO,
            theta,
            forces: ForceBreakdown::default(),
        }
    }

    #[test]
    fn selects_by_vantage() {
        let s = sample(1.0);
        assert_eq!(
            vantage_view(&s, Vantage::Rotating),
            (s.r_rot, Vantage::Rotating)
        );
        assert_eq!(
            vantage_view(&s, Vantage::Inertial),
            (s.r_in, Vantage::Inertial)
        );
    }

    #[test]
    fn zero_angle_views_agree() {
        let s = sample(0.0);
        assert_eq!(
            vantage_view(&s, Vantage::Rotating).0,
            vantage_view(&s, Vantage::Inertial).0
        );
    }
}
