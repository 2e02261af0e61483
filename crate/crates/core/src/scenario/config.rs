use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Result, ScenarioError};
use crate::rotframe::{FrictionParams, DEFAULT_DT};

/// Record every 10th step by default (100 Hz at the 1 kHz step).
pub const DEFAULT_RECORD_STRIDE: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    /// Ball pushed across the spinning disc, with surface friction.
    Ball,
    /// Frictionless glider over the spinning disc.
    Glider,
}

/// Frame the path is viewed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vantage {
    Rotating,
    Inertial,
}

impl ScenarioKind {
    pub fn default_vantage(self) -> Vantage {
        match self {
            ScenarioKind::Ball => Vantage::Rotating,
            ScenarioKind::Glider => Vantage::Inertial,
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::Ball => "ball",
            ScenarioKind::Glider => "glider",
        })
    }
}

impl FromStr for ScenarioKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ball" => Ok(ScenarioKind::Ball),
            "glider" => Ok(ScenarioKind::Glider),
            other => Err(format!("unknown scenario {other:?} (expected ball|glider)")),
        }
    }
}

impl fmt::Display for Vantage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vantage::Rotating => "rotating",
            Vantage::Inertial => "inertial",
        })
    }
}

impl FromStr for Vantage {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rotating" => Ok(Vantage::Rotating),
            "inertial" => Ok(Vantage::Inertial),
            other => Err(format!(
                "unknown vantage {other:?} (expected rotating|inertial)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Radius of the spinning surface (m). Friction stops beyond it.
    pub disc_radius: f64,
    pub mass: f64,
    pub friction: FrictionParams,
    /// Initial spin rate about +z (rad/s).
    pub omega0: f64,
    pub vantage: Vantage,
    pub dt: f64,
    pub duration: f64,
    /// Steps between recorded trace samples; 0 disables recording.
    pub record_stride: u32,
}

impl ScenarioConfig {
    pub fn ball() -> Self {
        Self {
            kind: ScenarioKind::Ball,
            disc_radius: 1.0,
            mass: 0.5,
            friction: FrictionParams::new(0.4, 0.3).expect("default friction is valid"),
            omega0: 0.5,
            vantage: ScenarioKind::Ball.default_vantage(),
            dt: DEFAULT_DT,
            duration: 10.0,
            record_stride: DEFAULT_RECORD_STRIDE,
        }
    }

    pub fn glider() -> Self {
        Self {
            kind: ScenarioKind::Glider,
            friction: FrictionParams::frictionless(),
            vantage: ScenarioKind::Glider.default_vantage(),
            ..Self::ball()
        }
    }

    pub fn for_kind(kind: ScenarioKind) -> Self {
        match kind {
            ScenarioKind::Ball => Self::ball(),
            ScenarioKind::Glider => Self::glider(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ScenarioError::Config(msg));
        if !(self.disc_radius.is_finite() && self.disc_radius > 0.0) {
            return bad(format!("disc_radius must be > 0, got {}", self.disc_radius));
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return bad(format!("mass must be > 0, got {}", self.mass));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt must be > 0, got {}", self.dt));
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return bad(format!("duration must be > 0, got {}", self.duration));
        }
        if !self.omega0.is_finite() {
            return bad(format!("omega must be finite, got {}", self.omega0));
        }
        self.friction
            .validate()
            .map_err(|e| ScenarioError::Config(e.to_string()))?;
        if self.kind == ScenarioKind::Glider && !self.friction.is_frictionless() {
            return bad("glider runs without surface friction (mu_s = mu_k = 0)".into());
        }
        Ok(())
    }

    /// Number of whole steps covering `duration`.
    pub fn steps_for(&self, duration: f64) -> u64 {
        let ratio = duration / self.dt;
        // Absorb rounding like 10.0 / 1e-3 = 10000.000000000002.
        (ratio - 1e-9 * ratio.max(1.0)).ceil().max(0.0) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_kind() {
        assert_eq!(ScenarioConfig::ball().vantage, Vantage::Rotating);
        assert_eq!(ScenarioConfig::glider().vantage, Vantage::Inertial);
        assert!(ScenarioConfig::glider().friction.is_frictionless());
        ScenarioConfig::ball().validate().unwrap();
        ScenarioConfig::glider().validate().unwrap();
    }

    #[test]
    fn glider_with_friction_rejected() {
        let mut c = ScenarioConfig::glider();
        c.friction = FrictionParams::new(0.2, 0.1).unwrap();
        assert!(matches!(c.validate(), Err(ScenarioError::Config(_))));
    }

    #[test]
    fn rejects_degenerate_geometry() {
        let mut c = ScenarioConfig::ball();
        c.disc_radius = 0.0;
        assert!(c.validate().is_err());
        let mut c = ScenarioConfig::ball();
        c.duration = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn step_count() {
        let c = ScenarioConfig::ball();
        assert_eq!(c.steps_for(10.0), 10_000);
        assert_eq!(c.steps_for(1.0), 1000);
        assert_eq!(c.steps_for(0.0105), 11);
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "glider".parse::<ScenarioKind>().unwrap(),
            ScenarioKind::Glider
        );
        assert_eq!("inertial".parse::<Vantage>().unwrap(), Vantage::Inertial);
        assert!("carousel".parse::<ScenarioKind>().is_err());
    }
}
