use serde::{Deserialize, Serialize};

use super::{finite, BodyState, PhysicsError, Result};
use crate::Vec3;

pub const DEFAULT_G: f64 = 9.81;
pub const DEFAULT_V_EPS: f64 = 1e-6;

/// Coulomb friction between the body and the spinning surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrictionParams {
    pub mu_s: f64,
    pub mu_k: f64,
    /// Gravity, only used for the normal force `m g`.
    pub g: f64,
    /// Speed below which the body counts as stuck to the surface.
    pub v_eps: f64,
}

impl Default for FrictionParams {
    fn default() -> Self {
        Self::frictionless()
    }
}

impl FrictionParams {
    pub fn new(mu_s: f64, mu_k: f64) -> Result<Self> {
        let p = Self {
            mu_s,
            mu_k,
            g: DEFAULT_G,
            v_eps: DEFAULT_V_EPS,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn frictionless() -> Self {
        Self {
            mu_s: 0.0,
            mu_k: 0.0,
            g: DEFAULT_G,
            v_eps: DEFAULT_V_EPS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.mu_s, self.mu_k, self.g, self.v_eps]
            .iter()
            .all(|x| x.is_finite());
        if !all_finite {
            return Err(PhysicsError::NonFinite("friction parameters"));
        }
        if self.mu_k < 0.0 || self.mu_s < self.mu_k {
            return Err(PhysicsError::InvalidFriction(format!(
                "need mu_s >= mu_k >= 0, got mu_s = {}, mu_k = {}",
                self.mu_s, self.mu_k
            )));
        }
        if self.g < 0.0 || self.v_eps < 0.0 {
            return Err(PhysicsError::InvalidFriction(format!(
                "g and v_eps must be non-negative, got g = {}, v_eps = {}",
                self.g, self.v_eps
            )));
        }
        Ok(())
    }

    pub fn is_frictionless(&self) -> bool {
        self.mu_s == 0.0 && self.mu_k == 0.0
    }
}

/// Friction the surface exerts on the body (N).
///
/// `tangential_applied` is the in-plane force trying to move the body. A
/// sliding body gets kinetic friction against its rotating-frame velocity
/// (the surface is at rest in that frame). A stuck body is held in place
/// while the push stays within the static limit and breaks away with
/// kinetic friction otherwise.
pub fn surface_friction(
    state: &BodyState,
    params: &FrictionParams,
    tangential_applied: Vec3,
    on_surface: bool,
) -> Result<Vec3> {
    params.validate()?;
    if !on_surface || params.is_frictionless() {
        return Ok(Vec3::ZERO);
    }
    state.validate()?;
    finite(tangential_applied, "tangential force")?;
    let normal = state.mass * params.g;
    let speed = state.v_rot.norm();
    if speed > params.v_eps {
        return Ok(state.v_rot * (-params.mu_k * normal / speed));
    }
    let push = tangential_applied.flatten();
    let push_mag = push.norm();
    if push_mag == 0.0 {
        Ok(Vec3::ZERO)
    } else if push_mag <= params.mu_s * normal {
        Ok(-push)
    } else {
        Ok(push * (-params.mu_k * normal / push_mag))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(v: Vec3, m: f64) -> BodyState {
        BodyState::new(Vec3::ZERO, v, m).unwrap()
    }

    #[test]
    fn kinetic_opposes_velocity() {
        let p = FrictionParams::new(0.3, 0.3).unwrap();
        let f =
            surface_friction(&body(Vec3::new(2.0, 0.0, 0.0), 1.0), &p, Vec3::ZERO, true).unwrap();
        assert!((f - Vec3::new(-2.943, 0.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn static_balances_small_push() {
        let p = FrictionParams::new(0.3, 0.3).unwrap();
        let f =
            surface_friction(&body(Vec3::ZERO, 1.0), &p, Vec3::new(1.0, 0.0, 0.0), true).unwrap();
        assert_eq!(f, Vec3::new(-1.0, 0.0, 0.0));
    }

    #[test]
    fn breakaway_uses_kinetic_magnitude() {
        let p = FrictionParams::new(0.3, 0.2).unwrap();
        let f =
            surface_friction(&body(Vec3::ZERO, 1.0), &p, Vec3::new(0.0, 5.0, 0.0), true).unwrap();
        assert!((f - Vec3::new(0.0, -0.2 * 9.81, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn off_surface_is_zero() {
        let p = FrictionParams::new(0.9, 0.5).unwrap();
        let f =
            surface_friction(&body(Vec3::new(1.0, 1.0, 0.0), 3.0), &p, Vec3::ZERO, false).unwrap();
        assert_eq!(f, Vec3::ZERO);
    }

    #[test]
    fn rejects_mu_k_above_mu_s() {
        assert!(matches!(
            FrictionParams::new(0.2, 0.3),
            Err(PhysicsError::InvalidFriction(_))
        ));
        assert!(FrictionParams::new(0.2, -0.1).is_err());
        let bad = FrictionParams {
            mu_s: 0.1,
            mu_k: 0.5,
            ..FrictionParams::frictionless()
        };
        assert!(surface_friction(&body(Vec3::ZERO, 1.0), &bad, Vec3::ZERO, true).is_err());
    }
}
