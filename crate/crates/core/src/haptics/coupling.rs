use serde::{Deserialize, Serialize};

use super::{HapticsError, Result};
use crate::rotframe::BodyState;
use crate::Vec3;

/// Spring-damper link between the device proxy and the body, plus the gain
/// applied to forces played back on the device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    /// Spring stiffness (N/m).
    pub k_c: f64,
    /// Damping (N·s/m).
    pub b_c: f64,
    pub display_gain: f64,
}

impl Default for CouplingParams {
    fn default() -> Self {
        Self {
            k_c: 50.0,
            b_c: 2.0,
            display_gain: 1.0,
        }
    }
}

impl CouplingParams {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.k_c, self.b_c, self.display_gain]
            .iter()
            .all(|x| x.is_finite() && *x >= 0.0);
        if ok {
            Ok(())
        } else {
            Err(HapticsError::InvalidCoupling(format!("{self:?}")))
        }
    }
}

/// Force the proxy exerts on the body: `k (p − r) − b v`, in the plane.
pub fn coupling_force(p_world: Vec3, body: &BodyState, params: &CouplingParams) -> Vec3 {
    let f = (p_world - body.r_rot) * params.k_c - body.v_rot * params.b_c;
    f.flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(r: Vec3, v: Vec3) -> BodyState {
        BodyState::new(r, v, 1.0).unwrap()
    }

    #[test]
    fn proxy_on_body_at_rest() {
        let b = body(Vec3::planar(0.3, 0.1), Vec3::ZERO);
        assert_eq!(
            coupling_force(b.r_rot, &b, &CouplingParams::default()),
            Vec3::ZERO
        );
    }

    #[test]
    fn spring_term() {
        let b = body(Vec3::ZERO, Vec3::ZERO);
        let f = coupling_force(Vec3::planar(0.1, 0.0), &b, &CouplingParams::default());
        assert!((f - Vec3::planar(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn damping_term() {
        let p = CouplingParams {
            k_c: 0.0,
            ..CouplingParams::default()
        };
        let b = body(Vec3::ZERO, Vec3::planar(1.0, 0.0));
        assert_eq!(coupling_force(Vec3::ZERO, &b, &p), Vec3::planar(-2.0, 0.0));
    }

    #[test]
    fn negative_gain_rejected() {
        let p = CouplingParams {
            display_gain: -1.0,
            ..CouplingParams::default()
        };
        assert!(p.validate().is_err());
    }
}
