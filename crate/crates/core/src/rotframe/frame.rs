use serde::{Deserialize, Serialize};

use super::{PhysicsError, Result};
use crate::Vec3;

/// Turntable rotation state: spin rate, spin acceleration and accumulated angle.
///
/// Only rotation about +z is representable; the constructors reject anything
/// else. The angle is signed (clockwise spin decreases it) and carries a
/// compensation term so that long runs at constant spin track `omega * t`
/// to within rounding of the final sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatingFrame {
    omega: f64,
    alpha: f64,
    theta: f64,
    #[serde(skip)]
    theta_carry: f64,
}

impl Default for RotatingFrame {
    fn default() -> Self {
        Self::new(0.0)
    }
}

impl RotatingFrame {
    /// Constant spin `omega` rad/s about +z, angle zero.
    pub fn new(omega: f64) -> Self {
        Self {
            omega,
            alpha: 0.0,
            theta: 0.0,
            theta_carry: 0.0,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self.theta_carry = 0.0;
        self
    }

    /// Build from full vectors, rejecting non-finite input and any component
    /// off the z axis.
    pub fn from_vectors(omega: Vec3, alpha: Vec3, theta: f64) -> Result<Self> {
        if !omega.is_finite() || !alpha.is_finite() || !theta.is_finite() {
            return Err(PhysicsError::NonFinite("rotating frame"));
        }
        if omega.x != 0.0 || omega.y != 0.0 {
            return Err(PhysicsError::NonPlanarFrame(format!("omega = {omega}")));
        }
        if alpha.x != 0.0 || alpha.y != 0.0 {
            return Err(PhysicsError::NonPlanarFrame(format!("alpha = {alpha}")));
        }
        Ok(Self::new(omega.z).with_alpha(alpha.z).with_theta(theta))
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega.is_finite() && self.alpha.is_finite() && self.theta.is_finite() {
            Ok(())
        } else {
            Err(PhysicsError::NonFinite("rotating frame"))
        }
    }

    pub fn omega(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.omega)
    }

    pub fn alpha(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.alpha)
    }

    /// Signed spin rate about +z.
    pub fn omega_z(&self) -> f64 {
        self.omega
    }

    pub fn alpha_z(&self) -> f64 {
        self.alpha
    }

    /// Accumulated rotation angle about +z (radians, unwrapped).
    pub fn theta(&self) -> f64 {
        self.theta + self.theta_carry
    }

    /// Change the spin rate without touching the angle.
    pub fn set_omega(&mut self, omega: f64) {
        self.omega = omega;
    }

    pub fn set_alpha(&mut self, alpha: f64) {
        self.alpha = alpha;
    }

    /// Frame as seen `h` seconds ahead: spin rate advanced by `alpha * h`,
    /// angle untouched. Used for intermediate integrator stages.
    pub(crate) fn spin_at(&self, h: f64) -> Self {
        Self {
            omega: self.omega + self.alpha * h,
            ..*self
        }
    }

    /// Advance by `dt` under constant spin acceleration.
    pub(crate) fn advanced(&self, dt: f64) -> Self {
        let delta = self.omega * dt + 0.5 * self.alpha * dt * dt;
        // Neumaier summation of theta += delta.
        let sum = self.theta + delta;
        let err = if self.theta.abs() >= delta.abs() {
            (self.theta - sum) + delta
        } else {
            (delta - sum) + self.theta
        };
        Self {
            omega: self.omega + self.alpha * dt,
            alpha: self.alpha,
            theta: sum,
            theta_carry: self.theta_carry + err,
        }
    }
}
