use serde::{Deserialize, Serialize};

use super::forces::fictitious_accel;
use super::{finite, FrictionParams, PhysicsError, Result, RotatingFrame};
use crate::Vec3;

/// Integration step matching the 1 kHz device loop.
pub const DEFAULT_DT: f64 = 1e-3;

/// Body position and velocity in the rotating frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BodyState {
    pub t: f64,
    pub r_rot: Vec3,
    pub v_rot: Vec3,
    pub mass: f64,
}

impl BodyState {
    pub fn new(r_rot: Vec3, v_rot: Vec3, mass: f64) -> Result<Self> {
        let s = Self {
            t: 0.0,
            r_rot,
            v_rot,
            mass,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(PhysicsError::InvalidMass(self.mass));
        }
        if !self.t.is_finite() {
            return Err(PhysicsError::NonFinite("time"));
        }
        finite(self.r_rot, "position")?;
        finite(self.v_rot, "velocity")?;
        Ok(())
    }
}

/// Everything the acceleration depends on besides position and velocity.
struct Dynamics<'a> {
    frame: &'a RotatingFrame,
    friction: &'a FrictionParams,
    applied_accel: Vec3,
    surface: bool,
}

impl Dynamics<'_> {
    /// Acceleration from applied and frame forces, without friction.
    fn driving(&self, h: f64, r: Vec3, v: Vec3) -> Vec3 {
        fictitious_accel(&self.frame.spin_at(h), r, v) + self.applied_accel
    }

    fn accel(&self, h: f64, r: Vec3, v: Vec3) -> Vec3 {
        let driving = self.driving(h, r, v);
        if !self.surface {
            return driving;
        }
        let p = self.friction;
        let speed = v.norm();
        if speed > p.v_eps {
            return driving - v * (p.mu_k * p.g / speed);
        }
        let push = driving.norm();
        if push <= p.mu_s * p.g {
            Vec3::ZERO
        } else {
            driving - driving * (p.mu_k * p.g / push)
        }
    }
}

/// Advance the body and the frame by `dt`.
///
/// Position and velocity use classical RK4 with the applied force held
/// constant over the step; the frame angle advances in closed form. On a
/// surface with friction two cases bypass RK4: a body stuck within the
/// static limit stays exactly where it is, and a sliding body whose kinetic
/// deceleration would stop it inside this step is brought to rest at the
/// stopping point. Identical inputs give bitwise-identical outputs.
pub fn step(
    state: &BodyState,
    frame: &RotatingFrame,
    params: &FrictionParams,
    applied: Vec3,
    on_surface: bool,
    dt: f64,
) -> Result<(BodyState, RotatingFrame)> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(PhysicsError::InvalidTimestep(dt));
    }
    state.validate()?;
    frame.validate()?;
    params.validate()?;
    let applied = finite(applied, "applied force")?.flatten();

    let dyn_ = Dynamics {
        frame,
        friction: params,
        applied_accel: applied / state.mass,
        surface: on_surface && !params.is_frictionless(),
    };
    let (r0, v0) = (state.r_rot, state.v_rot);
    let next_frame = frame.advanced(dt);
    let finish = |r: Vec3, v: Vec3| -> Result<(BodyState, RotatingFrame)> {
        let next = BodyState {
            t: state.t + dt,
            r_rot: finite(r, "position")?,
            v_rot: finite(v, "velocity")?,
            mass: state.mass,
        };
        Ok((next, next_frame))
    };

    if dyn_.surface {
        let speed = v0.norm();
        if speed <= params.v_eps {
            if dyn_.driving(0.0, r0, Vec3::ZERO).norm() <= params.mu_s * params.g {
                return finish(r0, Vec3::ZERO);
            }
        } else {
            let a0 = dyn_.accel(0.0, r0, v0);
            let along = a0.dot(v0) / speed;
            if along < 0.0 && speed <= -along * dt {
                let tau = speed / -along;
                return finish(r0 + v0 * tau + a0 * (0.5 * tau * tau), Vec3::ZERO);
            }
        }
    }

    let h = 0.5 * dt;
    let k1v = dyn_.accel(0.0, r0, v0);
    let k1r = v0;
    let k2v = dyn_.accel(h, r0 + k1r * h, v0 + k1v * h);
    let k2r = v0 + k1v * h;
    let k3v = dyn_.accel(h, r0 + k2r * h, v0 + k2v * h);
    let k3r = v0 + k2v * h;
    let k4v = dyn_.accel(dt, r0 + k3r * dt, v0 + k3v * dt);
    let k4r = v0 + k3v * dt;

    let sixth = dt / 6.0;
    let r1 = r0 + (k1r + k2r * 2.0 + k3r * 2.0 + k4r) * sixth;
    let mut v1 = v0 + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * sixth;

    // Kinetic friction cannot reverse the slip direction.
    if dyn_.surface && v0.norm() > params.v_eps && v1.dot(v0) < 0.0 {
        v1 = Vec3::ZERO;
    }
    finish(r1, v1)
}
