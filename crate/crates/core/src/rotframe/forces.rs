use serde::{Deserialize, Serialize};

use super::{finite, surface_friction, BodyState, FrictionParams, Result, RotatingFrame};
use crate::Vec3;

/// Coriolis acceleration `-2 ω × v`.
pub fn coriolis_accel(frame: &RotatingFrame, v_rot: Vec3) -> Result<Vec3> {
    frame.validate()?;
    finite(v_rot, "velocity")?;
    finite(-2.0 * frame.omega().cross(v_rot), "coriolis acceleration")
}

/// Centrifugal acceleration `-ω × (ω × r)`, radially outward.
pub fn centrifugal_accel(frame: &RotatingFrame, r_rot: Vec3) -> Result<Vec3> {
    frame.validate()?;
    finite(r_rot, "position")?;
    let w = frame.omega();
    finite(-w.cross(w.cross(r_rot)), "centrifugal acceleration")
}

/// Euler acceleration `-α × r`; zero at constant spin.
pub fn euler_accel(frame: &RotatingFrame, r_rot: Vec3) -> Result<Vec3> {
    frame.validate()?;
    finite(r_rot, "position")?;
    finite(-frame.alpha().cross(r_rot), "euler acceleration")
}

/// Sum of the three frame-induced accelerations. Unchecked; callers validate.
pub(crate) fn fictitious_accel(frame: &RotatingFrame, r: Vec3, v: Vec3) -> Vec3 {
    let w = frame.omega();
    let coriolis = -2.0 * w.cross(v);
    let centrifugal = -w.cross(w.cross(r));
    let euler = -frame.alpha().cross(r);
    coriolis + centrifugal + euler
}

/// Per-source forces acting on the body, in newtons.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ForceBreakdown {
    pub coriolis: Vec3,
    pub centrifugal: Vec3,
    pub euler: Vec3,
    pub friction: Vec3,
    pub applied: Vec3,
}

impl ForceBreakdown {
    pub fn total(&self) -> Vec3 {
        self.coriolis + self.centrifugal + self.euler + self.friction + self.applied
    }

    /// Frame-induced part only (Coriolis + centrifugal + Euler).
    pub fn fictitious(&self) -> Vec3 {
        self.coriolis + self.centrifugal + self.euler
    }

    pub fn is_finite(&self) -> bool {
        self.coriolis.is_finite()
            && self.centrifugal.is_finite()
            && self.euler.is_finite()
            && self.friction.is_finite()
            && self.applied.is_finite()
    }
}

/// All forces on the body at `state`.
///
/// Friction is resolved against everything else acting in the plane
/// (applied plus fictitious), so a body at rest on the disc is held against
/// the centrifugal pull as long as static friction allows.
pub fn net_forces(
    state: &BodyState,
    frame: &RotatingFrame,
    params: &FrictionParams,
    applied: Vec3,
    on_surface: bool,
) -> Result<ForceBreakdown> {
    state.validate()?;
    let applied = finite(applied, "applied force")?.flatten();
    let m = state.mass;
    let coriolis = m * coriolis_accel(frame, state.v_rot)?;
    let centrifugal = m * centrifugal_accel(frame, state.r_rot)?;
    let euler = m * euler_accel(frame, state.r_rot)?;
    let driving = applied + coriolis + centrifugal + euler;
    let friction = surface_friction(state, params, driving, on_surface)?;
    Ok(ForceBreakdown {
        coriolis,
        centrifugal,
        euler,
        friction,
        applied,
    })
}

/// Specific Jacobi integral `½|v|² − ½|ω × r|²` (J/kg).
///
/// Conserved for free motion at constant spin; used as an integrity check.
pub fn jacobi_energy(state: &BodyState, frame: &RotatingFrame) -> f64 {
    let wr = frame.omega().cross(state.r_rot);
    0.5 * state.v_rot.norm_squared() - 0.5 * wr.norm_squared()
}
