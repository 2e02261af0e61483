//! Point-mass dynamics in a frame spinning about +z.
//!
//! Everything here is a pure function of its inputs. State is expressed in
//! the rotating frame; [`to_inertial`] and [`to_rotating`] convert to and
//! from the fixed frame using the accumulated frame angle.

mod forces;
mod frame;
mod friction;
mod step;
mod transform;

pub use forces::{
    centrifugal_accel, coriolis_accel, euler_accel, jacobi_energy, net_forces, ForceBreakdown,
};
pub use frame::RotatingFrame;
pub use friction::{surface_friction, FrictionParams, DEFAULT_G, DEFAULT_V_EPS};
pub use step::{step, BodyState, DEFAULT_DT};
pub use transform::{to_inertial, to_rotating};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("rotation must be about +z in the planar model (got {0})")]
    NonPlanarFrame(String),
    #[error("invalid friction parameters: {0}")]
    InvalidFriction(String),
    #[error("timestep must be positive and finite (got {0})")]
    InvalidTimestep(f64),
    #[error("mass must be positive and finite (got {0})")]
    InvalidMass(f64),
}

pub type Result<T> = std::result::Result<T, PhysicsError>;

pub(crate) fn finite(v: crate::Vec3, what: &'static str) -> Result<crate::Vec3> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(PhysicsError::NonFinite(what))
    }
}
