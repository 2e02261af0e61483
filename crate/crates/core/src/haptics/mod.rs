//! Haptic device abstraction for a Falcon-class 3-DOF grip.
//!
//! The device's reach is mapped onto the disc, grip motion pushes the body
//! through a spring-damper coupling, and the frame-induced forces are played
//! back, clamped to what the hardware can produce. Real hardware would plug in
//! as another [`DeviceSource`].

mod coupling;
mod device;
mod display;
mod script;
mod tick;

pub use coupling::{coupling_force, CouplingParams};
pub use device::{map_device_to_world, DeviceSpec, MappedPoint, LBF_TO_N};
pub use display::{clamp_magnitude, display_force};
pub use script::{load_device_script, parse_device_script, DeviceSource, ScriptedDevice};
pub use tick::{haptic_tick, run_haptic, CommandDigest, HapticFrameCommand};

use thiserror::Error;

use crate::scenario::ScenarioError;

#[derive(Debug, Error)]
pub enum HapticsError {
    #[error("invalid device spec: {0}")]
    InvalidSpec(String),
    #[error("invalid coupling parameters: {0}")]
    InvalidCoupling(String),
    #[error("invalid device script: {0}")]
    InvalidScript(String),
    #[error("cannot read device script: {0}")]
    ScriptIo(#[from] std::io::Error),
    #[error(transparent)]
    Session(#[from] ScenarioError),
}

pub type Result<T> = std::result::Result<T, HapticsError>;
