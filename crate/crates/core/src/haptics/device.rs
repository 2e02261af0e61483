use serde::{Deserialize, Serialize};

use super::{HapticsError, Result};
use crate::Vec3;

/// Newtons per pound-force.
pub const LBF_TO_N: f64 = 4.448;

/// Physical envelope of the device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    /// Half the edge of the reachable cube (m). 4 in = 0.1016 m edge.
    pub workspace_half_extent: f64,
    /// Largest force the device can render (N). About two pounds.
    pub f_max: f64,
    /// Servo period (s).
    pub tick: f64,
    /// Position quantization step (m); 0 disables it.
    pub resolution_quantum: f64,
}

impl Default for DeviceSpec {
    fn default() -> Self {
        Self {
            workspace_half_extent: 0.0508,
            f_max: 2.0 * LBF_TO_N,
            tick: 1e-3,
            resolution_quantum: 0.0,
        }
    }
}

impl DeviceSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.workspace_half_extent > 0.0
            && self.f_max > 0.0
            && self.tick > 0.0
            && self.resolution_quantum >= 0.0
            && [
                self.workspace_half_extent,
                self.f_max,
                self.tick,
                self.resolution_quantum,
            ]
            .iter()
            .all(|x| x.is_finite());
        if ok {
            Ok(())
        } else {
            Err(HapticsError::InvalidSpec(format!("{self:?}")))
        }
    }

    /// Clamp a raw reading into the workspace and apply quantization.
    pub fn constrain(&self, p_device: Vec3) -> (Vec3, bool) {
        let h = self.workspace_half_extent;
        let finite = Vec3::new(
            finite_or_zero(p_device.x),
            finite_or_zero(p_device.y),
            finite_or_zero(p_device.z),
        );
        let clamped = finite.clamp_cube(h);
        let was_clamped = clamped != p_device;
        let q = self.resolution_quantum;
        let p = if q > 0.0 {
            Vec3::new(
                quantize(clamped.x, q, h),
                quantize(clamped.y, q, h),
                quantize(clamped.z, q, h),
            )
        } else {
            clamped
        };
        (p, was_clamped)
    }
}

fn finite_or_zero(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else if x.is_nan() {
        0.0
    } else {
        x.signum() * f64::MAX
    }
}

fn quantize(x: f64, q: f64, h: f64) -> f64 {
    ((x / q).round() * q).clamp(-h, h)
}

/// A device reading mapped onto the disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedPoint {
    /// Position on the disc plane (m).
    pub world: Vec3,
    /// Reading after clamping into the workspace.
    pub device: Vec3,
    /// True when the raw reading lay outside the workspace.
    pub clamped: bool,
}

/// Scale the device cube onto the disc: the workspace face maps to the rim.
///
/// Out-of-workspace readings are clamped, not rejected.
pub fn map_device_to_world(p_device: Vec3, spec: &DeviceSpec, disc_radius: f64) -> MappedPoint {
    let (device, clamped) = spec.constrain(p_device);
    let scale = disc_radius / spec.workspace_half_extent;
    MappedPoint {
        world: (device * scale).flatten(),
        device,
        clamped,
    }
}
