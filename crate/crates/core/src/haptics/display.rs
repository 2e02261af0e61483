use super::{CouplingParams, DeviceSpec};
use crate::rotframe::ForceBreakdown;
use crate::Vec3;

/// Scale `v` down to at most `limit` in magnitude, keeping its direction.
///
/// The result never exceeds `limit`, even after rounding. Non-finite input
/// yields zero.
pub fn clamp_magnitude(v: Vec3, limit: f64) -> Vec3 {
    if !v.is_finite() {
        return Vec3::ZERO;
    }
    let n = v.norm();
    if n <= limit {
        return v;
    }
    let mut scale = limit / n;
    let mut out = v * scale;
    while out.norm() > limit {
        scale *= 1.0 - f64::EPSILON;
        out = v * scale;
    }
    out
}

/// Force played back on the device: the frame-induced forces times the
/// display gain, clamped to the device maximum.
pub fn display_force(forces: &ForceBreakdown, params: &CouplingParams, spec: &DeviceSpec) -> Vec3 {
    clamp_magnitude(forces.fictitious() * params.display_gain, spec.f_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_fictitious(coriolis: Vec3, centrifugal: Vec3) -> ForceBreakdown {
        ForceBreakdown {
            coriolis,
            centrifugal,
            friction: Vec3::planar(100.0, 0.0),
            applied: Vec3::planar(0.0, 100.0),
            ..ForceBreakdown::default()
        }
    }

    #[test]
    fn passes_small_forces_through() {
        let f = with_fictitious(Vec3::planar(0.0, -4.0), Vec3::ZERO);
        let out = display_force(&f, &CouplingParams::default(), &DeviceSpec::default());
        assert_eq!(out, Vec3::planar(0.0, -4.0));
    }

    #[test]
    fn clamps_to_two_pounds() {
        let f = with_fictitious(Vec3::planar(12.0, 0.0), Vec3::ZERO);
        let out = display_force(&f, &CouplingParams::default(), &DeviceSpec::default());
        assert!((out - Vec3::planar(8.896, 0.0)).norm() < 1e-12);
        assert!(out.norm() <= 8.896);
    }

    #[test]
    fn zero_in_zero_out() {
        let out = display_force(
            &ForceBreakdown::default(),
            &CouplingParams::default(),
            &DeviceSpec::default(),
        );
        assert_eq!(out, Vec3::ZERO);
    }

    #[test]
    fn gain_scales_before_clamp() {
        let p = CouplingParams {
            display_gain: 2.0,
            ..CouplingParams::default()
        };
        let f = with_fictitious(Vec3::planar(1.0, 0.0), Vec3::planar(0.5, 0.0));
        assert_eq!(
            display_force(&f, &p, &DeviceSpec::default()),
            Vec3::planar(3.0, 0.0)
        );
    }
}
