use super::{BodyState, RotatingFrame};
use crate::Vec3;

/// Rotating-frame state seen from the fixed frame: `(r_in, v_in)`.
pub fn to_inertial(state: &BodyState, frame: &RotatingFrame) -> (Vec3, Vec3) {
    let theta = frame.theta();
    let r_in = state.r_rot.rotate_z(theta);
    let v_in = (state.v_rot + frame.omega().cross(state.r_rot)).rotate_z(theta);
    (r_in, v_in)
}

/// Inverse of [`to_inertial`]: `(r_rot, v_rot)`.
pub fn to_rotating(r_in: Vec3, v_in: Vec3, frame: &RotatingFrame) -> (Vec3, Vec3) {
    let theta = frame.theta();
    let r_rot = r_in.rotate_z(-theta);
    let v_rot = v_in.rotate_z(-theta) - frame.omega().cross(r_rot);
    (r_rot, v_rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn body(r: Vec3, v: Vec3) -> BodyState {
        BodyState::new(r, v, 1.0).unwrap()
    }

    #[test]
    fn zero_angle_adds_frame_velocity() {
        let f = RotatingFrame::new(2.0);
        let s = body(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0));
        let (r, v) = to_inertial(&s, &f);
        assert_eq!(r, s.r_rot);
        assert_eq!(v, Vec3::new(0.0, 3.0, 0.0));
    }

    #[test]
    fn quarter_turn() {
        let f = RotatingFrame::new(0.0).with_theta(FRAC_PI_2);
        let (r, _) = to_inertial(&body(Vec3::new(1.0, 0.0, 0.0), Vec3::ZERO), &f);
        assert!((r - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn half_turn_back() {
        let f = RotatingFrame::new(0.0).with_theta(PI);
        let (r, _) = to_rotating(Vec3::new(1.0, 0.0, 0.0), Vec3::ZERO, &f);
        assert!((r - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_without_rotation() {
        let f = RotatingFrame::new(0.0);
        let (r, v) = to_rotating(Vec3::new(0.3, 0.4, 0.0), Vec3::new(-1.0, 2.0, 0.0), &f);
        assert_eq!(r, Vec3::new(0.3, 0.4, 0.0));
        assert_eq!(v, Vec3::new(-1.0, 2.0, 0.0));
    }

    #[test]
    fn round_trip() {
        let f = RotatingFrame::new(-0.8).with_theta(2.3);
        let s = body(Vec3::new(0.7, -1.2, 0.0), Vec3::new(0.4, 0.9, 0.0));
        let (ri, vi) = to_inertial(&s, &f);
        let (r, v) = to_rotating(ri, vi, &f);
        assert!((r - s.r_rot).norm() < 1e-12);
        assert!((v - s.v_rot).norm() < 1e-12);
    }
}
