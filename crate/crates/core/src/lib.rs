//! Rotating-frame physics for a ball-on-turntable and glider demonstrator.
//!
//! * [`rotframe`]: fictitious forces, Coulomb friction, RK4 stepping, frame transforms.
//! * [`scenario`]: ball and glider sessions, dual-frame traces, CSV export.
//! * [`haptics`]: device workspace mapping, virtual coupling, force clamping, tick loop.
//! * [`study`]: GPA-balanced group assignment and paired score reports.
//! * [`protocol`]: text-frame messages and the live steering session behind the service.

pub mod haptics;
pub mod math;
pub mod protocol;
pub mod rotframe;
pub mod scenario;
pub mod study;

pub use math::Vec3;
