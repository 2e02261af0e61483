use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{
    coupling_force, display_force, map_device_to_world, CouplingParams, DeviceSource, DeviceSpec,
    Result,
};
use crate::scenario::{ScenarioError, Session, Trace};
use crate::Vec3;

/// What the servo loop sends to the device after one tick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HapticFrameCommand {
    pub tick_index: u64,
    /// Force to render (N), never above the device maximum.
    pub force_out: Vec3,
    /// Grip position actually used, inside the workspace cube.
    pub proxy_pos_device: Vec3,
}

/// One servo cycle: map the reading onto the disc, push the body through the
/// coupling, step the simulation by one `dt`, and compute the force to play
/// back at the new state.
///
/// Does constant work per call. The output depends only on the reading and
/// the session state going in.
pub fn haptic_tick(
    device_reading: Vec3,
    session: &mut Session,
    spec: &DeviceSpec,
    params: &CouplingParams,
) -> Result<HapticFrameCommand> {
    let tick_index = session.tick();
    let mapped = map_device_to_world(device_reading, spec, session.config().disc_radius);
    let applied = coupling_force(mapped.world, session.state(), params);
    session.advance(applied)?;
    let after = session.forces(applied)?;
    Ok(HapticFrameCommand {
        tick_index,
        force_out: display_force(&after, params, spec),
        proxy_pos_device: mapped.device,
    })
}

/// Drive `session` for `duration` seconds from `source`, one servo cycle per
/// step, and return the recorded trace with the digest of every command sent.
pub fn run_haptic<D: DeviceSource + ?Sized>(
    session: &mut Session,
    source: &mut D,
    duration: f64,
    spec: &DeviceSpec,
    params: &CouplingParams,
) -> Result<(Trace, CommandDigest)> {
    if !(duration.is_finite() && duration > 0.0) {
        return Err(ScenarioError::Config(format!("duration must be > 0, got {duration}")).into());
    }
    let mut digest = CommandDigest::new();
    for _ in 0..session.config().steps_for(duration) {
        let reading = source.reading(session.tick());
        digest.push(&haptic_tick(reading, session, spec, params)?);
    }
    Ok((session.trace(), digest))
}

/// Running SHA-256 over a command stream, for bitwise replay comparisons.
#[derive(Clone, Default)]
pub struct CommandDigest {
    hasher: Sha256,
    count: u64,
}

impl CommandDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, cmd: &HapticFrameCommand) {
        self.hasher.update(cmd.tick_index.to_le_bytes());
        for v in [cmd.force_out, cmd.proxy_pos_device] {
            for c in v.to_array() {
                self.hasher.update(c.to_bits().to_le_bytes());
            }
        }
        self.count += 1;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Lowercase hex digest of everything pushed so far.
    pub fn hex(&self) -> String {
        self.hasher
            .clone()
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
