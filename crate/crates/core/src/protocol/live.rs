use std::collections::VecDeque;

use super::messages::{BallState, ClientMsg, ErrorKind, Param, ProtocolError, StateMsg};
use crate::haptics::{haptic_tick, CouplingParams, DeviceSpec, HapticFrameCommand};
use crate::rotframe::to_inertial;
use crate::scenario::{ScenarioConfig, Session, Vantage};
use crate::Vec3;

/// Positions kept for the drawn path.
pub const TAIL_LEN: usize = 256;
/// Physics ticks between path points.
pub const TAIL_STRIDE: u64 = 10;

/// What currently pushes the body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputMode {
    /// Nothing; the body moves freely.
    Idle,
    /// Device or pointer position, routed through the virtual coupling.
    Device(Vec3),
    /// Direct force (N).
    Force(Vec3),
}

/// One client's steerable simulation.
///
/// Owned by a single loop that interleaves [`apply`](Self::apply) for each
/// incoming message with batches of [`tick`](Self::tick), and calls
/// [`publish`](Self::publish) for each outgoing snapshot. Given the same
/// messages and tick counts it produces the same snapshots.
#[derive(Debug, Clone)]
pub struct LiveSession {
    session: Session,
    spec: DeviceSpec,
    coupling: CouplingParams,
    vantage: Vantage,
    input: InputMode,
    seq: u64,
    tail: VecDeque<(Vec3, Vec3)>,
    last_command: Option<HapticFrameCommand>,
}

impl LiveSession {
    pub fn new(
        mut config: ScenarioConfig,
        spec: DeviceSpec,
        coupling: CouplingParams,
    ) -> Result<Self, ProtocolError> {
        spec.validate().map_err(rejected)?;
        coupling.validate().map_err(rejected)?;
        // The tail replaces the trace; nothing accumulates per tick.
        config.record_stride = 0;
        let vantage = config.vantage;
        let session = Session::launch(config, Vec3::ZERO).map_err(rejected)?;
        let mut live = Self {
            session,
            spec,
            coupling,
            vantage,
            input: InputMode::Idle,
            seq: 0,
            tail: VecDeque::with_capacity(TAIL_LEN),
            last_command: None,
        };
        live.record_tail();
        Ok(live)
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    pub fn vantage(&self) -> Vantage {
        self.vantage
    }

    pub fn input(&self) -> InputMode {
        self.input
    }

    pub fn coupling(&self) -> &CouplingParams {
        &self.coupling
    }

    /// Device command from the most recent coupled tick.
    pub fn last_command(&self) -> Option<&HapticFrameCommand> {
        self.last_command.as_ref()
    }

    /// Apply one client message. On error the session is unchanged.
    pub fn apply(&mut self, msg: &ClientMsg) -> Result<(), ProtocolError> {
        match *msg {
            ClientMsg::DeviceInput { device } => self.input = InputMode::Device(device),
            ClientMsg::ForceInput { force } => self.input = InputMode::Force(force.flatten()),
            ClientMsg::SetParam { name, value } => self.set_param(name, value)?,
            ClientMsg::Vantage { frame } => self.vantage = frame,
            ClientMsg::Launch { impulse } => {
                self.session.relaunch(impulse).map_err(rejected)?;
                self.input = InputMode::Idle;
                self.tail.clear();
                self.record_tail();
            }
            ClientMsg::Reset => {
                self.session.reset();
                self.input = InputMode::Idle;
                self.tail.clear();
                self.last_command = None;
                self.record_tail();
            }
        }
        Ok(())
    }

    fn set_param(&mut self, name: Param, value: f64) -> Result<(), ProtocolError> {
        if !value.is_finite() {
            return Err(ProtocolError::new(
                ErrorKind::InvalidField,
                format!("{} must be finite", name.as_str()),
            ));
        }
        match name {
            Param::Omega => self.session.set_omega(value).map_err(rejected),
            Param::Mass => self.session.set_mass(value).map_err(rejected),
            Param::MuK | Param::MuS => {
                let mut friction = self.session.config().friction;
                if name == Param::MuK {
                    friction.mu_k = value;
                } else {
                    friction.mu_s = value;
                }
                self.session.set_friction(friction).map_err(rejected)
            }
            Param::Gain => {
                let next = CouplingParams {
                    display_gain: value,
                    ..self.coupling
                };
                next.validate().map_err(rejected)?;
                self.coupling = next;
                Ok(())
            }
        }
    }

    /// Advance the simulation by one step under the current input.
    pub fn tick(&mut self) -> Result<(), ProtocolError> {
        match self.input {
            InputMode::Device(p) => {
                let cmd = haptic_tick(p, &mut self.session, &self.spec, &self.coupling)
                    .map_err(rejected)?;
                self.last_command = Some(cmd);
            }
            InputMode::Force(f) => {
                self.session.advance(f).map_err(rejected)?;
            }
            InputMode::Idle => {
                self.session.advance(Vec3::ZERO).map_err(rejected)?;
            }
        }
        if self.session.tick().is_multiple_of(TAIL_STRIDE) {
            self.record_tail();
        }
        Ok(())
    }

    pub fn advance(&mut self, ticks: u64) -> Result<(), ProtocolError> {
        for _ in 0..ticks {
            self.tick()?;
        }
        Ok(())
    }

    fn record_tail(&mut self) {
        let state = self.session.state();
        let (r_in, _) = to_inertial(state, self.session.frame());
        if self.tail.len() == TAIL_LEN {
            self.tail.pop_front();
        }
        self.tail.push_back((state.r_rot, r_in));
    }

    fn applied(&self) -> Vec3 {
        match self.input {
            InputMode::Idle => Vec3::ZERO,
            InputMode::Force(f) => f,
            InputMode::Device(p) => {
                let mapped = crate::haptics::map_device_to_world(
                    p,
                    &self.spec,
                    self.session.config().disc_radius,
                );
                crate::haptics::coupling_force(mapped.world, self.session.state(), &self.coupling)
            }
        }
    }

    /// Snapshot of the current state; each call gets the next sequence number.
    pub fn publish(&mut self) -> Result<StateMsg, ProtocolError> {
        let state = *self.session.state();
        let frame = *self.session.frame();
        let forces = self.session.forces(self.applied()).map_err(rejected)?;
        let (r_in, _) = to_inertial(&state, &frame);
        self.seq += 1;
        let trace_tail = self
            .tail
            .iter()
            .map(|&(rot, inertial)| match self.vantage {
                Vantage::Rotating => rot,
                Vantage::Inertial => inertial,
            })
            .collect();
        Ok(StateMsg {
            t: state.t,
            theta: frame.theta(),
            omega: frame.omega_z(),
            ball: BallState {
                r_rot: state.r_rot,
                v_rot: state.v_rot,
                r_in,
            },
            forces,
            trace_tail,
            seq: self.seq,
        })
    }
}

fn rejected(e: impl std::fmt::Display) -> ProtocolError {
    ProtocolError::new(ErrorKind::Rejected, e.to_string())
}
