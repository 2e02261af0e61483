use super::{Result, ScenarioConfig, ScenarioError, ScenarioKind, Trace, TraceSample};
use crate::rotframe::{
    self, net_forces, to_inertial, BodyState, ForceBreakdown, FrictionParams, RotatingFrame,
};
use crate::Vec3;

/// A running scenario: one body on one spinning frame, stepped by one owner.
#[derive(Debug, Clone)]
pub struct Session {
    config: ScenarioConfig,
    state: BodyState,
    frame: RotatingFrame,
    tick: u64,
    samples: Vec<TraceSample>,
}

impl Session {
    /// Start at the disc center with velocity `impulse / mass`.
    pub fn launch(config: ScenarioConfig, impulse: Vec3) -> Result<Self> {
        config.validate()?;
        if !impulse.is_finite() {
            return Err(ScenarioError::Config(format!(
                "impulse must be finite, got {impulse}"
            )));
        }
        let state = BodyState::new(Vec3::ZERO, impulse.flatten() / config.mass, config.mass)?;
        let frame = RotatingFrame::new(config.omega0);
        Ok(Self {
            config,
            state,
            frame,
            tick: 0,
            samples: Vec::new(),
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn state(&self) -> &BodyState {
        &self.state
    }

    pub fn frame(&self) -> &RotatingFrame {
        &self.frame
    }

    /// Steps taken so far.
    pub fn tick(&self) -> u64 {
        self.tick
    }

    /// Whether the body is currently in frictional contact with the disc.
    pub fn on_surface(&self) -> bool {
        self.config.kind == ScenarioKind::Ball && self.state.r_rot.norm() <= self.config.disc_radius
    }

    pub fn forces(&self, applied: Vec3) -> Result<ForceBreakdown> {
        Ok(net_forces(
            &self.state,
            &self.frame,
            &self.config.friction,
            applied,
            self.on_surface(),
        )?)
    }

    /// Snapshot of the current instant in both frames.
    pub fn sample(&self, applied: Vec3) -> Result<TraceSample> {
        let forces = self.forces(applied)?;
        let (r_in, v_in) = to_inertial(&self.state, &self.frame);
        Ok(TraceSample {
            t: self.state.t,
            r_rot: self.state.r_rot,
            v_rot: self.state.v_rot,
            r_in,
            v_in,
            theta: self.frame.theta(),
            forces,
        })
    }

    /// One step of `dt` under a constant applied force.
    ///
    /// The pre-step instant is recorded when the tick falls on the record
    /// stride. Returns the forces acting at the pre-step instant.
    pub fn advance(&mut self, applied: Vec3) -> Result<ForceBreakdown> {
        let stride = u64::from(self.config.record_stride);
        let forces = if stride > 0 && self.tick.is_multiple_of(stride) {
            let s = self.sample(applied)?;
            self.samples.push(s);
            s.forces
        } else {
            self.forces(applied)?
        };
        let (state, frame) = rotframe::step(
            &self.state,
            &self.frame,
            &self.config.friction,
            applied,
            self.on_surface(),
            self.config.dt,
        )?;
        self.state = state;
        self.frame = frame;
        self.tick += 1;
        Ok(forces)
    }

    /// Step freely (no applied force) for `duration` seconds.
    pub fn run(&mut self, duration: f64) -> Result<Trace> {
        self.run_with(duration, |_| Vec3::ZERO)
    }

    /// Step for `duration` seconds, asking `input` for the applied force
    /// before each step.
    pub fn run_with<F>(&mut self, duration: f64, mut input: F) -> Result<Trace>
    where
        F: FnMut(&Session) -> Vec3,
    {
        if !(duration.is_finite() && duration > 0.0) {
            return Err(ScenarioError::Config(format!(
                "duration must be > 0, got {duration}"
            )));
        }
        for _ in 0..self.config.steps_for(duration) {
            let applied = input(self);
            self.advance(applied)?;
        }
        Ok(self.trace())
    }

    /// Everything recorded so far.
    pub fn trace(&self) -> Trace {
        Trace {
            config: self.config.clone(),
            samples: self.samples.clone(),
        }
    }

    pub fn clear_trace(&mut self) {
        self.samples.clear();
    }

    /// Change the spin rate from now on. Angle, position and velocity carry over.
    pub fn set_omega(&mut self, omega: f64) -> Result<()> {
        if !omega.is_finite() {
            return Err(ScenarioError::Config(format!(
                "omega must be finite, got {omega}"
            )));
        }
        self.frame.set_omega(omega);
        self.config.omega0 = omega;
        Ok(())
    }

    /// Change the body mass; velocity is kept.
    pub fn set_mass(&mut self, mass: f64) -> Result<()> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(ScenarioError::Config(format!(
                "mass must be > 0, got {mass}"
            )));
        }
        self.config.mass = mass;
        self.state.mass = mass;
        Ok(())
    }

    pub fn set_friction(&mut self, friction: FrictionParams) -> Result<()> {
        let mut next = self.config.clone();
        next.friction = friction;
        next.validate()?;
        self.config = next;
        Ok(())
    }

    /// Put the body back at the disc center with velocity `impulse / mass`.
    /// Time and frame angle continue.
    pub fn relaunch(&mut self, impulse: Vec3) -> Result<()> {
        if !impulse.is_finite() {
            return Err(ScenarioError::Config(format!(
                "impulse must be finite, got {impulse}"
            )));
        }
        self.state.r_rot = Vec3::ZERO;
        self.state.v_rot = impulse.flatten() / self.state.mass;
        Ok(())
    }

    /// Back to t = 0: body at rest at the center, frame angle zero.
    pub fn reset(&mut self) {
        self.state = BodyState {
            t: 0.0,
            r_rot: Vec3::ZERO,
            v_rot: Vec3::ZERO,
            mass: self.config.mass,
        };
        self.frame = RotatingFrame::new(self.frame.omega_z());
        self.tick = 0;
        self.samples.clear();
    }
}
