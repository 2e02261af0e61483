use std::fmt;
use std::path::PathBuf;

use coriolis_core::haptics::{
    load_device_script, run_haptic, CouplingParams, DeviceSpec, HapticsError,
};
use coriolis_core::scenario::{
    curvature_sign, export_csv_to_path, Curvature, ScenarioError, ScenarioKind, Session, Vantage,
};
use coriolis_core::Vec3;

use crate::{load_config, CliError, SimulateArgs, VecArg, SCENARIO_KEYS};

const DEFAULT_DURATION: f64 = 10.0;

/// What a headless run produced; `Display` gives the one-line summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateSummary {
    pub scenario: ScenarioKind,
    pub duration: f64,
    pub samples: usize,
    pub vantage: Vantage,
    /// `None` when the path is too short or never moves.
    pub curvature: Option<Curvature>,
    pub export: Option<PathBuf>,
    /// Command-stream digest when a device script drove the run.
    pub digest: Option<String>,
}

impl fmt::Display for SimulateSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "scenario={} duration={}s samples={} vantage={} curvature={}",
            self.scenario,
            self.duration,
            self.samples,
            self.vantage,
            self.curvature
                .map_or("undefined".to_string(), |c| c.to_string())
        )?;
        if let Some(path) = &self.export {
            write!(f, " export={}", path.display())?;
        }
        if let Some(d) = &self.digest {
            write!(f, " haptic_digest={d}")?;
        }
        Ok(())
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<SimulateSummary, CliError> {
    let file = load_config(args.config.as_ref())?;
    let mut keys = SCENARIO_KEYS.to_vec();
    keys.extend(["duration", "impulse", "stride", "export", "device-script"]);
    file.check_keys(&keys)?;

    let mut cfg = args.scenario.resolve(&file, None)?;
    let duration = file
        .or(args.duration, "duration")?
        .unwrap_or(DEFAULT_DURATION);
    if !(duration.is_finite() && duration > 0.0) {
        return Err(CliError::Usage(format!(
            "--duration must be > 0, got {duration}"
        )));
    }
    cfg.duration = duration;
    if let Some(stride) = file.or(args.stride, "stride")? {
        cfg.record_stride = stride;
    }
    let impulse = file
        .or(args.impulse, "impulse")?
        .map_or(Vec3::new(cfg.mass, 0.0, 0.0), |VecArg(v)| v);
    let export = file.or(args.export.clone(), "export")?;
    let script = file.or(args.device_script.clone(), "device-script")?;

    let vantage = cfg.vantage;
    let kind = cfg.kind;
    let mut session = Session::launch(cfg, impulse).map_err(|e| CliError::Usage(e.to_string()))?;
    let (trace, digest) = match &script {
        Some(path) => {
            let mut device = load_device_script(path).map_err(|e| match e {
                HapticsError::ScriptIo(io) => CliError::Io(format!(
                    "cannot read device script {}: {io}",
                    path.display()
                )),
                other => CliError::Io(format!("{}: {other}", path.display())),
            })?;
            let (trace, digest) = run_haptic(
                &mut session,
                &mut device,
                duration,
                &DeviceSpec::default(),
                &CouplingParams::default(),
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            (trace, Some(digest.hex()))
        }
        None => (
            session
                .run(duration)
                .map_err(|e| CliError::Usage(e.to_string()))?,
            None,
        ),
    };

    if let Some(path) = &export {
        export_csv_to_path(&trace, path).map_err(|e| match e {
            ScenarioError::Export(io) => {
                CliError::Io(format!("cannot write {}: {io}", path.display()))
            }
            other => CliError::Io(other.to_string()),
        })?;
    }

    Ok(SimulateSummary {
        scenario: kind,
        duration,
        samples: trace.len(),
        vantage,
        curvature: curvature_sign(&trace, vantage).ok(),
        export,
        digest,
    })
}
