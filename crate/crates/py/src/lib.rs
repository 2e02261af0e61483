//! Python bindings.
//!
//! Vectors cross the boundary as `(x, y, z)` tuples; force breakdowns and
//! trace samples as dicts. Invalid arguments raise `ValueError`, protocol
//! failures raise `ProtocolError` (a `ValueError` subclass).

use coriolis_core::haptics::{self, parse_device_script, run_haptic, CouplingParams, DeviceSpec};
use coriolis_core::protocol::{self, ClientMsg, LiveSession as CoreLive, ServerMsg};
use coriolis_core::rotframe::{self, BodyState, ForceBreakdown, FrictionParams, RotatingFrame};
use coriolis_core::scenario::{
    self, curvature_sign, export_csv, ScenarioConfig, ScenarioKind, Trace as CoreTrace,
    TraceSample, Vantage,
};
use coriolis_core::study::{self, StudentRecord};
use coriolis_core::Vec3;
use pyo3::create_exception;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

create_exception!(coriolis, ProtocolError, PyValueError);

type V3 = (f64, f64, f64);

fn v3(v: V3) -> Vec3 {
    Vec3::new(v.0, v.1, v.2)
}

fn tup(v: Vec3) -> V3 {
    (v.x, v.y, v.z)
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = String>>(s: &str) -> PyResult<T> {
    s.parse().map_err(PyValueError::new_err)
}

fn forces_dict<'py>(py: Python<'py>, f: &ForceBreakdown) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("coriolis", tup(f.coriolis))?;
    d.set_item("centrifugal", tup(f.centrifugal))?;
    d.set_item("euler", tup(f.euler))?;
    d.set_item("friction", tup(f.friction))?;
    d.set_item("applied", tup(f.applied))?;
    Ok(d)
}

fn sample_dict<'py>(py: Python<'py>, s: &TraceSample) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t", s.t)?;
    d.set_item("r_rot", tup(s.r_rot))?;
    d.set_item("v_rot", tup(s.v_rot))?;
    d.set_item("r_in", tup(s.r_in))?;
    d.set_item("v_in", tup(s.v_in))?;
    d.set_item("theta", s.theta)?;
    d.set_item("forces", forces_dict(py, &s.forces)?)?;
    Ok(d)
}

fn frame(omega: f64, alpha: f64) -> PyResult<RotatingFrame> {
    let f = RotatingFrame::new(omega).with_alpha(alpha);
    f.validate().map_err(value_err)?;
    Ok(f)
}

/// Coriolis acceleration −2ω×v for spin `omega` (rad/s) about +z.
#[pyfunction]
fn coriolis_accel(omega: f64, v: V3) -> PyResult<V3> {
    rotframe::coriolis_accel(&frame(omega, 0.0)?, v3(v))
        .map(tup)
        .map_err(value_err)
}

/// Centrifugal acceleration −ω×(ω×r).
#[pyfunction]
fn centrifugal_accel(omega: f64, r: V3) -> PyResult<V3> {
    rotframe::centrifugal_accel(&frame(omega, 0.0)?, v3(r))
        .map(tup)
        .map_err(value_err)
}

/// Euler acceleration −α×r.
#[pyfunction]
fn euler_accel(alpha: f64, r: V3) -> PyResult<V3> {
    rotframe::euler_accel(&frame(0.0, alpha)?, v3(r))
        .map(tup)
        .map_err(value_err)
}

/// Specific Jacobi integral ½|v|² − ½|ω×r|².
#[pyfunction]
fn jacobi_energy(omega: f64, r_rot: V3, v_rot: V3) -> PyResult<f64> {
    let body = BodyState::new(v3(r_rot), v3(v_rot), 1.0).map_err(value_err)?;
    Ok(rotframe::jacobi_energy(&body, &frame(omega, 0.0)?))
}

/// Rotating-frame position and velocity to the fixed frame.
#[pyfunction]
#[pyo3(signature = (r_rot, v_rot, omega, theta=0.0))]
fn to_inertial(r_rot: V3, v_rot: V3, omega: f64, theta: f64) -> PyResult<(V3, V3)> {
    let body = BodyState::new(v3(r_rot), v3(v_rot), 1.0).map_err(value_err)?;
    let (r, v) = rotframe::to_inertial(&body, &frame(omega, 0.0)?.with_theta(theta));
    Ok((tup(r), tup(v)))
}

/// Fixed-frame position and velocity to the rotating frame.
#[pyfunction]
#[pyo3(signature = (r_in, v_in, omega, theta=0.0))]
fn to_rotating(r_in: V3, v_in: V3, omega: f64, theta: f64) -> PyResult<(V3, V3)> {
    let (r, v) = rotframe::to_rotating(v3(r_in), v3(v_in), &frame(omega, 0.0)?.with_theta(theta));
    Ok((tup(r), tup(v)))
}

/// Force the device plays back for the given fictitious forces, clamped to `f_max`.
#[pyfunction]
#[pyo3(signature = (coriolis, centrifugal=(0.0, 0.0, 0.0), euler=(0.0, 0.0, 0.0), gain=1.0, f_max=None))]
fn display_force(
    coriolis: V3,
    centrifugal: V3,
    euler: V3,
    gain: f64,
    f_max: Option<f64>,
) -> PyResult<V3> {
    let mut spec = DeviceSpec::default();
    if let Some(f) = f_max {
        spec.f_max = f;
    }
    spec.validate().map_err(value_err)?;
    let params = CouplingParams {
        display_gain: gain,
        ..CouplingParams::default()
    };
    params.validate().map_err(value_err)?;
    let forces = ForceBreakdown {
        coriolis: v3(coriolis),
        centrifugal: v3(centrifugal),
        euler: v3(euler),
        ..ForceBreakdown::default()
    };
    if !forces.is_finite() {
        return Err(PyValueError::new_err("forces must be finite"));
    }
    Ok(tup(haptics::display_force(&forces, &params, &spec)))
}

/// Device grip position → (world point on the disc, clamped device point, was_clamped).
#[pyfunction]
#[pyo3(signature = (p_device, disc_radius=1.0))]
fn map_device_to_world(p_device: V3, disc_radius: f64) -> (V3, V3, bool) {
    let m = haptics::map_device_to_world(v3(p_device), &DeviceSpec::default(), disc_radius);
    (tup(m.world), tup(m.device), m.clamped)
}

/// Spring-damper force pulling a body at `r_rot`, `v_rot` toward `p_world`.
#[pyfunction]
#[pyo3(signature = (p_world, r_rot, v_rot, k_c=50.0, b_c=2.0))]
fn coupling_force(p_world: V3, r_rot: V3, v_rot: V3, k_c: f64, b_c: f64) -> PyResult<V3> {
    let params = CouplingParams {
        k_c,
        b_c,
        ..CouplingParams::default()
    };
    params.validate().map_err(value_err)?;
    let body = BodyState::new(v3(r_rot), v3(v_rot), 1.0).map_err(value_err)?;
    Ok(tup(haptics::coupling_force(v3(p_world), &body, &params)))
}

/// A recorded run.
#[pyclass(module = "coriolis", frozen)]
struct Trace {
    inner: CoreTrace,
}

#[pymethods]
impl Trace {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// All samples as dicts.
    fn samples<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self
            .inner
            .samples
            .iter()
            .map(|s| sample_dict(py, s))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    /// Positions seen from `vantage` ("rotating" or "inertial").
    fn path(&self, vantage: &str) -> PyResult<Vec<V3>> {
        Ok(self
            .inner
            .path(parse(vantage)?)
            .into_iter()
            .map(tup)
            .collect())
    }

    /// "right", "left" or "straight".
    fn curvature(&self, vantage: &str) -> PyResult<String> {
        curvature_sign(&self.inner, parse(vantage)?)
            .map(|c| c.to_string())
            .map_err(value_err)
    }

    /// Largest distance from the best-fit line through the path.
    fn line_residual(&self, vantage: &str) -> PyResult<f64> {
        Ok(scenario::max_line_residual(
            &self.inner.path(parse(vantage)?),
        ))
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        export_csv(&self.inner, &mut buf).map_err(|e| PyIOError::new_err(e.to_string()))?;
        Ok(String::from_utf8(buf).expect("CSV is ASCII"))
    }

    fn export(&self, path: std::path::PathBuf) -> PyResult<usize> {
        scenario::export_csv_to_path(&self.inner, path)
            .map_err(|e| PyIOError::new_err(e.to_string()))
    }
}

/// One simulated body on a spinning disc.
#[pyclass(module = "coriolis")]
struct Session {
    inner: scenario::Session,
}

#[pymethods]
impl Session {
    #[new]
    #[pyo3(signature = (
        scenario="ball", omega=None, mu_s=None, mu_k=None, mass=None, dt=None,
        vantage=None, impulse=None, record_stride=None
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        scenario: &str,
        omega: Option<f64>,
        mu_s: Option<f64>,
        mu_k: Option<f64>,
        mass: Option<f64>,
        dt: Option<f64>,
        vantage: Option<&str>,
        impulse: Option<V3>,
        record_stride: Option<u32>,
    ) -> PyResult<Self> {
        let mut cfg = ScenarioConfig::for_kind(parse::<ScenarioKind>(scenario)?);
        if let Some(w) = omega {
            cfg.omega0 = w;
        }
        if mu_s.is_some() || mu_k.is_some() {
            let k = mu_k.unwrap_or(cfg.friction.mu_k);
            let s = mu_s.unwrap_or(cfg.friction.mu_s.max(k));
            cfg.friction = FrictionParams::new(s, k).map_err(value_err)?;
        }
        if let Some(m) = mass {
            cfg.mass = m;
        }
        if let Some(dt) = dt {
            cfg.dt = dt;
        }
        if let Some(v) = vantage {
            cfg.vantage = parse::<Vantage>(v)?;
        }
        if let Some(s) = record_stride {
            cfg.record_stride = s;
        }
        let impulse = impulse.map_or(Vec3::new(cfg.mass, 0.0, 0.0), v3);
        scenario::Session::launch(cfg, impulse)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[getter]
    fn t(&self) -> f64 {
        self.inner.state().t
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.frame().theta()
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.inner.frame().omega_z()
    }

    #[getter]
    fn r_rot(&self) -> V3 {
        tup(self.inner.state().r_rot)
    }

    #[getter]
    fn v_rot(&self) -> V3 {
        tup(self.inner.state().v_rot)
    }

    #[getter]
    fn tick(&self) -> u64 {
        self.inner.tick()
    }

    /// One step under `applied` force; returns the force breakdown at the new state.
    #[pyo3(signature = (applied=(0.0, 0.0, 0.0)))]
    fn step<'py>(&mut self, py: Python<'py>, applied: V3) -> PyResult<Bound<'py, PyDict>> {
        let f = self.inner.advance(v3(applied)).map_err(value_err)?;
        forces_dict(py, &f)
    }

    /// Step freely for `duration` seconds; returns everything recorded so far.
    fn run(&mut self, duration: f64) -> PyResult<Trace> {
        self.inner
            .run(duration)
            .map(|inner| Trace { inner })
            .map_err(value_err)
    }

    /// Drive the body from a `tick,x,y,z` device script for `duration`
    /// seconds. Returns the trace and the hex digest of the command stream.
    fn run_device_script(&mut self, script: &str, duration: f64) -> PyResult<(Trace, String)> {
        let mut device = parse_device_script(script.as_bytes()).map_err(value_err)?;
        let (inner, digest) = run_haptic(
            &mut self.inner,
            &mut device,
            duration,
            &DeviceSpec::default(),
            &CouplingParams::default(),
        )
        .map_err(value_err)?;
        Ok((Trace { inner }, digest.hex()))
    }

    fn set_omega(&mut self, omega: f64) -> PyResult<()> {
        self.inner.set_omega(omega).map_err(value_err)
    }

    /// Put the body back at the centre with velocity impulse/mass; time runs on.
    fn relaunch(&mut self, impulse: V3) -> PyResult<()> {
        self.inner.relaunch(v3(impulse)).map_err(value_err)
    }

    fn reset(&mut self) {
        self.inner.reset();
    }
}

fn roster(students: Vec<(String, f64, Option<f64>)>) -> Vec<StudentRecord> {
    students
        .into_iter()
        .map(|(id, gpa, score)| {
            let s = StudentRecord::new(id, gpa);
            match score {
                Some(q) => s.with_score(q),
                None => s,
            }
        })
        .collect()
}

/// Split `(id, gpa, quiz_score_or_None)` records into `k` balanced groups.
/// Returns a dict with `groups` (label → member ids), per-group `mean` and
/// `variance`, the `objective` and the `method` used.
#[pyfunction]
#[pyo3(signature = (students, k, variance_weight=1.0))]
fn balance_groups<'py>(
    py: Python<'py>,
    students: Vec<(String, f64, Option<f64>)>,
    k: usize,
    variance_weight: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let options = study::BalanceOptions {
        variance_weight,
        ..Default::default()
    };
    let a = study::balance_groups_with(&roster(students), k, &options).map_err(value_err)?;
    let groups = PyDict::new(py);
    let means = PyDict::new(py);
    let variances = PyDict::new(py);
    for g in &a.groups {
        let ids: Vec<&str> = g.members.iter().map(|s| s.id.as_str()).collect();
        groups.set_item(&g.label, ids)?;
        means.set_item(&g.label, g.mean)?;
        variances.set_item(&g.label, g.variance)?;
    }
    let out = PyDict::new(py);
    out.set_item("groups", groups)?;
    out.set_item("mean", means)?;
    out.set_item("variance", variances)?;
    out.set_item("objective", a.objective)?;
    out.set_item(
        "method",
        match a.method {
            study::BalanceMethod::Exact => "exact",
            study::BalanceMethod::Heuristic => "heuristic",
        },
    )?;
    Ok(out)
}

/// Balance objective of explicit groups of GPAs.
#[pyfunction]
#[pyo3(signature = (groups, variance_weight=1.0))]
fn balance_objective(groups: Vec<Vec<f64>>, variance_weight: f64) -> f64 {
    study::objective(&groups, variance_weight)
}

/// Percentage change from the control score to the experimental score.
#[pyfunction]
fn pair_delta(control_score: f64, experimental_score: f64) -> PyResult<f64> {
    let pair = study::PairSpec::new("pair", "G1", "G2", "").map_err(value_err)?;
    let scores: study::GroupScores = [
        ("G1".to_string(), control_score),
        ("G2".to_string(), experimental_score),
    ]
    .into();
    study::pair_delta(&pair, &scores).map_err(value_err)
}

/// Report text (or CSV) for a scored roster balanced into `k` groups, using
/// the four standard comparisons.
#[pyfunction]
#[pyo3(signature = (students, k=4, csv=false))]
fn study_report(
    students: Vec<(String, f64, Option<f64>)>,
    k: usize,
    csv: bool,
) -> PyResult<String> {
    let a = study::balance_groups(&roster(students), k).map_err(value_err)?;
    let r = study::report(&a, &study::standard_pairs()).map_err(value_err)?;
    Ok(if csv { r.to_csv() } else { r.to_text() })
}

fn protocol_err(e: protocol::ProtocolError) -> PyErr {
    ProtocolError::new_err(format!("{:?}: {}", e.kind, e.reason))
}

/// Decode a client frame and re-encode it in canonical form.
#[pyfunction]
fn normalize_message(text: &str) -> PyResult<String> {
    protocol::decode(text)
        .map(|m| protocol::encode(&m))
        .map_err(protocol_err)
}

/// Live session driven by protocol frames, as the service runs it.
#[pyclass(module = "coriolis")]
struct LiveSession {
    inner: CoreLive,
}

#[pymethods]
impl LiveSession {
    #[new]
    #[pyo3(signature = (scenario="ball"))]
    fn new(scenario: &str) -> PyResult<Self> {
        let cfg = ScenarioConfig::for_kind(parse::<ScenarioKind>(scenario)?);
        CoreLive::new(cfg, DeviceSpec::default(), CouplingParams::default())
            .map(|inner| Self { inner })
            .map_err(protocol_err)
    }

    /// Apply one client frame; raises `ProtocolError` and leaves the session
    /// unchanged if it is malformed or refused.
    fn send(&mut self, text: &str) -> PyResult<()> {
        let msg: ClientMsg = protocol::decode(text).map_err(protocol_err)?;
        self.inner.apply(&msg).map_err(protocol_err)
    }

    fn advance(&mut self, ticks: u64) -> PyResult<()> {
        self.inner.advance(ticks).map_err(protocol_err)
    }

    /// Next state message as JSON text.
    fn publish(&mut self) -> PyResult<String> {
        let s = self.inner.publish().map_err(protocol_err)?;
        Ok(protocol::encode_server(&ServerMsg::State(s)))
    }
}

#[pymodule]
pub fn coriolis(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ProtocolError", m.py().get_type::<ProtocolError>())?;
    m.add("F_MAX", DeviceSpec::default().f_max)?;
    m.add("DT", rotframe::DEFAULT_DT)?;
    m.add_function(wrap_pyfunction!(coriolis_accel, m)?)?;
    m.add_function(wrap_pyfunction!(centrifugal_accel, m)?)?;
    m.add_function(wrap_pyfunction!(euler_accel, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_energy, m)?)?;
    m.add_function(wrap_pyfunction!(to_inertial, m)?)?;
    m.add_function(wrap_pyfunction!(to_rotating, m)?)?;
    m.add_function(wrap_pyfunction!(display_force, m)?)?;
    m.add_function(wrap_pyfunction!(map_device_to_world, m)?)?;
    m.add_function(wrap_pyfunction!(coupling_force, m)?)?;
    m.add_function(wrap_pyfunction!(balance_groups, m)?)?;
    m.add_function(wrap_pyfunction!(balance_objective, m)?)?;
    m.add_function(wrap_pyfunction!(pair_delta, m)?)?;
    m.add_function(wrap_pyfunction!(study_report, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_message, m)?)?;
    m.add_class::<Session>()?;
    m.add_class::<Trace>()?;
    m.add_class::<LiveSession>()?;
    Ok(())
}
