use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    pyo3::append_to_inittab!(coriolis);
    Python::attach(|py| {
        let globals = PyDict::new(py);
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None)
            .inspect_err(|e| e.print(py))
            .unwrap();
    });
}

use coriolis::coriolis;

#[test]
fn python_api_round_trip() {
    run(r#"
import json, math
import coriolis

a = coriolis.coriolis_accel(1.0, (1.0, 0.0, 0.0))
assert a == (0.0, -2.0, 0.0), a

s = coriolis.Session("glider", omega=1.0, impulse=(0.5, 0.0, 0.0))
t = s.run(2.0)
assert len(t) == 200
assert t.curvature("rotating") == "right"
assert t.line_residual("inertial") < 1e-9
assert s.tick == 2000 and abs(s.t - 2.0) < 1e-12

r, v = coriolis.to_inertial((1.0, 0.0, 0.0), (0.0, 0.0, 0.0), 1.0, math.pi / 2)
assert abs(r[0]) < 1e-12 and abs(r[1] - 1.0) < 1e-12
assert abs(v[0] + 1.0) < 1e-12

assert coriolis.display_force((0.0, -4.0, 0.0)) == (0.0, -4.0, 0.0)
assert coriolis.coupling_force((0.1, 0.0, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, 0.0)) == (5.0, 0.0, 0.0)
world, device, clamped = coriolis.map_device_to_world((1.0, 0.0, 0.0))
assert clamped and device[0] == 0.0508

out = coriolis.balance_groups([("a", 3.0, None), ("b", 3.0, None)], 2)
assert out["objective"] == 0.0 and out["method"] == "exact"
assert coriolis.balance_objective([[1.0, 3.0], [1.0, 3.0]]) == 0.0

try:
    coriolis.Session("disc")
except ValueError:
    pass
else:
    raise AssertionError

live = coriolis.LiveSession("glider")
try:
    live.send('{"type":"set_param","name":"mu_k","value":0.2}')
except coriolis.ProtocolError as e:
    assert "Rejected" in str(e)
else:
    raise AssertionError
live.send('{"type":"launch","impulse":[0.5,0,0]}')
live.advance(10)
first = json.loads(live.publish())
second = json.loads(live.publish())
assert second["seq"] > first["seq"]
"#);
}
