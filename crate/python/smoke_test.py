"""Smoke test for the Python bindings.

Build and install first, e.g. ``maturin develop --release -m crates/py/Cargo.toml``
or ``pip install`` a wheel from ``maturin build``. Then run
``python python/smoke_test.py``.
"""

import json
import math

import coriolis


def close(a, b, tol):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def main():
    # Coriolis pushes a moving body right on a counterclockwise disc.
    a = coriolis.coriolis_accel(1.0, (1.0, 0.0, 0.0))
    assert close(a, (0.0, -2.0, 0.0), 1e-15), a

    # Free glider: straight in the fixed frame, curving right on the disc.
    s = coriolis.Session("glider", omega=1.0, impulse=(0.5, 0.0, 0.0))
    trace = s.run(10.0)
    assert len(trace) == 1000
    assert trace.line_residual("inertial") < 1e-6
    assert trace.curvature("rotating") == "right"
    at_one = trace.samples()[100]
    assert abs(at_one["t"] - 1.0) < 1e-12
    expected = (math.cos(1.0), -math.sin(1.0), 0.0)
    assert close(at_one["r_rot"], expected, 1e-8), at_one["r_rot"]
    assert trace.to_csv().count("\n") == 1001

    # Haptic output never exceeds the device limit.
    f = coriolis.display_force((12.0, 0.0, 0.0))
    assert close(f, (coriolis.F_MAX, 0.0, 0.0), 1e-12), f

    # Scripted device runs replay bit for bit.
    script = "tick,x,y,z\n0,0,0,0\n100,0.02,0.01,0\n"
    digests = []
    for _ in range(2):
        ball = coriolis.Session("ball", omega=1.0, impulse=(0.0, 0.0, 0.0))
        _, digest = ball.run_device_script(script, 1.0)
        digests.append(digest)
    assert digests[0] == digests[1] and len(digests[0]) == 64

    # Eight-student roster splits into two groups with variance 0.21.
    gpas = [4.0, 3.8, 3.6, 3.4, 3.2, 3.0, 2.8, 2.6]
    out = coriolis.balance_groups([(f"s{i}", g, None) for i, g in enumerate(gpas)], 2)
    assert out["objective"] < 1e-20
    assert all(abs(v - 0.21) < 1e-12 for v in out["variance"].values())
    assert abs(coriolis.pair_delta(220.0, 253.0) - 15.0) < 1e-9

    # Protocol frames round-trip; bad frames raise.
    frame = '{"type":"launch","impulse":[0.5,0.0,0.0]}'
    assert coriolis.normalize_message(frame) == frame
    try:
        coriolis.normalize_message('{"type":"launch"')
    except coriolis.ProtocolError:
        pass
    else:
        raise AssertionError("truncated frame accepted")

    live = coriolis.LiveSession()
    live.send(frame)
    state = json.loads(live.publish())
    assert state["type"] == "state" and state["seq"] == 1
    speed = math.hypot(*state["ball"]["v_rot"][:2])
    assert abs(speed - 1.0) < 1e-12, speed

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
