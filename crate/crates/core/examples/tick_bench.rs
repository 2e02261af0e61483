//! Mean cost of one servo cycle against the 1 ms device budget.
//!
//! `cargo run --release -p coriolis-core --example tick_bench [ticks]`

use std::time::Instant;

use coriolis_core::haptics::{haptic_tick, CommandDigest, CouplingParams, DeviceSpec};
use coriolis_core::scenario::{ScenarioConfig, Session};
use coriolis_core::Vec3;

fn main() {
    let ticks: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    let mut cfg = ScenarioConfig::ball();
    cfg.record_stride = 0;
    let mut session = Session::launch(cfg, Vec3::new(0.2, 0.1, 0.0)).expect("valid config");
    let spec = DeviceSpec::default();
    let params = CouplingParams::default();
    let mut digest = CommandDigest::new();

    let start = Instant::now();
    for i in 0..ticks {
        // slow circle inside the workspace
        let a = i as f64 * 1e-3;
        let reading = Vec3::new(0.03 * a.cos(), 0.03 * a.sin(), 0.0);
        let cmd = haptic_tick(reading, &mut session, &spec, &params).expect("finite state");
        digest.push(&cmd);
    }
    let elapsed = start.elapsed();
    let mean_ns = elapsed.as_nanos() as f64 / ticks as f64;
    println!(
        "ticks={ticks} total={:.3}s mean={mean_ns:.0}ns budget_used={:.3}% digest={}",
        elapsed.as_secs_f64(),
        mean_ns / 1e6 * 100.0,
        &digest.hex()[..16]
    );
}
