use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::{HapticsError, Result};
use crate::Vec3;

/// Anything that yields a device position per servo tick.
pub trait DeviceSource {
    fn reading(&mut self, tick: u64) -> Vec3;
}

/// Replays a fixed list of `(tick, position)` points, holding each value
/// until the next point. Before the first point the grip sits at the origin.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScriptedDevice {
    points: Vec<(u64, Vec3)>,
}

impl ScriptedDevice {
    pub fn new(points: Vec<(u64, Vec3)>) -> Result<Self> {
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(HapticsError::InvalidScript(format!(
                    "tick indices must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some((tick, p)) = points.iter().find(|(_, p)| !p.is_finite()) {
            return Err(HapticsError::InvalidScript(format!(
                "non-finite position {p} at tick {tick}"
            )));
        }
        Ok(Self { points })
    }

    pub fn at(&self, tick: u64) -> Vec3 {
        let idx = self.points.partition_point(|(t, _)| *t <= tick);
        if idx == 0 {
            Vec3::ZERO
        } else {
            self.points[idx - 1].1
        }
    }

    pub fn points(&self) -> &[(u64, Vec3)] {
        &self.points
    }
}

impl DeviceSource for ScriptedDevice {
    fn reading(&mut self, tick: u64) -> Vec3 {
        self.at(tick)
    }
}

#[derive(Deserialize)]
struct ScriptRow {
    tick: u64,
    x: f64,
    y: f64,
    z: f64,
}

/// Parse a `tick,x,y,z` CSV (header required, metres in device coordinates).
pub fn parse_device_script<R: Read>(input: R) -> Result<ScriptedDevice> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| HapticsError::InvalidScript(e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["tick", "x", "y", "z"] {
        return Err(HapticsError::InvalidScript(format!(
            "expected header tick,x,y,z, got {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    for row in reader.deserialize::<ScriptRow>() {
        let row = row.map_err(|e| HapticsError::InvalidScript(e.to_string()))?;
        points.push((row.tick, Vec3::new(row.x, row.y, row.z)));
    }
    ScriptedDevice::new(points)
}

pub fn load_device_script(path: impl AsRef<Path>) -> Result<ScriptedDevice> {
    let file = std::fs::File::open(path)?;
    parse_device_script(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_script_reads_origin() {
        let mut d = ScriptedDevice::new(vec![]).unwrap();
        assert_eq!(d.reading(0), Vec3::ZERO);
        assert_eq!(d.reading(12345), Vec3::ZERO);
    }

    #[test]
    fn single_point_holds_forever() {
        let p = Vec3::new(0.01, 0.02, 0.0);
        let mut d = ScriptedDevice::new(vec![(0, p)]).unwrap();
        assert_eq!(d.reading(0), p);
        assert_eq!(d.reading(999), p);
    }

    #[test]
    fn holds_between_points() {
        let a = Vec3::new(0.01, 0.0, 0.0);
        let b = Vec3::new(0.0, -0.01, 0.0);
        let d = ScriptedDevice::new(vec![(0, a), (10, b)]).unwrap();
        for t in 0..10 {
            assert_eq!(d.at(t), a);
        }
        for t in 10..20 {
            assert_eq!(d.at(t), b);
        }
    }

    #[test]
    fn unsorted_script_rejected() {
        let err = ScriptedDevice::new(vec![(5, Vec3::ZERO), (5, Vec3::ZERO)]).unwrap_err();
        assert!(matches!(err, HapticsError::InvalidScript(_)));
        assert!(ScriptedDevice::new(vec![(5, Vec3::ZERO), (2, Vec3::ZERO)]).is_err());
    }

    #[test]
    fn parses_csv() {
        let text = "tick,x,y,z\n0,0.01,0,0\n250, 0.0 ,0.02,0.0\n";
        let d = parse_device_script(text.as_bytes()).unwrap();
        assert_eq!(d.points().len(), 2);
        assert_eq!(d.at(300), Vec3::new(0.0, 0.02, 0.0));
    }

    #[test]
    fn bad_csv_rejected() {
        assert!(parse_device_script("t,x,y,z\n0,0,0,0\n".as_bytes()).is_err());
        assert!(parse_device_script("tick,x,y,z\n0,a,0,0\n".as_bytes()).is_err());
        assert!(parse_device_script("tick,x,y,z\n3,0,0,0\n1,0,0,0\n".as_bytes()).is_err());
    }
}
