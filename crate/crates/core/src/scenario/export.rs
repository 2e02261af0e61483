use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{Result, Trace};
use crate::Vec3;

pub const CSV_HEADER: &str = "t,x_rot,y_rot,z_rot,vx_rot,vy_rot,vz_rot,x_in,y_in,z_in,vx_in,vy_in,vz_in,theta,fcor_x,fcor_y,fcor_z,fcen_x,fcen_y,fcen_z,ffric_x,ffric_y,ffric_z,fapp_x,fapp_y,fapp_z";

/// Write `trace` as CSV; returns the number of bytes written.
///
/// Numbers use the shortest representation that parses back to the same
/// `f64`, so identical traces give identical bytes.
pub fn export_csv<W: Write>(trace: &Trace, mut out: W) -> Result<usize> {
    let mut written = 0;
    let mut line = String::with_capacity(512);
    line.push_str(CSV_HEADER);
    line.push('\n');
    out.write_all(line.as_bytes())?;
    written += line.len();
    for s in &trace.samples {
        line.clear();
        push_num(&mut line, s.t);
        for v in [s.r_rot, s.v_rot, s.r_in, s.v_in] {
            push_vec(&mut line, v);
        }
        line.push(',');
        push_num(&mut line, s.theta);
        let f = &s.forces;
        for v in [f.coriolis, f.centrifugal, f.friction, f.applied] {
            push_vec(&mut line, v);
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
        written += line.len();
    }
    out.flush()?;
    Ok(written)
}

pub fn export_csv_to_path(trace: &Trace, path: impl AsRef<Path>) -> Result<usize> {
    let file = File::create(path)?;
    export_csv(trace, BufWriter::new(file))
}

fn push_num(line: &mut String, x: f64) {
    use std::fmt::Write as _;
    // Debug formatting is the shortest round-trip form.
    let _ = write!(line, "{x:?}");
}

fn push_vec(line: &mut String, v: Vec3) {
    for c in v.to_array() {
        line.push(',');
        push_num(line, c);
    }
}
