//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use coriolis_core::Vec3;

/// Population mean and variance, computed the long way.
pub fn moments(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var)
}

/// Best balance objective over every labeling of `gpas` into `k` equal groups,
/// found by counting through all k^n label vectors.
pub fn brute_force_objective(gpas: &[f64], k: usize, w: f64) -> f64 {
    let n = gpas.len();
    let size = n / k;
    let (mean, var) = moments(gpas);
    let mut labels = vec![0usize; n];
    let mut best = f64::INFINITY;
    loop {
        let mut counts = vec![0usize; k];
        for &l in &labels {
            counts[l] += 1;
        }
        if counts.iter().all(|&c| c == size) {
            let mut j = 0.0;
            for g in 0..k {
                let members: Vec<f64> = (0..n)
                    .filter(|&i| labels[i] == g)
                    .map(|i| gpas[i])
                    .collect();
                let (m, v) = moments(&members);
                j += (m - mean).powi(2) + w * (v - var).powi(2);
            }
            best = best.min(j);
        }
        // next label vector, odometer style
        let mut i = 0;
        while i < n {
            labels[i] += 1;
            if labels[i] < k {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

/// Straight-line inertial path of a free particle, seen from the rotating
/// frame: `R(−ω t)·(r0 + v0 t)`, where `r0`, `v0` are the inertial launch
/// position and velocity and the frame starts aligned. Written out with
/// explicit sin/cos rather than the library's rotation helper.
pub fn free_particle_rot(r0: Vec3, v0: Vec3, omega: f64, t: f64) -> Vec3 {
    let x = r0.x + v0.x * t;
    let y = r0.y + v0.y * t;
    let (s, c) = (-omega * t).sin_cos();
    Vec3::new(c * x - s * y, s * x + c * y, 0.0)
}
