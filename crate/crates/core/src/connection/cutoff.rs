use std::f64::consts::PI;

use num_complex::Complex64;

use super::root_of_unity;
use crate::error::{Error, Result};

pub const MIN_RESOLUTION: usize = 16;

fn norm(z: &[f64]) -> f64 {
    z.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// z/‖z‖, or e1 when z = 0.
fn direction(z: &[f64]) -> Vec<f64> {
    let r = norm(z);
    if r == 0.0 {
        let mut e = vec![0.0; z.len()];
        if let Some(first) = e.first_mut() {
            *first = 1.0;
        }
        return e;
    }
    z.iter().map(|x| x / r).collect()
}

/// ∫₀¹ ‖Y_√t(z1) − Y_√t(z2)‖ dt with Y_s(z) = z/‖z‖ for ‖z‖ ≥ s and 0 otherwise.
///
/// Complex vectors embed isometrically as real vectors of twice the length.
pub fn cutoff_integral_vector(z1: &[f64], z2: &[f64]) -> f64 {
    assert_eq!(z1.len(), z2.len(), "vectors of different length");
    let (big, small) = if norm(z2) <= norm(z1) { (z1, z2) } else { (z2, z1) };
    let (a, b) = (norm(big).powi(2), norm(small).powi(2));
    let gap: Vec<f64> = direction(big)
        .iter()
        .zip(direction(small))
        .map(|(x, y)| x - y)
        .collect();
    b * norm(&gap) + (a - b)
}

/// Sector index j with arg z ∈ [θ + 2πj/k, θ + 2π(j+1)/k).
fn sector(z: Complex64, theta: f64, k: usize) -> usize {
    let width = 2.0 * PI / k as f64;
    let a = (z.arg() - theta).rem_euclid(2.0 * PI);
    ((a / width) as usize).min(k - 1)
}

/// (1/2π) ∫₀^{2π} ∫₀¹ |Y_{√t,θ}(z1) − Y_{√t,θ}(z2)| dt dθ, where Y_{t,θ}(z) = ξ^j on
/// the j-th sector outside B_t and 0 inside.
///
/// The t-integral is closed per θ; the θ-average uses the composite midpoint
/// rule with `resolution` nodes.
pub fn cutoff_integral_cyclic(z1: Complex64, z2: Complex64, k: usize, resolution: usize) -> Result<f64> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::Config(format!(
            "quadrature resolution {resolution} is below {MIN_RESOLUTION}"
        )));
    }
    if k < 2 {
        return Err(Error::Config(format!("cyclic order {k} is below 2")));
    }
    let (big, small) = if z2.norm() <= z1.norm() { (z1, z2) } else { (z2, z1) };
    let (a, b) = (big.norm_sqr(), small.norm_sqr());
    let h = 2.0 * PI / resolution as f64;
    let mut total = 0.0;
    for i in 0..resolution {
        let theta = (i as f64 + 0.5) * h;
        let jump = if b > 0.0 {
            (root_of_unity(sector(big, theta, k), k) - root_of_unity(sector(small, theta, k), k)).norm()
        } else {
            0.0
        };
        total += b * jump + (a - b);
    }
    Ok(total / resolution as f64)
}

/// Slack granted to the midpoint rule: step 2π/resolution times Lipschitz bound 2.
pub fn cyclic_quadrature_allowance(resolution: usize) -> f64 {
    2.0 * 2.0 * PI / resolution as f64
}
