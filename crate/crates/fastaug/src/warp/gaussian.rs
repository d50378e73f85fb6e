//! Truncated Gaussian smoothing for displacement planes.

use crate::sampler::reflect101;

/// Normalized 1-D Gaussian kernel truncated at `radius = ceil(3*sigma)`.
/// The kernel is symmetric, nonnegative, and sums to 1.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    assert!(sigma > 0.0, "sigma must be positive");
    let radius = (3.0 * sigma).ceil() as i64;
    let inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    let mut kernel: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) * inv_two_sigma_sq).exp())
        .collect();
    let sum: f64 = kernel.iter().sum();
    for k in &mut kernel {
        *k /= sum;
    }
    kernel
}

/// Separable Gaussian blur of an f64 plane with reflect-101 edges:
/// a horizontal pass followed by a vertical pass.
pub fn gaussian_blur_plane(plane: &[f64], width: usize, height: usize, sigma: f64) -> Vec<f64> {
    assert_eq!(plane.len(), width * height);
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as i64;

    let mut horizontal = vec![0.0f64; plane.len()];
    for y in 0..height {
        let row = &plane[y * width..(y + 1) * width];
        let out_row = &mut horizontal[y * width..(y + 1) * width];
        for (x, slot) in out_row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &kv) in kernel.iter().enumerate() {
                let sx = reflect101(x as i64 + k as i64 - radius, width as i64) as usize;
                acc += kv * row[sx];
            }
            *slot = acc;
        }
    }

    let mut out = vec![0.0f64; plane.len()];
    for y in 0..height {
        let out_row = &mut out[y * width..(y + 1) * width];
        for (x, slot) in out_row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &kv) in kernel.iter().enumerate() {
                let sy = reflect101(y as i64 + k as i64 - radius, height as i64) as usize;
                acc += kv * horizontal[sy * width + x];
            }
            *slot = acc;
        }
    }
    out
}
