//! Grid distortion: a warp built from a perturbed monotone grid of axis
//! step sizes.
//!
//! Each axis is divided into `num_steps + 1` segments of equal
//! destination length. Per segment, a step factor `1 + uniform(-d, d)`
//! is drawn and the perturbed step lengths are rescaled so they sum
//! back to the full span, which pins both endpoints and guarantees the
//! piecewise-linear axis mapping is strictly monotone (no fold-over)
//! for any `d < 1`. Sample positions span `[0, len-1]`, so source
//! coordinates never leave the image.

use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampler::{BorderPolicy, Interpolation};
use crate::warp::{remap, DisplacementField};

/// Parameters for [`grid_distortion`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDistortParams {
    /// Cell count per axis (>= 1).
    pub num_steps: u32,
    /// Relative step perturbation, in [0, 1).
    pub distort_limit: f64,
    pub interp: Interpolation,
    pub border: BorderPolicy,
}

impl GridDistortParams {
    pub fn new(num_steps: u32, distort_limit: f64) -> Self {
        GridDistortParams {
            num_steps,
            distort_limit,
            interp: Interpolation::Bilinear,
            border: BorderPolicy::default(),
        }
    }

    pub fn with_interp(mut self, interp: Interpolation) -> Self {
        self.interp = interp;
        self
    }

    pub fn with_border(mut self, border: BorderPolicy) -> Self {
        self.border = border;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_steps < 1 {
            return Err(Error::InvalidParameter(
                "grid distortion needs at least one step per axis".into(),
            ));
        }
        if !(self.distort_limit.is_finite()
            && (0.0..1.0).contains(&self.distort_limit))
        {
            return Err(Error::InvalidParameter(format!(
                "distort_limit {} outside [0, 1)",
                self.distort_limit
            )));
        }
        Ok(())
    }
}

/// Monotone piecewise-linear source position for each integer
/// destination position in `[0, len)`.
fn axis_map(len: u32, factors: &[f64]) -> Vec<f64> {
    let n = factors.len();
    let span = (len - 1) as f64;
    if len == 1 || span == 0.0 {
        return vec![0.0; len as usize];
    }
    // Cumulative factor sums; rescaling by the total preserves the span.
    let mut cumulative = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    cumulative.push(0.0);
    for &f in factors {
        acc += f;
        cumulative.push(acc);
    }
    let total = acc;
    let nodes_dst: Vec<f64> = (0..=n).map(|i| span * i as f64 / n as f64).collect();
    let nodes_src: Vec<f64> = cumulative.iter().map(|&c| span * c / total).collect();

    (0..len)
        .map(|x| {
            let x = x as f64;
            let seg = (((x * n as f64) / span).floor() as usize).min(n - 1);
            let ratio = (nodes_src[seg + 1] - nodes_src[seg]) / (nodes_dst[seg + 1] - nodes_dst[seg]);
            nodes_src[seg] + (x - nodes_dst[seg]) * ratio
        })
        .collect()
}

/// Draw the step factors and build the separable displacement field.
/// Draw order: `num_steps + 1` x factors, then `num_steps + 1` y factors.
pub fn grid_distortion_field(
    width: u32,
    height: u32,
    params: &GridDistortParams,
    rng: &mut RngStream,
) -> Result<DisplacementField> {
    params.validate()?;
    let d = params.distort_limit;
    let n = params.num_steps as usize + 1;
    let x_factors: Vec<f64> = (0..n).map(|_| 1.0 + rng.uniform_range(-d, d)).collect();
    let y_factors: Vec<f64> = (0..n).map(|_| 1.0 + rng.uniform_range(-d, d)).collect();

    let src_x = axis_map(width, &x_factors);
    let src_y = axis_map(height, &y_factors);

    let (w, h) = (width as usize, height as usize);
    let mut dx = vec![0.0f64; w * h];
    let mut dy = vec![0.0f64; w * h];
    for (y, sy) in src_y.iter().enumerate() {
        let row = y * w;
        for (x, sx) in src_x.iter().enumerate() {
            dx[row + x] = sx - x as f64;
            dy[row + x] = sy - y as f64;
        }
    }
    DisplacementField::new(width, height, dx, dy)
}

/// Distort the bundle over a perturbed monotone grid.
pub fn grid_distortion(
    b: &SampleBundle,
    params: &GridDistortParams,
    rng: &mut RngStream,
) -> Result<SampleBundle> {
    let field = grid_distortion_field(b.image.width(), b.image.height(), params, rng)?;
    remap(b, &field, params.interp, &params.border)
}
