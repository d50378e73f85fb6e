//! Elastic transform: a random per-pixel displacement field smoothed by
//! a Gaussian and scaled by a magnitude `alpha`.
//!
//! The raw field is uniform in [-1, 1] rather than Gaussian noise:
//! smoothing values in [-1, 1] with a sum-1 nonnegative kernel keeps
//! them in range, so every displacement is provably bounded by `alpha`.

use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampler::{BorderPolicy, Interpolation};
use crate::warp::gaussian::gaussian_blur_plane;
use crate::warp::{remap, DisplacementField};

/// Parameters for [`elastic_transform`]. `alpha` (displacement
/// magnitude in pixels) and `sigma` (smoothing std-dev in pixels) have
/// no defaults: pick them for your data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticParams {
    pub alpha: f64,
    pub sigma: f64,
    pub interp: Interpolation,
    pub border: BorderPolicy,
}

impl ElasticParams {
    pub fn new(alpha: f64, sigma: f64) -> Self {
        ElasticParams {
            alpha,
            sigma,
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
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be >= 0, got {}",
                self.alpha
            )));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be > 0, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// Draw and smooth the displacement field.
///
/// Draw order: the full x-offset plane row-major, then the full y-offset
/// plane, each value uniform in [-1, 1]. Both planes are blurred with a
/// truncated Gaussian (radius `ceil(3*sigma)`, separable x then y,
/// reflect-101 edges) and scaled by `alpha`.
pub fn elastic_field(
    width: u32,
    height: u32,
    params: &ElasticParams,
    rng: &mut RngStream,
) -> Result<DisplacementField> {
    params.validate()?;
    let (w, h) = (width as usize, height as usize);
    let len = w * h;
    let raw_u: Vec<f64> = (0..len).map(|_| rng.uniform_range(-1.0, 1.0)).collect();
    let raw_v: Vec<f64> = (0..len).map(|_| rng.uniform_range(-1.0, 1.0)).collect();

    let mut dx = gaussian_blur_plane(&raw_u, w, h, params.sigma);
    let mut dy = gaussian_blur_plane(&raw_v, w, h, params.sigma);
    for v in dx.iter_mut().chain(dy.iter_mut()) {
        *v *= params.alpha;
    }
    DisplacementField::new(width, height, dx, dy)
}

/// Elastically deform the bundle.
pub fn elastic_transform(
    b: &SampleBundle,
    params: &ElasticParams,
    rng: &mut RngStream,
) -> Result<SampleBundle> {
    let field = elastic_field(b.image.width(), b.image.height(), params, rng)?;
    remap(b, &field, params.interp, &params.border)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::ImageBuffer;

    fn random_bundle(seed: u64, w: u32, h: u32) -> SampleBundle {
        let mut rng = RngStream::new(seed);
        let data: Vec<u8> = (0..w as usize * h as usize * 3)
            .map(|_| rng.next_u64() as u8)
            .collect();
        SampleBundle::from_image(ImageBuffer::new(w, h, 3, data).unwrap())
    }

    #[test]
    fn zero_alpha_is_bit_exact_identity() {
        let b = random_bundle(70, 13, 9);
        for interp in [Interpolation::Nearest, Interpolation::Bilinear] {
            let params = ElasticParams::new(0.0, 2.0).with_interp(interp);
            let mut rng = RngStream::new(4);
            assert_eq!(elastic_transform(&b, &params, &mut rng).unwrap(), b);
        }
    }

    #[test]
    fn displacement_is_bounded_by_alpha() {
        for (alpha, sigma) in [(3.0, 0.5), (10.0, 2.0), (0.7, 5.0)] {
            let params = ElasticParams::new(alpha, sigma);
            let mut rng = RngStream::new(8);
            let field = elastic_field(24, 18, &params, &mut rng).unwrap();
            assert!(
                field.max_abs() <= alpha + 1e-12,
                "max displacement {} exceeds alpha {alpha}",
                field.max_abs()
            );
        }
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let b = random_bundle(71, 16, 16);
        let params = ElasticParams::new(4.0, 1.5);
        let mut a = RngStream::new(12);
        let mut c = RngStream::new(12);
        assert_eq!(
            elastic_transform(&b, &params, &mut a).unwrap(),
            elastic_transform(&b, &params, &mut c).unwrap()
        );
    }

    #[test]
    fn draws_one_value_per_pixel_per_plane() {
        let params = ElasticParams::new(1.0, 1.0);
        let mut rng = RngStream::new(5);
        let _ = elastic_field(6, 4, &params, &mut rng).unwrap();
        let mut expect = RngStream::new(5);
        for _ in 0..2 * 6 * 4 {
            expect.uniform_f64();
        }
        assert_eq!(rng.next_u64(), expect.next_u64());
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(ElasticParams::new(-1.0, 1.0).validate().is_err());
        assert!(ElasticParams::new(1.0, 0.0).validate().is_err());
        assert!(ElasticParams::new(1.0, -2.0).validate().is_err());
        assert!(ElasticParams::new(f64::NAN, 1.0).validate().is_err());
    }
}
