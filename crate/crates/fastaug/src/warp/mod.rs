//! Non-rigid deformations: grid distortion and elastic transform, built
//! on a shared dense remap engine.
//!
//! Free-form warps support images and masks. Bounding boxes are
//! rejected: an axis-aligned envelope has no principled meaning under a
//! non-affine warp, and masks are the supported dense target.

mod elastic;
mod gaussian;
mod grid;

pub use elastic::{elastic_field, elastic_transform, ElasticParams};
pub use gaussian::{gaussian_blur_plane, gaussian_kernel};
pub use grid::{grid_distortion, GridDistortParams};

use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::image::{ImageBuffer, MaskBuffer};
use crate::sampler::{gather, BorderPolicy, Interpolation, SourcePlane};

/// Per-destination-pixel source offsets: the output pixel at `(x, y)`
/// samples the source at `(x + dx[y][x], y + dy[y][x])`.
///
/// A zero field makes [`remap`] the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementField {
    width: u32,
    height: u32,
    dx: Vec<f64>,
    dy: Vec<f64>,
}

impl DisplacementField {
    pub fn new(width: u32, height: u32, dx: Vec<f64>, dy: Vec<f64>) -> Result<Self> {
        let expected = width as usize * height as usize;
        if dx.len() != expected || dy.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "displacement planes must each hold {expected} values, got {} and {}",
                dx.len(),
                dy.len()
            )));
        }
        if dx.iter().chain(dy.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "displacement field must be finite everywhere".into(),
            ));
        }
        Ok(DisplacementField {
            width,
            height,
            dx,
            dy,
        })
    }

    pub fn zero(width: u32, height: u32) -> Self {
        let len = width as usize * height as usize;
        DisplacementField {
            width,
            height,
            dx: vec![0.0; len],
            dy: vec![0.0; len],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dx(&self) -> &[f64] {
        &self.dx
    }

    pub fn dy(&self) -> &[f64] {
        &self.dy
    }

    /// Largest displacement magnitude on either axis.
    pub fn max_abs(&self) -> f64 {
        self.dx
            .iter()
            .chain(self.dy.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

pub fn remap_image(
    img: &ImageBuffer,
    field: &DisplacementField,
    interp: Interpolation,
    border: &BorderPolicy,
) -> Result<ImageBuffer> {
    check_field_dims(field, img.width(), img.height())?;
    let (w, h, c) = (
        img.width() as usize,
        img.height() as usize,
        img.channels() as usize,
    );
    let mut data = vec![0u8; img.data().len()];
    gather(
        SourcePlane {
            data: img.data(),
            width: w,
            height: h,
            channels: c,
        },
        &mut data,
        w,
        h,
        interp,
        border.mode,
        &border.fill[..c],
        |x, y| {
            let i = y * w + x;
            (x as f64 + field.dx[i], y as f64 + field.dy[i])
        },
    );
    ImageBuffer::new(img.width(), img.height(), img.channels(), data)
}

pub fn remap_mask(
    mask: &MaskBuffer,
    field: &DisplacementField,
    border: &BorderPolicy,
) -> Result<MaskBuffer> {
    check_field_dims(field, mask.width(), mask.height())?;
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let mut data = vec![0u8; mask.data().len()];
    gather(
        SourcePlane {
            data: mask.data(),
            width: w,
            height: h,
            channels: 1,
        },
        &mut data,
        w,
        h,
        Interpolation::Nearest,
        border.mode,
        &[border.mask_fill],
        |x, y| {
            let i = y * w + x;
            (x as f64 + field.dx[i], y as f64 + field.dy[i])
        },
    );
    MaskBuffer::new(mask.width(), mask.height(), data)
}

fn check_field_dims(field: &DisplacementField, w: u32, h: u32) -> Result<()> {
    if field.width != w || field.height != h {
        return Err(Error::InvalidParameter(format!(
            "displacement field {}x{} does not match target {w}x{h}",
            field.width, field.height
        )));
    }
    Ok(())
}

/// Gather-sample the bundle through a displacement field. Masks resample
/// nearest; bundles carrying boxes are rejected.
pub fn remap(
    b: &SampleBundle,
    field: &DisplacementField,
    interp: Interpolation,
    border: &BorderPolicy,
) -> Result<SampleBundle> {
    if !b.boxes.is_empty() {
        return Err(Error::UnsupportedTarget(
            "bounding boxes cannot be propagated through a free-form warp; \
             drop them or use masks"
                .into(),
        ));
    }
    Ok(SampleBundle {
        image: remap_image(&b.image, field, interp, border)?,
        masks: b
            .masks
            .iter()
            .map(|m| remap_mask(m, field, border))
            .collect::<Result<_>>()?,
        boxes: Vec::new(),
    })
}
