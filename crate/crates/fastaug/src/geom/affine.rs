//! Affine warps: arbitrary-angle rotation and the fused
//! shift/scale/rotate, all through one inverse-mapping resample pass.
//!
//! Convention: positive angles rotate counter-clockwise as displayed
//! (y grows downward), about the image center `((W-1)/2, (H-1)/2)`.
//! Pixel `(x, y)` is sampled at real coordinate `(x, y)`; there is no
//! half-pixel offset here (resize uses half-pixel centering, stated
//! explicitly in both places because mixing the two conventions silently
//! is the classic augmentation-library bug).

use crate::bbox::BoundingBox;
use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::image::{ImageBuffer, MaskBuffer};
use crate::sampler::{gather, BorderPolicy, Interpolation, SourcePlane};

/// Boxes whose normalized area falls below this after clipping are
/// dropped. Zero keeps everything with positive extent.
const MIN_BOX_AREA: f64 = 0.0;

/// A 2×3 real matrix mapping coordinates `(x, y)` to
/// `(m0·x + m1·y + m2, m3·x + m4·y + m5)`.
///
/// Warps store the *inverse* map (destination pixel to source
/// coordinate); box propagation uses the forward map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    m: [f64; 6],
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            m: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        }
    }

    pub fn from_coefficients(m: [f64; 6]) -> Self {
        AffineMap { m }
    }

    pub fn coefficients(&self) -> [f64; 6] {
        self.m
    }

    pub fn translation(tx: f64, ty: f64) -> Self {
        AffineMap {
            m: [1.0, 0.0, tx, 0.0, 1.0, ty],
        }
    }

    /// Rotation by `theta_deg` counter-clockwise as displayed, about
    /// `(cx, cy)`.
    pub fn rotation_about(theta_deg: f64, cx: f64, cy: f64) -> Self {
        let (sin, cos) = theta_deg.to_radians().sin_cos();
        AffineMap {
            m: [
                cos,
                sin,
                cx - cos * cx - sin * cy,
                -sin,
                cos,
                cy + sin * cx - cos * cy,
            ],
        }
    }

    /// Uniform scaling about `(cx, cy)`.
    pub fn scale_about(s: f64, cx: f64, cy: f64) -> Self {
        AffineMap {
            m: [s, 0.0, cx - s * cx, 0.0, s, cy - s * cy],
        }
    }

    #[inline]
    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        let m = &self.m;
        (m[0] * x + m[1] * y + m[2], m[3] * x + m[4] * y + m[5])
    }

    /// Compose: the returned map applies `self` first, then `next`.
    pub fn then(&self, next: &AffineMap) -> AffineMap {
        let a = &self.m;
        let b = &next.m;
        AffineMap {
            m: [
                b[0] * a[0] + b[1] * a[3],
                b[0] * a[1] + b[1] * a[4],
                b[0] * a[2] + b[1] * a[5] + b[2],
                b[3] * a[0] + b[4] * a[3],
                b[3] * a[1] + b[4] * a[4],
                b[3] * a[2] + b[4] * a[5] + b[5],
            ],
        }
    }
}

/// Resample an image through an inverse map (destination to source).
pub fn warp_affine_image(
    img: &ImageBuffer,
    inverse: &AffineMap,
    interp: Interpolation,
    border: &BorderPolicy,
) -> ImageBuffer {
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
        |x, y| inverse.apply(x as f64, y as f64),
    );
    ImageBuffer::new(img.width(), img.height(), img.channels(), data)
        .expect("warp preserves shape")
}

/// Resample a mask through an inverse map. Always nearest, filled with
/// `mask_fill` in constant mode.
pub fn warp_affine_mask(
    mask: &MaskBuffer,
    inverse: &AffineMap,
    border: &BorderPolicy,
) -> MaskBuffer {
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
        |x, y| inverse.apply(x as f64, y as f64),
    );
    MaskBuffer::new(mask.width(), mask.height(), data).expect("warp preserves shape")
}

/// Propagate boxes through a forward map: denormalize, map the four
/// corners, take the axis-aligned envelope, clip to the image, and
/// renormalize. Boxes that end up degenerate (or below the area
/// threshold) are dropped.
pub(crate) fn map_boxes_affine(
    boxes: &[BoundingBox],
    forward: &AffineMap,
    width: u32,
    height: u32,
) -> Vec<BoundingBox> {
    let (w, h) = (width as f64, height as f64);
    boxes
        .iter()
        .filter_map(|b| {
            let (x0, y0, x1, y1) = b.denormalize(width, height);
            let corners = [(x0, y0), (x1, y0), (x0, y1), (x1, y1)];
            let mut min_x = f64::INFINITY;
            let mut min_y = f64::INFINITY;
            let mut max_x = f64::NEG_INFINITY;
            let mut max_y = f64::NEG_INFINITY;
            for (cx, cy) in corners {
                let (mx, my) = forward.apply(cx, cy);
                min_x = min_x.min(mx);
                min_y = min_y.min(my);
                max_x = max_x.max(mx);
                max_y = max_y.max(my);
            }
            let min_x = min_x.clamp(0.0, w);
            let max_x = max_x.clamp(0.0, w);
            let min_y = min_y.clamp(0.0, h);
            let max_y = max_y.clamp(0.0, h);
            if max_x <= min_x || max_y <= min_y {
                return None;
            }
            let out = BoundingBox::normalize(min_x, min_y, max_x, max_y, width, height, b.label)?;
            if out.area() < MIN_BOX_AREA {
                return None;
            }
            Some(out)
        })
        .collect()
}

fn validate_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
    }
    Ok(())
}

/// Rotate the bundle by `theta_deg` counter-clockwise as displayed about
/// the image center. Output size equals input size; uncovered pixels
/// follow the border policy.
pub fn rotate(
    b: &SampleBundle,
    theta_deg: f64,
    interp: Interpolation,
    border: &BorderPolicy,
) -> Result<SampleBundle> {
    shift_scale_rotate(b, 0.0, 0.0, 1.0, theta_deg, interp, border)
}

pub fn rotate_image(
    img: &ImageBuffer,
    theta_deg: f64,
    interp: Interpolation,
    border: &BorderPolicy,
) -> Result<ImageBuffer> {
    validate_finite("theta", theta_deg)?;
    let (inverse, _) = ssr_maps(img.width(), img.height(), 0.0, 0.0, 1.0, theta_deg);
    Ok(warp_affine_image(img, &inverse, interp, border))
}

/// Build the (inverse, forward) map pair for a shift/scale/rotate:
/// forward = translate(dx·W, dy·H) ∘ rotate(theta) ∘ scale(s), all about
/// the image center, fused so the image is resampled exactly once.
fn ssr_maps(
    width: u32,
    height: u32,
    dx: f64,
    dy: f64,
    scale: f64,
    theta_deg: f64,
) -> (AffineMap, AffineMap) {
    let cx = (width as f64 - 1.0) / 2.0;
    let cy = (height as f64 - 1.0) / 2.0;
    let tx = dx * width as f64;
    let ty = dy * height as f64;
    let forward = AffineMap::scale_about(scale, cx, cy)
        .then(&AffineMap::rotation_about(theta_deg, cx, cy))
        .then(&AffineMap::translation(tx, ty));
    let inverse = AffineMap::translation(-tx, -ty)
        .then(&AffineMap::rotation_about(-theta_deg, cx, cy))
        .then(&AffineMap::scale_about(1.0 / scale, cx, cy));
    (inverse, forward)
}

fn validate_ssr_params(dx: f64, dy: f64, scale: f64, theta_deg: f64) -> Result<()> {
    validate_finite("dx", dx)?;
    validate_finite("dy", dy)?;
    validate_finite("theta", theta_deg)?;
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scale must be positive, got {scale}"
        )));
    }
    Ok(())
}

/// Translate by `(dx·W, dy·H)`, rotate by `theta_deg` and scale by
/// `scale`, as a single fused affine resampling pass.
pub fn shift_scale_rotate(
    b: &SampleBundle,
    dx: f64,
    dy: f64,
    scale: f64,
    theta_deg: f64,
    interp: Interpolation,
    border: &BorderPolicy,
) -> Result<SampleBundle> {
    validate_ssr_params(dx, dy, scale, theta_deg)?;
    let (inverse, forward) = ssr_maps(b.image.width(), b.image.height(), dx, dy, scale, theta_deg);
    Ok(SampleBundle {
        image: warp_affine_image(&b.image, &inverse, interp, border),
        masks: b
            .masks
            .iter()
            .map(|m| warp_affine_mask(m, &inverse, border))
            .collect(),
        boxes: map_boxes_affine(&b.boxes, &forward, b.image.width(), b.image.height()),
    })
}

pub fn shift_scale_rotate_image(
    img: &ImageBuffer,
    dx: f64,
    dy: f64,
    scale: f64,
    theta_deg: f64,
    interp: Interpolation,
    border: &BorderPolicy,
) -> Result<ImageBuffer> {
    validate_ssr_params(dx, dy, scale, theta_deg)?;
    let (inverse, _) = ssr_maps(img.width(), img.height(), dx, dy, scale, theta_deg);
    Ok(warp_affine_image(img, &inverse, interp, border))
}
