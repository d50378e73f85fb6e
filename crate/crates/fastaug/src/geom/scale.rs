//! Resizing and the random sized crop built on top of it.
//!
//! Resize uses half-pixel-centered inverse mapping:
//! `x_s = (x_d + 0.5) * W / new_w - 0.5`, with taps clamped to the
//! source edges (no border fill can appear in a resize).

use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::image::{clip_round, ImageBuffer, MaskBuffer};
use crate::rng::RngStream;
use crate::sampler::Interpolation;

/// Per-axis source positions for every destination index.
fn axis_coords(src_len: u32, dst_len: u32) -> Vec<f64> {
    let ratio = src_len as f64 / dst_len as f64;
    (0..dst_len)
        .map(|d| (d as f64 + 0.5) * ratio - 0.5)
        .collect()
}

fn nearest_indices(src_len: u32, dst_len: u32) -> Vec<usize> {
    axis_coords(src_len, dst_len)
        .into_iter()
        .map(|s| ((s + 0.5).floor().max(0.0) as usize).min(src_len as usize - 1))
        .collect()
}

/// (low tap, high tap, high-tap weight) per destination index.
fn bilinear_taps(src_len: u32, dst_len: u32) -> Vec<(usize, usize, f64)> {
    let last = src_len as i64 - 1;
    axis_coords(src_len, dst_len)
        .into_iter()
        .map(|s| {
            let x0 = s.floor();
            let f = s - x0;
            let lo = (x0 as i64).clamp(0, last) as usize;
            let hi = (x0 as i64 + 1).clamp(0, last) as usize;
            (lo, hi, f)
        })
        .collect()
}

fn resize_plane(
    src: &[u8],
    src_w: u32,
    src_h: u32,
    channels: usize,
    new_w: u32,
    new_h: u32,
    interp: Interpolation,
) -> Vec<u8> {
    let sw = src_w as usize;
    let mut data = vec![0u8; new_w as usize * new_h as usize * channels];
    match interp {
        Interpolation::Nearest => {
            let xs = nearest_indices(src_w, new_w);
            let ys = nearest_indices(src_h, new_h);
            let dst_stride = new_w as usize * channels;
            for (y, &sy) in ys.iter().enumerate() {
                let src_row = &src[sy * sw * channels..(sy + 1) * sw * channels];
                let dst_row = &mut data[y * dst_stride..(y + 1) * dst_stride];
                for (x, &sx) in xs.iter().enumerate() {
                    dst_row[x * channels..x * channels + channels]
                        .copy_from_slice(&src_row[sx * channels..sx * channels + channels]);
                }
            }
        }
        Interpolation::Bilinear => {
            let xs = bilinear_taps(src_w, new_w);
            let ys = bilinear_taps(src_h, new_h);
            let dst_stride = new_w as usize * channels;
            for (y, &(y0, y1, fy)) in ys.iter().enumerate() {
                let row0 = &src[y0 * sw * channels..(y0 + 1) * sw * channels];
                let row1 = &src[y1 * sw * channels..(y1 + 1) * sw * channels];
                let dst_row = &mut data[y * dst_stride..(y + 1) * dst_stride];
                for (x, &(x0, x1, fx)) in xs.iter().enumerate() {
                    for c in 0..channels {
                        let v00 = row0[x0 * channels + c] as f64;
                        let v10 = row0[x1 * channels + c] as f64;
                        let v01 = row1[x0 * channels + c] as f64;
                        let v11 = row1[x1 * channels + c] as f64;
                        let top = v00 + fx * (v10 - v00);
                        let bottom = v01 + fx * (v11 - v01);
                        dst_row[x * channels + c] = clip_round(top + fy * (bottom - top));
                    }
                }
            }
        }
    }
    data
}

pub fn resize_image(
    img: &ImageBuffer,
    new_w: u32,
    new_h: u32,
    interp: Interpolation,
) -> Result<ImageBuffer> {
    if new_w == 0 || new_h == 0 {
        return Err(Error::InvalidParameter(format!(
            "resize target must be at least 1x1, got {new_w}x{new_h}"
        )));
    }
    let data = resize_plane(
        img.data(),
        img.width(),
        img.height(),
        img.channels() as usize,
        new_w,
        new_h,
        interp,
    );
    ImageBuffer::new(new_w, new_h, img.channels(), data)
}

/// Masks resize with nearest sampling regardless of the image setting.
pub fn resize_mask(mask: &MaskBuffer, new_w: u32, new_h: u32) -> Result<MaskBuffer> {
    if new_w == 0 || new_h == 0 {
        return Err(Error::InvalidParameter(format!(
            "resize target must be at least 1x1, got {new_w}x{new_h}"
        )));
    }
    let data = resize_plane(
        mask.data(),
        mask.width(),
        mask.height(),
        1,
        new_w,
        new_h,
        Interpolation::Nearest,
    );
    MaskBuffer::new(new_w, new_h, data)
}

/// Resize the bundle. Boxes are stored normalized, so they pass through
/// unchanged.
pub fn resize(
    b: &SampleBundle,
    new_w: u32,
    new_h: u32,
    interp: Interpolation,
) -> Result<SampleBundle> {
    Ok(SampleBundle {
        image: resize_image(&b.image, new_w, new_h, interp)?,
        masks: b
            .masks
            .iter()
            .map(|m| resize_mask(m, new_w, new_h))
            .collect::<Result<_>>()?,
        boxes: b.boxes.clone(),
    })
}

/// Crop a random square whose area fraction is uniform in
/// `[min_scale, max_scale]`, then resize to `out_w`×`out_h`.
///
/// Draw order is fixed: area fraction, then crop x, then crop y.
pub fn random_sized_crop(
    b: &SampleBundle,
    min_scale: f64,
    max_scale: f64,
    out_w: u32,
    out_h: u32,
    interp: Interpolation,
    rng: &mut RngStream,
) -> Result<SampleBundle> {
    if !(min_scale > 0.0 && min_scale <= max_scale && max_scale <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "scale range ({min_scale}, {max_scale}) must satisfy 0 < min <= max <= 1"
        )));
    }
    let s = rng.uniform_range(min_scale, max_scale);
    let short_side = b.image.width().min(b.image.height()) as f64;
    let side = ((s.sqrt() * short_side + 0.5).floor() as u32).max(1);
    let cropped = super::window::random_crop(b, side, side, rng)?;
    resize(&cropped, out_w, out_h, interp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbox::BoundingBox;
    use crate::rng::RngStream;

    fn random_image(rng: &mut RngStream, w: u32, h: u32, c: u8) -> ImageBuffer {
        let data: Vec<u8> = (0..w as usize * h as usize * c as usize)
            .map(|_| rng.next_u64() as u8)
            .collect();
        ImageBuffer::new(w, h, c, data).unwrap()
    }

    #[test]
    fn same_size_resize_is_bit_exact() {
        let mut rng = RngStream::new(30);
        let img = random_image(&mut rng, 7, 5, 3);
        for interp in [Interpolation::Nearest, Interpolation::Bilinear] {
            assert_eq!(resize_image(&img, 7, 5, interp).unwrap(), img);
        }
    }

    #[test]
    fn shrink_two_by_two_to_one_picks_index_one() {
        // x_s = (0 + 0.5) * 2 - 0.5 = 0.5, which rounds half-up to 1.
        let img = ImageBuffer::new(2, 2, 1, vec![10, 20, 30, 40]).unwrap();
        let out = resize_image(&img, 1, 1, Interpolation::Nearest).unwrap();
        assert_eq!(out.data(), &[40]);
    }

    #[test]
    fn boxes_are_invariant_under_resize() {
        let boxes = vec![BoundingBox::new(0.12, 0.3, 0.77, 0.9, 2).unwrap()];
        let b = SampleBundle::new(ImageBuffer::filled(8, 6, 3, 0).unwrap(), vec![], boxes.clone());
        for (w, h) in [(16, 12), (3, 3), (8, 6)] {
            let out = resize(&b, w, h, Interpolation::Bilinear).unwrap();
            assert_eq!(out.boxes, boxes);
        }
    }

    #[test]
    fn zero_target_is_rejected() {
        let img = ImageBuffer::filled(4, 4, 1, 0).unwrap();
        assert!(resize_image(&img, 0, 4, Interpolation::Nearest).is_err());
    }

    #[test]
    fn unit_scale_range_on_a_square_reduces_to_resize() {
        let mut rng_img = RngStream::new(31);
        let b = SampleBundle::from_image(random_image(&mut rng_img, 12, 12, 3));
        let mut rng = RngStream::new(9);
        let out =
            random_sized_crop(&b, 1.0, 1.0, 6, 6, Interpolation::Nearest, &mut rng).unwrap();
        assert_eq!(out, resize(&b, 6, 6, Interpolation::Nearest).unwrap());
    }

    #[test]
    fn random_sized_crop_is_deterministic_per_seed() {
        let mut rng_img = RngStream::new(32);
        let b = SampleBundle::from_image(random_image(&mut rng_img, 20, 14, 3));
        let mut a = RngStream::new(5);
        let mut c = RngStream::new(5);
        assert_eq!(
            random_sized_crop(&b, 0.3, 0.9, 8, 8, Interpolation::Bilinear, &mut a).unwrap(),
            random_sized_crop(&b, 0.3, 0.9, 8, 8, Interpolation::Bilinear, &mut c).unwrap()
        );
    }

    #[test]
    fn output_dims_always_match_the_request() {
        let mut rng = RngStream::new(33);
        for case in 0..1000 {
            let w = 4 + rng.uniform_int(30) as u32;
            let h = 4 + rng.uniform_int(30) as u32;
            let b = SampleBundle::from_image(random_image(&mut rng, w, h, 3));
            let mut seed_rng = RngStream::new(case);
            let out = random_sized_crop(
                &b,
                0.1,
                1.0,
                10,
                7,
                Interpolation::Nearest,
                &mut seed_rng,
            )
            .unwrap();
            assert_eq!((out.image.width(), out.image.height()), (10, 7));
        }
    }

    #[test]
    fn invalid_scale_range_is_rejected() {
        let b = SampleBundle::from_image(ImageBuffer::filled(8, 8, 3, 0).unwrap());
        let mut rng = RngStream::new(0);
        for (lo, hi) in [(0.0, 0.5), (0.6, 0.5), (0.2, 1.5)] {
            assert!(
                random_sized_crop(&b, lo, hi, 4, 4, Interpolation::Nearest, &mut rng).is_err()
            );
        }
    }
}
