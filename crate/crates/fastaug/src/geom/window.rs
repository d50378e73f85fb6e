//! Window ops: exact sub-window crops, seeded random crops, and
//! center-padding to a target size.

use crate::bbox::BoundingBox;
use crate::bundle::SampleBundle;
use crate::error::{Error, Result};
use crate::image::{ImageBuffer, MaskBuffer};
use crate::rng::RngStream;
use crate::sampler::{reflect101, BorderMode, BorderPolicy};

fn check_window(x0: u32, y0: u32, w: u32, h: u32, img_w: u32, img_h: u32) -> Result<()> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidParameter(format!(
            "crop window must be at least 1x1, got {w}x{h}"
        )));
    }
    // No silent clamping: an out-of-bounds window is a caller bug.
    if x0.checked_add(w).is_none_or(|e| e > img_w) || y0.checked_add(h).is_none_or(|e| e > img_h) {
        return Err(Error::InvalidParameter(format!(
            "crop window ({x0}, {y0}, {w}, {h}) exceeds image {img_w}x{img_h}"
        )));
    }
    Ok(())
}

fn crop_plane(src: &[u8], src_w: usize, c: usize, x0: usize, y0: usize, w: usize, h: usize) -> Vec<u8> {
    let src_stride = src_w * c;
    let dst_stride = w * c;
    let mut data = vec![0u8; h * dst_stride];
    for row in 0..h {
        let src_off = (y0 + row) * src_stride + x0 * c;
        data[row * dst_stride..(row + 1) * dst_stride]
            .copy_from_slice(&src[src_off..src_off + dst_stride]);
    }
    data
}

/// Copy the `w`×`h` sub-window at `(x0, y0)`.
pub fn crop_image(img: &ImageBuffer, x0: u32, y0: u32, w: u32, h: u32) -> Result<ImageBuffer> {
    check_window(x0, y0, w, h, img.width(), img.height())?;
    let data = crop_plane(
        img.data(),
        img.width() as usize,
        img.channels() as usize,
        x0 as usize,
        y0 as usize,
        w as usize,
        h as usize,
    );
    ImageBuffer::new(w, h, img.channels(), data)
}

pub fn crop_mask(mask: &MaskBuffer, x0: u32, y0: u32, w: u32, h: u32) -> Result<MaskBuffer> {
    check_window(x0, y0, w, h, mask.width(), mask.height())?;
    let data = crop_plane(
        mask.data(),
        mask.width() as usize,
        1,
        x0 as usize,
        y0 as usize,
        w as usize,
        h as usize,
    );
    MaskBuffer::new(w, h, data)
}

fn crop_boxes(boxes: &[BoundingBox], x0: u32, y0: u32, w: u32, h: u32, img_w: u32, img_h: u32) -> Vec<BoundingBox> {
    boxes
        .iter()
        .filter_map(|b| {
            let (bx0, by0, bx1, by1) = b.denormalize(img_w, img_h);
            // Intersect with the window in pixel space, then renormalize
            // to the window size. Empty intersections are dropped.
            let lo_x = bx0.max(x0 as f64) - x0 as f64;
            let hi_x = bx1.min((x0 + w) as f64) - x0 as f64;
            let lo_y = by0.max(y0 as f64) - y0 as f64;
            let hi_y = by1.min((y0 + h) as f64) - y0 as f64;
            if hi_x <= lo_x || hi_y <= lo_y {
                return None;
            }
            BoundingBox::normalize(lo_x, lo_y, hi_x, hi_y, w, h, b.label)
        })
        .collect()
}

/// Crop the whole bundle to the window. Boxes are intersected with the
/// window and renormalized to the new frame.
pub fn crop(b: &SampleBundle, x0: u32, y0: u32, w: u32, h: u32) -> Result<SampleBundle> {
    Ok(SampleBundle {
        image: crop_image(&b.image, x0, y0, w, h)?,
        masks: b
            .masks
            .iter()
            .map(|m| crop_mask(m, x0, y0, w, h))
            .collect::<Result<_>>()?,
        boxes: crop_boxes(&b.boxes, x0, y0, w, h, b.image.width(), b.image.height()),
    })
}

/// Draw a uniform window position and crop. Exactly two draws, x then y,
/// even when only one placement exists.
pub fn random_crop(b: &SampleBundle, w: u32, h: u32, rng: &mut RngStream) -> Result<SampleBundle> {
    let (x0, y0) = random_crop_offsets(b.image.width(), b.image.height(), w, h, rng)?;
    crop(b, x0, y0, w, h)
}

pub fn random_crop_image(
    img: &ImageBuffer,
    w: u32,
    h: u32,
    rng: &mut RngStream,
) -> Result<ImageBuffer> {
    let (x0, y0) = random_crop_offsets(img.width(), img.height(), w, h, rng)?;
    crop_image(img, x0, y0, w, h)
}

fn random_crop_offsets(
    img_w: u32,
    img_h: u32,
    w: u32,
    h: u32,
    rng: &mut RngStream,
) -> Result<(u32, u32)> {
    if w == 0 || h == 0 || w > img_w || h > img_h {
        return Err(Error::InvalidParameter(format!(
            "random crop window {w}x{h} does not fit in image {img_w}x{img_h}"
        )));
    }
    let x0 = rng.uniform_int((img_w - w + 1) as u64) as u32;
    let y0 = rng.uniform_int((img_h - h + 1) as u64) as u32;
    Ok((x0, y0))
}

fn pad_offsets(in_w: u32, in_h: u32, target_w: u32, target_h: u32) -> Result<(u32, u32)> {
    if in_w > target_w || in_h > target_h {
        return Err(Error::InvalidParameter(format!(
            "input {in_w}x{in_h} exceeds pad target {target_w}x{target_h}"
        )));
    }
    Ok(((target_w - in_w) / 2, (target_h - in_h) / 2))
}

#[allow(clippy::too_many_arguments)]
fn pad_plane(
    src: &[u8],
    in_w: usize,
    in_h: usize,
    channels: usize,
    target_w: usize,
    target_h: usize,
    left: usize,
    top: usize,
    mode: BorderMode,
    fill: &[u8],
) -> Vec<u8> {
    let mut data = vec![0u8; target_w * target_h * channels];
    match mode {
        BorderMode::Constant => {
            if fill.iter().all(|&f| f == fill[0]) {
                data.fill(fill[0]);
            } else {
                for px in data.chunks_exact_mut(channels) {
                    px.copy_from_slice(fill);
                }
            }
            let src_stride = in_w * channels;
            let dst_stride = target_w * channels;
            for row in 0..in_h {
                let dst_off = (top + row) * dst_stride + left * channels;
                data[dst_off..dst_off + src_stride]
                    .copy_from_slice(&src[row * src_stride..(row + 1) * src_stride]);
            }
        }
        BorderMode::Reflect101 => {
            for y in 0..target_h {
                let sy = reflect101(y as i64 - top as i64, in_h as i64) as usize;
                for x in 0..target_w {
                    let sx = reflect101(x as i64 - left as i64, in_w as i64) as usize;
                    let src_i = (sy * in_w + sx) * channels;
                    let dst_i = (y * target_w + x) * channels;
                    data[dst_i..dst_i + channels].copy_from_slice(&src[src_i..src_i + channels]);
                }
            }
        }
    }
    data
}

pub fn pad_to_size_image(
    img: &ImageBuffer,
    target_w: u32,
    target_h: u32,
    border: &BorderPolicy,
) -> Result<ImageBuffer> {
    let (left, top) = pad_offsets(img.width(), img.height(), target_w, target_h)?;
    let c = img.channels() as usize;
    let data = pad_plane(
        img.data(),
        img.width() as usize,
        img.height() as usize,
        c,
        target_w as usize,
        target_h as usize,
        left as usize,
        top as usize,
        border.mode,
        &border.fill[..c],
    );
    ImageBuffer::new(target_w, target_h, img.channels(), data)
}

pub fn pad_to_size_mask(
    mask: &MaskBuffer,
    target_w: u32,
    target_h: u32,
    border: &BorderPolicy,
) -> Result<MaskBuffer> {
    let (left, top) = pad_offsets(mask.width(), mask.height(), target_w, target_h)?;
    let data = pad_plane(
        mask.data(),
        mask.width() as usize,
        mask.height() as usize,
        1,
        target_w as usize,
        target_h as usize,
        left as usize,
        top as usize,
        border.mode,
        &[border.mask_fill],
    );
    MaskBuffer::new(target_w, target_h, data)
}

/// Center the content inside a `target_w`×`target_h` canvas:
/// `left = floor((target_w - W) / 2)`, `top = floor((target_h - H) / 2)`.
/// Padding follows the border policy; boxes shift by the offsets and are
/// renormalized to the target size.
pub fn pad_to_size(
    b: &SampleBundle,
    target_w: u32,
    target_h: u32,
    border: &BorderPolicy,
) -> Result<SampleBundle> {
    let (in_w, in_h) = (b.image.width(), b.image.height());
    let (left, top) = pad_offsets(in_w, in_h, target_w, target_h)?;
    let boxes = b
        .boxes
        .iter()
        .filter_map(|bx| {
            let (x0, y0, x1, y1) = bx.denormalize(in_w, in_h);
            BoundingBox::normalize(
                x0 + left as f64,
                y0 + top as f64,
                x1 + left as f64,
                y1 + top as f64,
                target_w,
                target_h,
                bx.label,
            )
        })
        .collect();
    Ok(SampleBundle {
        image: pad_to_size_image(&b.image, target_w, target_h, border)?,
        masks: b
            .masks
            .iter()
            .map(|m| pad_to_size_mask(m, target_w, target_h, border))
            .collect::<Result<_>>()?,
        boxes,
    })
}
