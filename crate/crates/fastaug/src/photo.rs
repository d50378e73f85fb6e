//! Photometric transforms: brightness, contrast, gamma, RGB shift, HSV
//! shift, grayscale. These change pixel values only, so masks and boxes
//! pass through untouched (the pipeline layer enforces that).
//!
//! Ops whose output depends only on the input sample value run through
//! 256-entry lookup tables.

use crate::error::{Error, Result};
use crate::image::{clip_round, ImageBuffer};

fn map_lut(img: &ImageBuffer, lut: &[u8; 256]) -> ImageBuffer {
    let data = img.data().iter().map(|&v| lut[v as usize]).collect();
    ImageBuffer::new(img.width(), img.height(), img.channels(), data)
        .expect("lut mapping preserves shape")
}

fn require_rgb(img: &ImageBuffer, op: &str) -> Result<()> {
    if img.channels() != 3 {
        return Err(Error::UnsupportedTarget(format!(
            "{op} requires a 3-channel image"
        )));
    }
    Ok(())
}

/// Multiplicative brightness: `out = clip_round(in * beta)`.
pub fn brightness(img: &ImageBuffer, beta: f64) -> Result<ImageBuffer> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "brightness factor must be >= 0, got {beta}"
        )));
    }
    let mut lut = [0u8; 256];
    for (i, out) in lut.iter_mut().enumerate() {
        *out = clip_round(i as f64 * beta);
    }
    Ok(map_lut(img, &lut))
}

/// Contrast about the fixed mid-gray pivot:
/// `out = clip_round(127.5 + (in - 127.5) * c)`.
pub fn contrast(img: &ImageBuffer, c: f64) -> ImageBuffer {
    let mut lut = [0u8; 256];
    for (i, out) in lut.iter_mut().enumerate() {
        *out = clip_round(127.5 + (i as f64 - 127.5) * c);
    }
    map_lut(img, &lut)
}

/// Build the gamma table: `lut[i] = clip_round(255 * (i/255)^g)`.
pub fn gamma_lut(g: f64) -> Result<[u8; 256]> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma exponent must be > 0, got {g}"
        )));
    }
    let mut lut = [0u8; 256];
    for (i, out) in lut.iter_mut().enumerate() {
        *out = clip_round(255.0 * (i as f64 / 255.0).powf(g));
    }
    Ok(lut)
}

/// Gamma curve: `out = clip_round(255 * (in/255)^g)`, via a table built
/// once per call.
pub fn gamma(img: &ImageBuffer, g: f64) -> Result<ImageBuffer> {
    Ok(map_lut(img, &gamma_lut(g)?))
}

/// Per-channel additive shift: `out = clip_round(in + delta)`.
pub fn shift_rgb(img: &ImageBuffer, dr: f64, dg: f64, db: f64) -> Result<ImageBuffer> {
    require_rgb(img, "shift_rgb")?;
    let mut luts = [[0u8; 256]; 3];
    for (lut, delta) in luts.iter_mut().zip([dr, dg, db]) {
        for (i, out) in lut.iter_mut().enumerate() {
            *out = clip_round(i as f64 + delta);
        }
    }
    let data = img
        .data()
        .chunks_exact(3)
        .flat_map(|px| {
            [
                luts[0][px[0] as usize],
                luts[1][px[1] as usize],
                luts[2][px[2] as usize],
            ]
        })
        .collect();
    ImageBuffer::new(img.width(), img.height(), 3, data)
}

/// A pixel in the hexcone HSV model: hue in degrees `[0, 360)`
/// (arithmetic wraps modulo 360), saturation and value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvPixel {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

/// RGB samples to HSV, standard hexcone model.
pub fn rgb_to_hsv(r: u8, g: u8, b: u8) -> HsvPixel {
    let (rf, gf, bf) = (r as f64, g as f64, b as f64);
    let max = rf.max(gf).max(bf);
    let min = rf.min(gf).min(bf);
    let range = max - min;
    let v = max / 255.0;
    if max == 0.0 {
        return HsvPixel { h: 0.0, s: 0.0, v };
    }
    let s = range / max;
    if range == 0.0 {
        return HsvPixel { h: 0.0, s, v };
    }
    let mut h = if max == rf {
        (gf - bf) / range
    } else if max == gf {
        (bf - rf) / range + 2.0
    } else {
        (rf - gf) / range + 4.0
    } * 60.0;
    if h < 0.0 {
        h += 360.0;
    }
    HsvPixel { h, s, v }
}

/// HSV back to RGB via sector decomposition.
pub fn hsv_to_rgb(p: HsvPixel) -> (u8, u8, u8) {
    let h = p.h.rem_euclid(360.0) / 60.0;
    let s = p.s.clamp(0.0, 1.0);
    let v = p.v.clamp(0.0, 1.0);
    let sector = (h.floor() as i64).clamp(0, 5);
    let f = h - sector as f64;
    let p0 = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    let (r, g, b) = match sector {
        0 => (v, t, p0),
        1 => (q, v, p0),
        2 => (p0, v, t),
        3 => (p0, q, v),
        4 => (t, p0, v),
        _ => (v, p0, q),
    };
    (
        clip_round(r * 255.0),
        clip_round(g * 255.0),
        clip_round(b * 255.0),
    )
}

/// Shift hue (wrapping), saturation, and value (both clamped to [0, 1])
/// per pixel.
pub fn shift_hsv(img: &ImageBuffer, dh: f64, ds: f64, dv: f64) -> Result<ImageBuffer> {
    require_rgb(img, "shift_hsv")?;
    let data = img
        .data()
        .chunks_exact(3)
        .flat_map(|px| {
            let hsv = rgb_to_hsv(px[0], px[1], px[2]);
            let shifted = HsvPixel {
                h: (hsv.h + dh).rem_euclid(360.0),
                s: (hsv.s + ds).clamp(0.0, 1.0),
                v: (hsv.v + dv).clamp(0.0, 1.0),
            };
            let (r, g, b) = hsv_to_rgb(shifted);
            [r, g, b]
        })
        .collect();
    ImageBuffer::new(img.width(), img.height(), 3, data)
}

/// BT.601 luma: `y = clip_round(0.299 R + 0.587 G + 0.114 B)`, written
/// to all three channels so pipelines stay shape-stable.
pub fn grayscale(img: &ImageBuffer) -> Result<ImageBuffer> {
    require_rgb(img, "grayscale")?;
    let data = img
        .data()
        .chunks_exact(3)
        .flat_map(|px| {
            let y = clip_round(
                0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64,
            );
            [y, y, y]
        })
        .collect();
    ImageBuffer::new(img.width(), img.height(), 3, data)
}
