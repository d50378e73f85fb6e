//! Shared resampling machinery: interpolation kinds, border handling,
//! and the inverse-mapping (gather) engine behind the affine and
//! free-form warps.
//!
//! Gathering computes each output pixel by sampling the source at an
//! inverse-transformed coordinate, so warped outputs never have holes
//! and the inner loop stays branch-light.

use crate::image::clip_round;

/// How to sample between source pixels.
///
/// Masks are always sampled nearest regardless of the image setting, so
/// label planes never blend labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    Nearest,
    Bilinear,
}

/// What to do when a sample coordinate falls outside the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorderMode {
    /// Use a fixed fill value.
    Constant,
    /// Mirror about the edge pixel without repeating it:
    /// index -1 maps to 1, index W maps to W-2.
    Reflect101,
}

/// Border handling for geometric ops: mode plus the fill values used in
/// constant mode (`fill` per image channel, `mask_fill` for label planes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BorderPolicy {
    pub mode: BorderMode,
    pub fill: [u8; 3],
    pub mask_fill: u8,
}

impl Default for BorderPolicy {
    fn default() -> Self {
        BorderPolicy::constant([0, 0, 0])
    }
}

impl BorderPolicy {
    pub fn constant(fill: [u8; 3]) -> Self {
        BorderPolicy {
            mode: BorderMode::Constant,
            fill,
            mask_fill: 0,
        }
    }

    pub fn reflect101() -> Self {
        BorderPolicy {
            mode: BorderMode::Reflect101,
            fill: [0, 0, 0],
            mask_fill: 0,
        }
    }

    pub fn with_mask_fill(mut self, label: u8) -> Self {
        self.mask_fill = label;
        self
    }
}

/// Reflect an index into `[0, n)` about the edge samples (no edge
/// repeat). The reflection has period `2(n-1)`.
#[inline]
pub(crate) fn reflect101(i: i64, n: i64) -> i64 {
    debug_assert!(n >= 1);
    if n == 1 {
        return 0;
    }
    let period = 2 * (n - 1);
    let m = i.rem_euclid(period);
    if m < n {
        m
    } else {
        period - m
    }
}

/// One source plane plus its geometry, as raw row-major samples.
#[derive(Clone, Copy)]
pub(crate) struct SourcePlane<'a> {
    pub data: &'a [u8],
    pub width: usize,
    pub height: usize,
    pub channels: usize,
}

impl<'a> SourcePlane<'a> {
    #[inline]
    fn tap(&self, x: i64, y: i64, c: usize, mode: BorderMode, fill: &[u8]) -> u8 {
        match mode {
            BorderMode::Constant => {
                if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
                    fill[c]
                } else {
                    self.data[(y as usize * self.width + x as usize) * self.channels + c]
                }
            }
            BorderMode::Reflect101 => {
                let xr = reflect101(x, self.width as i64) as usize;
                let yr = reflect101(y, self.height as i64) as usize;
                self.data[(yr * self.width + xr) * self.channels + c]
            }
        }
    }
}

/// Gather-resample `src` into `out` (sized `out_w * out_h * channels`).
/// `map` yields the source coordinate for each destination pixel.
///
/// `fill` must have one entry per channel and is only consulted in
/// constant mode. Nearest rounds half up on both axes.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gather(
    src: SourcePlane,
    out: &mut [u8],
    out_w: usize,
    out_h: usize,
    interp: Interpolation,
    mode: BorderMode,
    fill: &[u8],
    map: impl Fn(usize, usize) -> (f64, f64),
) {
    debug_assert_eq!(out.len(), out_w * out_h * src.channels);
    debug_assert_eq!(fill.len(), src.channels);
    let channels = src.channels;
    match interp {
        Interpolation::Nearest => {
            for y in 0..out_h {
                let row = &mut out[y * out_w * channels..(y + 1) * out_w * channels];
                for x in 0..out_w {
                    let (xs, ys) = map(x, y);
                    let xi = (xs + 0.5).floor() as i64;
                    let yi = (ys + 0.5).floor() as i64;
                    for c in 0..channels {
                        row[x * channels + c] = src.tap(xi, yi, c, mode, fill);
                    }
                }
            }
        }
        Interpolation::Bilinear => {
            for y in 0..out_h {
                let row = &mut out[y * out_w * channels..(y + 1) * out_w * channels];
                for x in 0..out_w {
                    let (xs, ys) = map(x, y);
                    let x0 = xs.floor();
                    let y0 = ys.floor();
                    let fx = xs - x0;
                    let fy = ys - y0;
                    let (x0, y0) = (x0 as i64, y0 as i64);
                    let w00 = (1.0 - fx) * (1.0 - fy);
                    let w10 = fx * (1.0 - fy);
                    let w01 = (1.0 - fx) * fy;
                    let w11 = fx * fy;
                    for c in 0..channels {
                        let v = w00 * src.tap(x0, y0, c, mode, fill) as f64
                            + w10 * src.tap(x0 + 1, y0, c, mode, fill) as f64
                            + w01 * src.tap(x0, y0 + 1, c, mode, fill) as f64
                            + w11 * src.tap(x0 + 1, y0 + 1, c, mode, fill) as f64;
                        row[x * channels + c] = clip_round(v);
                    }
                }
            }
        }
    }
}
