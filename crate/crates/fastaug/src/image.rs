//! Pixel containers.
//!
//! Coordinate convention used everywhere in this crate: `x` is the column
//! index in `[0, width)`, `y` is the row index in `[0, height)`, the
//! origin is the top-left corner and `y` grows downward. Samples are
//! 8-bit, stored row-major; 3-channel data is interleaved RGB.

use crate::error::{Error, Result};
use std::fmt;

/// Clamp a real value into the 8-bit sample range, rounding half up.
///
/// `v` must be finite.
pub fn clip_round(v: f64) -> u8 {
    let r = (v + 0.5).floor();
    if r <= 0.0 {
        0
    } else if r >= 255.0 {
        255
    } else {
        r as u8
    }
}

/// An H×W×C image of 8-bit samples, C ∈ {1, 3}.
#[derive(Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    channels: u8,
    data: Vec<u8>,
}

impl ImageBuffer {
    /// Wrap raw row-major samples. `data.len()` must equal
    /// `height * width * channels` and `channels` must be 1 or 3.
    pub fn new(width: u32, height: u32, channels: u8, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "image dimensions must be >= 1, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidParameter(format!(
                "channels must be 1 or 3, got {channels}"
            )));
        }
        let expected = width as usize * height as usize * channels as usize;
        if data.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "data length {} does not match {width}x{height}x{channels} = {expected}",
                data.len()
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            channels,
            data,
        })
    }

    /// Uniform image of one sample value.
    pub fn filled(width: u32, height: u32, channels: u8, value: u8) -> Result<Self> {
        let len = width as usize * height as usize * channels as usize;
        Self::new(width, height, channels, vec![value; len])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Mutable access to the samples. Shape is fixed at construction, so
    /// only values can change.
    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub(crate) fn index(&self, x: u32, y: u32, c: u8) -> usize {
        (y as usize * self.width as usize + x as usize) * self.channels as usize + c as usize
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32, c: u8) -> u8 {
        self.data[self.index(x, y, c)]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, c: u8, v: u8) {
        let i = self.index(x, y, c);
        self.data[i] = v;
    }

    /// View a 1-channel image as a mask plane (same data, label semantics).
    pub fn to_mask(&self) -> Result<MaskBuffer> {
        if self.channels != 1 {
            return Err(Error::UnsupportedTarget(
                "only 1-channel images convert to masks".into(),
            ));
        }
        MaskBuffer::new(self.width, self.height, self.data.clone())
    }
}

impl fmt::Debug for ImageBuffer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ImageBuffer({}x{}x{}, {} bytes)",
            self.width,
            self.height,
            self.channels,
            self.data.len()
        )
    }
}

/// An H×W plane of 8-bit integer labels, geometrically co-transformed
/// with its image using nearest-neighbor sampling only.
#[derive(Clone, PartialEq, Eq)]
pub struct MaskBuffer {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl MaskBuffer {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "mask dimensions must be >= 1, got {width}x{height}"
            )));
        }
        let expected = width as usize * height as usize;
        if data.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "mask data length {} does not match {width}x{height} = {expected}",
                data.len()
            )));
        }
        Ok(MaskBuffer {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: u32, height: u32, label: u8) -> Result<Self> {
        let len = width as usize * height as usize;
        Self::new(width, height, vec![label; len])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.data[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, v: u8) {
        self.data[y as usize * self.width as usize + x as usize] = v;
    }

    /// View as a 1-channel image, e.g. for encoding to PGM.
    pub fn to_image(&self) -> ImageBuffer {
        ImageBuffer::new(self.width, self.height, 1, self.data.clone())
            .expect("mask shape is always a valid image shape")
    }
}

impl fmt::Debug for MaskBuffer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MaskBuffer({}x{})", self.width, self.height)
    }
}
