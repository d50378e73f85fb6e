//! Axis-aligned bounding boxes.
//!
//! Boxes are stored in normalized coordinates relative to the image they
//! annotate: corners in `[0, 1]` with `x_min < x_max` and
//! `y_min < y_max`. Normalized storage makes resizing a no-op on boxes.

use crate::error::{Error, Result};

/// Normalized axis-aligned box with an opaque class label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub label: u32,
}

impl BoundingBox {
    /// Checked constructor. Boxes with zero extent are invalid.
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64, label: u32) -> Result<Self> {
        let b = BoundingBox {
            x_min,
            y_min,
            x_max,
            y_max,
            label,
        };
        if !b.is_valid() {
            return Err(Error::InvalidParameter(format!(
                "invalid box ({x_min}, {y_min}, {x_max}, {y_max}): \
                 corners must satisfy 0 <= min < max <= 1"
            )));
        }
        Ok(b)
    }

    pub fn is_valid(&self) -> bool {
        self.x_min >= 0.0
            && self.y_min >= 0.0
            && self.x_max <= 1.0
            && self.y_max <= 1.0
            && self.x_min < self.x_max
            && self.y_min < self.y_max
    }

    /// Normalized area.
    pub fn area(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }

    /// Corners in pixel space: `(x_min*w, y_min*h, x_max*w, y_max*h)`.
    pub fn denormalize(&self, width: u32, height: u32) -> (f64, f64, f64, f64) {
        let (w, h) = (width as f64, height as f64);
        (self.x_min * w, self.y_min * h, self.x_max * w, self.y_max * h)
    }

    /// Inverse of [`denormalize`](Self::denormalize): divide pixel-space
    /// corners back by the image size. Returns `None` for degenerate or
    /// out-of-range results, which callers drop.
    pub fn normalize(
        x0: f64,
        y0: f64,
        x1: f64,
        y1: f64,
        width: u32,
        height: u32,
        label: u32,
    ) -> Option<Self> {
        let (w, h) = (width as f64, height as f64);
        Self::new(x0 / w, y0 / h, x1 / w, y1 / h, label).ok()
    }
}
