//! The unit of joint augmentation: one image plus the annotation targets
//! that must stay consistent with it.

use crate::bbox::BoundingBox;
use crate::image::{ImageBuffer, MaskBuffer};
use std::fmt;

/// Image + optional segmentation masks + optional bounding boxes.
///
/// Invariant: every mask has the same height/width as the image, and
/// every transform in this crate preserves that invariant on its output.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBundle {
    pub image: ImageBuffer,
    pub masks: Vec<MaskBuffer>,
    pub boxes: Vec<BoundingBox>,
}

impl SampleBundle {
    pub fn from_image(image: ImageBuffer) -> Self {
        SampleBundle {
            image,
            masks: Vec::new(),
            boxes: Vec::new(),
        }
    }

    pub fn new(image: ImageBuffer, masks: Vec<MaskBuffer>, boxes: Vec<BoundingBox>) -> Self {
        SampleBundle {
            image,
            masks,
            boxes,
        }
    }

    /// Check every bundle invariant and report all violations found.
    /// Validation never aborts; an empty report means the bundle is ok.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        for (index, mask) in self.masks.iter().enumerate() {
            if mask.width() != self.image.width() || mask.height() != self.image.height() {
                report.push(Violation::MaskShapeMismatch {
                    index,
                    mask_width: mask.width(),
                    mask_height: mask.height(),
                    image_width: self.image.width(),
                    image_height: self.image.height(),
                });
            }
        }
        for (index, b) in self.boxes.iter().enumerate() {
            let in_range = b.x_min >= 0.0 && b.y_min >= 0.0 && b.x_max <= 1.0 && b.y_max <= 1.0;
            let positive_extent = b.x_min < b.x_max && b.y_min < b.y_max;
            if !in_range {
                report.push(Violation::BoxOutOfRange { index });
            }
            if !positive_extent {
                report.push(Violation::DegenerateBox { index });
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// One violated [`SampleBundle`] invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MaskShapeMismatch {
        index: usize,
        mask_width: u32,
        mask_height: u32,
        image_width: u32,
        image_height: u32,
    },
    DegenerateBox {
        index: usize,
    },
    BoxOutOfRange {
        index: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MaskShapeMismatch {
                index,
                mask_width,
                mask_height,
                image_width,
                image_height,
            } => write!(
                f,
                "mask shape mismatch: mask {index} is {mask_width}x{mask_height}, \
                 image is {image_width}x{image_height}"
            ),
            Violation::DegenerateBox { index } => write!(f, "degenerate box at index {index}"),
            Violation::BoxOutOfRange { index } => {
                write!(f, "box at index {index} outside [0, 1] range")
            }
        }
    }
}
