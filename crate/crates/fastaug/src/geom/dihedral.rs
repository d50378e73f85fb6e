//! Index-permutation transforms: flips, quarter turns, and the eight
//! symmetries of the square (the dihedral group D4).
//!
//! These never resample: every output pixel is a copy of exactly one
//! input pixel, so they are lossless and bit-exact.

use crate::bbox::BoundingBox;
use crate::bundle::SampleBundle;
use crate::image::{ImageBuffer, MaskBuffer};

/// Mirror columns: `out[y][x] = in[y][W-1-x]`.
pub fn hflip_image(img: &ImageBuffer) -> ImageBuffer {
    let (w, h, c) = (
        img.width() as usize,
        img.height() as usize,
        img.channels() as usize,
    );
    let src = img.data();
    let mut data = vec![0u8; src.len()];
    for y in 0..h {
        let in_row = &src[y * w * c..(y + 1) * w * c];
        let out_row = &mut data[y * w * c..(y + 1) * w * c];
        for x in 0..w {
            let sx = w - 1 - x;
            out_row[x * c..x * c + c].copy_from_slice(&in_row[sx * c..sx * c + c]);
        }
    }
    ImageBuffer::new(img.width(), img.height(), img.channels(), data)
        .expect("shape preserved by hflip")
}

pub fn hflip_mask(mask: &MaskBuffer) -> MaskBuffer {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let src = mask.data();
    let mut data = vec![0u8; src.len()];
    for y in 0..h {
        for x in 0..w {
            data[y * w + x] = src[y * w + (w - 1 - x)];
        }
    }
    MaskBuffer::new(mask.width(), mask.height(), data).expect("shape preserved by hflip")
}

/// Mirror rows: `out[y] = in[H-1-y]`.
pub fn vflip_image(img: &ImageBuffer) -> ImageBuffer {
    let (w, h, c) = (
        img.width() as usize,
        img.height() as usize,
        img.channels() as usize,
    );
    let src = img.data();
    let mut data = vec![0u8; src.len()];
    let stride = w * c;
    for y in 0..h {
        let sy = h - 1 - y;
        data[y * stride..(y + 1) * stride].copy_from_slice(&src[sy * stride..(sy + 1) * stride]);
    }
    ImageBuffer::new(img.width(), img.height(), img.channels(), data)
        .expect("shape preserved by vflip")
}

pub fn vflip_mask(mask: &MaskBuffer) -> MaskBuffer {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let src = mask.data();
    let mut data = vec![0u8; src.len()];
    for y in 0..h {
        let sy = h - 1 - y;
        data[y * w..(y + 1) * w].copy_from_slice(&src[sy * w..(sy + 1) * w]);
    }
    MaskBuffer::new(mask.width(), mask.height(), data).expect("shape preserved by vflip")
}

/// Horizontal flip of the whole bundle. Boxes reflect as
/// `x' = 1 - x` with corners re-sorted; `y` is unchanged.
pub fn hflip(b: &SampleBundle) -> SampleBundle {
    SampleBundle {
        image: hflip_image(&b.image),
        masks: b.masks.iter().map(hflip_mask).collect(),
        boxes: b
            .boxes
            .iter()
            .map(|bx| BoundingBox {
                x_min: 1.0 - bx.x_max,
                x_max: 1.0 - bx.x_min,
                ..*bx
            })
            .collect(),
    }
}

/// Vertical flip of the whole bundle. Boxes reflect as `y' = 1 - y`.
pub fn vflip(b: &SampleBundle) -> SampleBundle {
    SampleBundle {
        image: vflip_image(&b.image),
        masks: b.masks.iter().map(vflip_mask).collect(),
        boxes: b
            .boxes
            .iter()
            .map(|bx| BoundingBox {
                y_min: 1.0 - bx.y_max,
                y_max: 1.0 - bx.y_min,
                ..*bx
            })
            .collect(),
    }
}

/// Quarter-turn a raw row-major plane; returns the rotated data and its
/// new width/height.
fn rot90_plane(src: &[u8], w: usize, h: usize, c: usize, k: u32) -> (Vec<u8>, usize, usize) {
    let k = k % 4;
    let (out_w, out_h) = match k {
        1 | 3 => (h, w),
        _ => (w, h),
    };
    let mut data = vec![0u8; src.len()];
    for y in 0..out_h {
        for x in 0..out_w {
            let (sx, sy) = match k {
                0 => (x, y),
                1 => (w - 1 - y, x),
                2 => (w - 1 - x, h - 1 - y),
                _ => (y, h - 1 - x),
            };
            let src_i = (sy * w + sx) * c;
            let dst_i = (y * out_w + x) * c;
            data[dst_i..dst_i + c].copy_from_slice(&src[src_i..src_i + c]);
        }
    }
    (data, out_w, out_h)
}

/// `k` counter-clockwise-as-displayed quarter turns of the raster.
/// For `k = 1` the output is W×H transposed: `out[y][x] = in[x][W-1-y]`.
pub fn rot90_image(img: &ImageBuffer, k: u32) -> ImageBuffer {
    let (data, out_w, out_h) = rot90_plane(
        img.data(),
        img.width() as usize,
        img.height() as usize,
        img.channels() as usize,
        k,
    );
    ImageBuffer::new(out_w as u32, out_h as u32, img.channels(), data)
        .expect("rot90 preserves sample count")
}

pub fn rot90_mask(mask: &MaskBuffer, k: u32) -> MaskBuffer {
    let (data, out_w, out_h) = rot90_plane(
        mask.data(),
        mask.width() as usize,
        mask.height() as usize,
        1,
        k,
    );
    MaskBuffer::new(out_w as u32, out_h as u32, data).expect("rot90 preserves sample count")
}

fn rot90_box(bx: &BoundingBox, k: u32) -> BoundingBox {
    // Normalized point maps per quarter turn; corners re-sorted after.
    let (x0, y0, x1, y1) = (bx.x_min, bx.y_min, bx.x_max, bx.y_max);
    let (nx0, ny0, nx1, ny1) = match k % 4 {
        0 => (x0, y0, x1, y1),
        1 => (y0, 1.0 - x1, y1, 1.0 - x0), // (x, y) -> (y, 1 - x)
        2 => (1.0 - x1, 1.0 - y1, 1.0 - x0, 1.0 - y0),
        _ => (1.0 - y1, x0, 1.0 - y0, x1), // (x, y) -> (1 - y, x)
    };
    BoundingBox {
        x_min: nx0,
        y_min: ny0,
        x_max: nx1,
        y_max: ny1,
        label: bx.label,
    }
}

/// Quarter-turn the whole bundle `k` times counter-clockwise as displayed.
pub fn rot90(b: &SampleBundle, k: u32) -> SampleBundle {
    SampleBundle {
        image: rot90_image(&b.image, k),
        masks: b.masks.iter().map(|m| rot90_mask(m, k)).collect(),
        boxes: b.boxes.iter().map(|bx| rot90_box(bx, k)).collect(),
    }
}

/// One of the eight symmetries of the square: four rotations and the
/// same four preceded by a horizontal flip of the result
/// (`element = hflip ∘ rot90^k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D4Element {
    Rot0,
    Rot90,
    Rot180,
    Rot270,
    FlipRot0,
    FlipRot90,
    FlipRot180,
    FlipRot270,
}

impl D4Element {
    pub const ALL: [D4Element; 8] = [
        D4Element::Rot0,
        D4Element::Rot90,
        D4Element::Rot180,
        D4Element::Rot270,
        D4Element::FlipRot0,
        D4Element::FlipRot90,
        D4Element::FlipRot180,
        D4Element::FlipRot270,
    ];

    /// Group element by index 0..=7; rotations first, then reflections.
    pub fn from_index(i: u8) -> Option<D4Element> {
        Self::ALL.get(i as usize).copied()
    }

    pub fn index(self) -> u8 {
        Self::ALL.iter().position(|e| *e == self).unwrap() as u8
    }

    fn quarter_turns(self) -> u32 {
        (self.index() % 4) as u32
    }

    fn flipped(self) -> bool {
        self.index() >= 4
    }
}

/// Apply one D4 symmetry. Element 0 is the identity; non-square inputs
/// are allowed and change shape under odd rotations.
pub fn d4(b: &SampleBundle, element: D4Element) -> SampleBundle {
    let rotated = rot90(b, element.quarter_turns());
    if element.flipped() {
        hflip(&rotated)
    } else {
        rotated
    }
}

pub fn d4_image(img: &ImageBuffer, element: D4Element) -> ImageBuffer {
    let rotated = rot90_image(img, element.quarter_turns());
    if element.flipped() {
        hflip_image(&rotated)
    } else {
        rotated
    }
}
