//! Geometric transforms with joint propagation to masks and boxes:
//! flips, quarter turns, D4 symmetries, arbitrary rotation,
//! shift/scale/rotate, cropping, padding, and resizing.
//!
//! All ops are pure: the input bundle is never modified, and outputs are
//! fresh buffers. Masks always resample nearest; images honor the
//! requested interpolation.

mod affine;
mod dihedral;
mod scale;
mod window;

pub use affine::{
    rotate, rotate_image, shift_scale_rotate, shift_scale_rotate_image, warp_affine_image,
    warp_affine_mask, AffineMap,
};
pub use dihedral::{
    d4, d4_image, hflip, hflip_image, hflip_mask, rot90, rot90_image, rot90_mask, vflip,
    vflip_image, vflip_mask, D4Element,
};
pub use scale::{random_sized_crop, resize, resize_image, resize_mask};
pub use window::{
    crop, crop_image, crop_mask, pad_to_size, pad_to_size_image, pad_to_size_mask, random_crop,
    random_crop_image,
};
