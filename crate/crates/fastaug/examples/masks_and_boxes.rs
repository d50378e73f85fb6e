//! Joint augmentation: one transform call moves the image, its
//! segmentation masks, and its bounding boxes consistently.
//!
//! ```bash
//! cargo run --example masks_and_boxes
//! ```

use fastaug::geom::{crop, hflip, rotate};
use fastaug::{
    BorderPolicy, BoundingBox, ImageBuffer, Interpolation, MaskBuffer, SampleBundle,
};

fn show_boxes(b: &SampleBundle, label: &str) {
    println!("{label}:");
    if b.boxes.is_empty() {
        println!("  (no boxes survived)");
    }
    for bx in &b.boxes {
        println!(
            "  label {}: x [{:.3}, {:.3}]  y [{:.3}, {:.3}]",
            bx.label, bx.x_min, bx.x_max, bx.y_min, bx.y_max
        );
    }
}

fn main() -> fastaug::Result<()> {
    // A 100x80 scene: object 1 is a block at top-left, object 2 a block
    // at bottom-right. The mask labels each block; boxes outline them.
    let (w, h) = (100u32, 80u32);
    let mut image = ImageBuffer::filled(w, h, 3, 20).unwrap();
    let mut mask = MaskBuffer::filled(w, h, 0).unwrap();
    for y in 8..32 {
        for x in 10..40 {
            image.set(x, y, 0, 200);
            mask.set(x, y, 1);
        }
    }
    for y in 48..72 {
        for x in 60..90 {
            image.set(x, y, 2, 200);
            mask.set(x, y, 2);
        }
    }
    let bundle = SampleBundle::new(
        image,
        vec![mask],
        vec![
            BoundingBox::new(0.10, 0.10, 0.40, 0.40, 1).unwrap(),
            BoundingBox::new(0.60, 0.60, 0.90, 0.90, 2).unwrap(),
        ],
    );
    assert!(bundle.is_valid());
    show_boxes(&bundle, "original");

    let flipped = hflip(&bundle);
    show_boxes(&flipped, "after hflip (x mirrored)");

    // Crop to the left half: object 2 falls outside and is dropped;
    // object 1 is renormalized to the new frame.
    let left_half = crop(&bundle, 0, 0, 50, 80)?;
    show_boxes(&left_half, "after crop to left half");
    assert_eq!(left_half.boxes.len(), 1);

    // Rotation grows boxes to the axis-aligned envelope of the mapped
    // corners (an information-preserving over-approximation).
    let turned = rotate(
        &bundle,
        25.0,
        Interpolation::Nearest,
        &BorderPolicy::default(),
    )?;
    show_boxes(&turned, "after rotate 25 degrees (corner envelopes)");

    // The mask moved with the image: label 1 pixels still sit where
    // channel 0 is bright.
    let m = &turned.masks[0];
    let img = &turned.image;
    let mut agree = 0usize;
    let mut labeled = 0usize;
    for y in 0..h {
        for x in 0..w {
            if m.get(x, y) == 1 {
                labeled += 1;
                if img.get(x, y, 0) == 200 {
                    agree += 1;
                }
            }
        }
    }
    println!("mask/image agreement after rotation: {agree}/{labeled}");
    assert_eq!(agree, labeled, "nearest sampling keeps mask and image aligned");
    assert!(turned.is_valid());
    Ok(())
}
