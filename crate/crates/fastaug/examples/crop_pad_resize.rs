//! Window and scale ops: crop, seeded random crop, center padding,
//! resize, and random sized crop.
//!
//! ```bash
//! cargo run --example crop_pad_resize
//! ```

use fastaug::geom::{crop, pad_to_size, random_crop, random_sized_crop, resize};
use fastaug::{BorderPolicy, ImageBuffer, Interpolation, RngStream, SampleBundle};

fn gradient(w: u32, h: u32) -> ImageBuffer {
    let mut img = ImageBuffer::filled(w, h, 3, 0).unwrap();
    for y in 0..h {
        for x in 0..w {
            img.set(x, y, 0, (x * 255 / w.max(1)) as u8);
            img.set(x, y, 1, (y * 255 / h.max(1)) as u8);
            img.set(x, y, 2, 128);
        }
    }
    img
}

fn dims(b: &SampleBundle) -> String {
    format!("{}x{}", b.image.width(), b.image.height())
}

fn main() -> fastaug::Result<()> {
    let bundle = SampleBundle::from_image(gradient(96, 64));
    println!("input: {}", dims(&bundle));

    let window = crop(&bundle, 16, 8, 48, 40)?;
    println!("crop(16, 8, 48, 40) -> {}", dims(&window));

    // Seeded random crops replay exactly.
    let mut rng_a = RngStream::new(2024);
    let mut rng_b = RngStream::new(2024);
    let crop_a = random_crop(&bundle, 32, 32, &mut rng_a)?;
    let crop_b = random_crop(&bundle, 32, 32, &mut rng_b)?;
    assert_eq!(crop_a, crop_b);
    println!("random_crop(32x32, seed 2024) is reproducible -> {}", dims(&crop_a));

    let padded = pad_to_size(&bundle, 128, 128, &BorderPolicy::constant([0, 0, 0]))?;
    println!("pad_to_size(128x128) -> {} (content centered)", dims(&padded));

    let small = resize(&bundle, 48, 32, Interpolation::Bilinear)?;
    let big = resize(&small, 96, 64, Interpolation::Nearest)?;
    println!("resize down then up -> {} then {}", dims(&small), dims(&big));

    let mut rng = RngStream::new(7);
    let rsc = random_sized_crop(&bundle, 0.3, 0.9, 50, 50, Interpolation::Bilinear, &mut rng)?;
    println!("random_sized_crop(area 30-90%, out 50x50) -> {}", dims(&rsc));

    // Out-of-bounds windows are rejected, never clamped.
    let err = crop(&bundle, 90, 0, 10, 10).unwrap_err();
    println!("oversized window rejected: {err}");
    Ok(())
}
