//! Photometric ops: brightness, contrast, gamma, RGB shift, HSV shift,
//! grayscale. Pixel values only; geometry is untouched.
//!
//! ```bash
//! cargo run --example photometric
//! ```

use fastaug::photo::{
    brightness, contrast, gamma, grayscale, hsv_to_rgb, rgb_to_hsv, shift_hsv, shift_rgb,
};
use fastaug::ImageBuffer;

fn probe(img: &ImageBuffer, label: &str) {
    let px = |x: u32| {
        format!(
            "({:>3},{:>3},{:>3})",
            img.get(x, 0, 0),
            img.get(x, 0, 1),
            img.get(x, 0, 2)
        )
    };
    println!("{label:<26} {} {} {}", px(0), px(4), px(7));
}

fn main() -> fastaug::Result<()> {
    // An 8-pixel strip from dark red to bright cyan.
    let data: Vec<u8> = (0..8u32)
        .flat_map(|i| {
            let t = (i * 255 / 7) as u8;
            [255 - t, t / 2, t]
        })
        .collect();
    let strip = ImageBuffer::new(8, 1, 3, data).unwrap();

    probe(&strip, "original");
    probe(&brightness(&strip, 1.5)?, "brightness x1.5");
    probe(&contrast(&strip, 1.8), "contrast x1.8");
    probe(&gamma(&strip, 2.2)?, "gamma 2.2");
    probe(&shift_rgb(&strip, 40.0, 0.0, -40.0)?, "shift_rgb +40r -40b");
    probe(&shift_hsv(&strip, 120.0, 0.0, 0.0)?, "shift_hsv +120deg");
    probe(&grayscale(&strip)?, "grayscale");

    // Identity parameters change nothing.
    assert_eq!(brightness(&strip, 1.0)?, strip);
    assert_eq!(contrast(&strip, 1.0), strip);
    assert_eq!(gamma(&strip, 1.0)?, strip);
    assert_eq!(shift_rgb(&strip, 0.0, 0.0, 0.0)?, strip);
    println!("\nidentity parameters are bit-exact no-ops");

    // Hue arithmetic wraps: red + 120 degrees is green, +240 is blue.
    let red = rgb_to_hsv(255, 0, 0);
    println!(
        "pure red -> h={} s={} v={}; +120deg -> {:?}",
        red.h,
        red.s,
        red.v,
        hsv_to_rgb(fastaug::photo::HsvPixel {
            h: red.h + 120.0,
            ..red
        })
    );
    Ok(())
}
