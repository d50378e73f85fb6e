//! Bit-exact PNM I/O: encode, decode, and verify nothing changed.
//!
//! ```bash
//! cargo run --example pnm_roundtrip
//! ```

use fastaug::pnm::{decode, encode_image, encode_mask, PnmImage};
use fastaug::{ImageBuffer, MaskBuffer, RngStream};

fn main() {
    let mut rng = RngStream::new(314);

    let data: Vec<u8> = (0..32 * 24 * 3).map(|_| rng.next_u64() as u8).collect();
    let image = ImageBuffer::new(32, 24, 3, data).unwrap();
    let bytes = encode_image(&image);
    println!(
        "encoded 32x24 RGB image to {} bytes (header: {:?})",
        bytes.len(),
        std::str::from_utf8(&bytes[..11]).unwrap()
    );
    match decode(&bytes).unwrap() {
        PnmImage::Rgb(back) => assert_eq!(back, image),
        _ => unreachable!("P6 decodes to an RGB image"),
    }
    println!("P6 round trip is byte-exact");

    let labels: Vec<u8> = (0..16 * 16).map(|_| (rng.uniform_int(4)) as u8).collect();
    let mask = MaskBuffer::new(16, 16, labels).unwrap();
    let bytes = encode_mask(&mask);
    match decode(&bytes).unwrap() {
        PnmImage::Gray(back) => assert_eq!(back, mask),
        _ => unreachable!("P5 decodes to a mask"),
    }
    println!("P5 round trip is byte-exact");

    // The decoder explains what it rejects.
    for bad in [
        &b"P4 1 1 255\n\x00"[..],
        &b"P6 2 2 65535\n"[..],
        &b"P6 4 4 255\nshort"[..],
    ] {
        println!("rejected: {}", decode(bad).unwrap_err());
    }
}
