//! Flips, quarter turns, and the eight D4 symmetries.
//!
//! ```bash
//! cargo run --example flips_and_dihedral
//! ```

use fastaug::geom::{d4, hflip, rot90, vflip, D4Element};
use fastaug::{ImageBuffer, SampleBundle};

fn render(b: &SampleBundle, title: &str) {
    println!("{title} ({}x{}):", b.image.width(), b.image.height());
    for y in 0..b.image.height() {
        let row: String = (0..b.image.width())
            .map(|x| char::from(b.image.get(x, y, 0)))
            .collect();
        println!("  {row}");
    }
}

fn main() {
    // A 4x3 glyph image; channel 0 carries ASCII so the orientation is
    // visible in the terminal.
    let rows = ["FAST", "aug.", "&&&&"];
    let data: Vec<u8> = rows
        .iter()
        .flat_map(|r| r.bytes().flat_map(|c| [c, 0, 0]))
        .collect();
    let bundle = SampleBundle::from_image(ImageBuffer::new(4, 3, 3, data).unwrap());

    render(&bundle, "original");
    render(&hflip(&bundle), "hflip");
    render(&vflip(&bundle), "vflip");
    for k in 1..4 {
        render(&rot90(&bundle, k), &format!("rot90 k={k}"));
    }

    // Flips are involutions and four quarter turns cycle back.
    assert_eq!(hflip(&hflip(&bundle)), bundle);
    assert_eq!(vflip(&vflip(&bundle)), bundle);
    assert_eq!(rot90(&rot90(&rot90(&rot90(&bundle, 1), 1), 1), 1), bundle);
    println!("\ninvolution and rotation-cycle laws hold");

    // The full D4 orbit of a square image: 8 distinct symmetries.
    let square = SampleBundle::from_image(
        ImageBuffer::new(3, 3, 1, b"abcdefghi".to_vec()).unwrap(),
    );
    println!("\nD4 orbit of a 3x3 square:");
    for element in D4Element::ALL {
        let out = d4(&square, element);
        let flat: String = out.image.data().iter().map(|&b| char::from(b)).collect();
        println!("  {element:?}: {flat}");
    }
    assert_eq!(d4(&square, D4Element::Rot0), square);
}
