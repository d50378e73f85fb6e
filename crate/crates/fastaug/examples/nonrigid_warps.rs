//! Grid distortion and elastic transform on a checkerboard, where
//! non-rigid warps are easiest to see. Writes before/after PPMs.
//!
//! ```bash
//! cargo run --example nonrigid_warps
//! ```

use fastaug::warp::{
    elastic_field, elastic_transform, grid_distortion, ElasticParams, GridDistortParams,
};
use fastaug::{pnm, ImageBuffer, RngStream, SampleBundle};

fn checkerboard(size: u32, cell: u32) -> ImageBuffer {
    let mut img = ImageBuffer::filled(size, size, 3, 0).unwrap();
    for y in 0..size {
        for x in 0..size {
            let on = ((x / cell) + (y / cell)).is_multiple_of(2);
            let v = if on { 235 } else { 30 };
            for c in 0..3 {
                img.set(x, y, c, v);
            }
        }
    }
    img
}

fn main() -> fastaug::Result<()> {
    let out_dir = std::env::temp_dir().join("fastaug-examples");
    std::fs::create_dir_all(&out_dir).expect("create output dir");

    let bundle = SampleBundle::from_image(checkerboard(160, 16));
    pnm::save(out_dir.join("checker.ppm"), &bundle.image)?;

    let grid = GridDistortParams::new(5, 0.45);
    let mut rng = RngStream::new(11);
    let distorted = grid_distortion(&bundle, &grid, &mut rng)?;
    pnm::save(out_dir.join("checker_grid.ppm"), &distorted.image)?;
    println!("wrote {}", out_dir.join("checker_grid.ppm").display());

    let elastic = ElasticParams::new(8.0, 4.0);
    let mut rng = RngStream::new(12);
    let wobbled = elastic_transform(&bundle, &elastic, &mut rng)?;
    pnm::save(out_dir.join("checker_elastic.ppm"), &wobbled.image)?;
    println!("wrote {}", out_dir.join("checker_elastic.ppm").display());

    // The displacement magnitude never exceeds alpha.
    let mut rng = RngStream::new(12);
    let field = elastic_field(160, 160, &elastic, &mut rng)?;
    println!(
        "largest elastic displacement: {:.3} px (alpha = {})",
        field.max_abs(),
        elastic.alpha
    );
    assert!(field.max_abs() <= elastic.alpha);

    // Degenerate parameters leave the image untouched, bit for bit.
    let mut rng = RngStream::new(13);
    assert_eq!(
        grid_distortion(&bundle, &GridDistortParams::new(5, 0.0), &mut rng)?,
        bundle
    );
    let mut rng = RngStream::new(14);
    assert_eq!(
        elastic_transform(&bundle, &ElasticParams::new(0.0, 4.0), &mut rng)?,
        bundle
    );
    println!("zero-strength warps are bit-exact identities");
    Ok(())
}
