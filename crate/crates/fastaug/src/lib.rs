//! Fast CPU image augmentations with label-preserving joint application
//! to images, segmentation masks, and bounding boxes.
//!
//! The building blocks:
//!
//! - [`ImageBuffer`] / [`MaskBuffer`] / [`BoundingBox`], combined into a
//!   [`SampleBundle`]: the unit of joint augmentation.
//! - [`geom`]: flips, quarter turns, D4 symmetries, rotation,
//!   shift/scale/rotate, crop, pad, resize, random sized crop, all
//!   propagating consistently to masks and boxes.
//! - [`warp`]: grid distortion and elastic transform over a dense
//!   displacement-field remap.
//! - [`photo`]: brightness, contrast, gamma, RGB/HSV shifts, grayscale.
//! - [`pipeline`]: probabilistic, seed-reproducible composition with a
//!   JSON config format.
//! - [`mod@bench`]: the timing harness behind the `bench` binary.
//! - [`pnm`]: bit-exact binary PNM (P5/P6) I/O.
//!
//! Determinism is a contract: every random decision comes from a
//! [`RngStream`] (SplitMix64), so a pipeline applied with the same seed
//! yields bit-identical output on any platform.
//!
//! ```
//! use fastaug::{ImageBuffer, SampleBundle, Pipeline, TransformKind, TransformSpec};
//!
//! let image = ImageBuffer::filled(64, 48, 3, 127).unwrap();
//! let bundle = SampleBundle::from_image(image);
//! let pipeline = Pipeline::new(vec![
//!     TransformSpec::new(TransformKind::HorizontalFlip, 0.5).unwrap(),
//!     TransformSpec::new(TransformKind::Gamma { g: 1.2 }, 1.0).unwrap(),
//! ]);
//! let run = pipeline.apply(&bundle, Some(42)).unwrap();
//! assert_eq!(run.seed, 42);
//! assert_eq!(run.bundle.image.width(), 64);
//! ```

pub mod bbox;
pub mod bench;
pub mod bundle;
pub mod error;
pub mod geom;
pub mod image;
pub mod photo;
pub mod pipeline;
pub mod pnm;
pub mod rng;
mod sampler;
pub mod warp;

pub use bbox::BoundingBox;
pub use bundle::{SampleBundle, Violation};
pub use error::{Error, Result};
pub use image::{clip_round, ImageBuffer, MaskBuffer};
pub use pipeline::{Pipeline, PipelineRun, TransformKind, TransformSpec};
pub use rng::RngStream;
pub use sampler::{BorderMode, BorderPolicy, Interpolation};
