//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Timed criteria assume an optimized build; the workspace
//! sets `opt-level = 2` for tests.

use fastaug::bench::{self, BenchOptions, BenchTask, ReportFormat};
use fastaug::geom;
use fastaug::photo;
use fastaug::warp;
use fastaug::{
    BorderPolicy, BoundingBox, ImageBuffer, Interpolation, MaskBuffer, Pipeline, RngStream,
    SampleBundle, TransformKind, TransformSpec,
};
use std::time::Instant;

/// Prints the criterion verdict even when an assert unwinds mid-test.
struct Criterion(&'static str);

impl Criterion {
    fn start(name: &'static str) -> Self {
        Criterion(name)
    }

    fn pass(self) {
        println!("ACCEPTANCE {}: PASS", self.0);
        std::mem::forget(self);
    }
}

impl Drop for Criterion {
    fn drop(&mut self) {
        println!("ACCEPTANCE {}: FAIL", self.0);
    }
}

fn random_bundle(rng: &mut RngStream, w: u32, h: u32, with_mask: bool) -> SampleBundle {
    let data: Vec<u8> = (0..(w * h * 3) as usize).map(|_| rng.next_u64() as u8).collect();
    let masks = if with_mask {
        let mask: Vec<u8> = (0..(w * h) as usize).map(|_| rng.next_u64() as u8).collect();
        vec![MaskBuffer::new(w, h, mask).unwrap()]
    } else {
        Vec::new()
    };
    SampleBundle::new(ImageBuffer::new(w, h, 3, data).unwrap(), masks, vec![
        BoundingBox::new(0.125, 0.25, 0.625, 0.875, 1).unwrap(),
    ])
}

// ---------------------------------------------------------------------
// Algebraic suite: involutions, rotation cycles, D4 closure, and
// identity-parameter ops, bit-exact over 1000 randomized bundles.
// ---------------------------------------------------------------------
#[test]
fn algebraic_suite() {
    let criterion = Criterion::start("algebraic suite");
    let started = Instant::now();
    let mut rng = RngStream::new(0xA16E);
    let border = BorderPolicy::default();

    for case in 0..1000u64 {
        let w = 4 + rng.uniform_int(13) as u32;
        let h = 4 + rng.uniform_int(13) as u32;
        let b = random_bundle(&mut rng, w, h, true);

        // Involutions and the rotation cycle.
        assert_eq!(geom::hflip(&geom::hflip(&b)), b, "case {case}");
        assert_eq!(geom::vflip(&geom::vflip(&b)), b, "case {case}");
        let mut turned = b.clone();
        for _ in 0..4 {
            turned = geom::rot90(&turned, 1);
        }
        assert_eq!(turned, b, "case {case}");
        assert_eq!(geom::rot90(&b, 0), b);
        assert_eq!(geom::d4(&b, geom::D4Element::Rot0), b);

        // Identity-parameter ops are bit-exact.
        for interp in [Interpolation::Nearest, Interpolation::Bilinear] {
            assert_eq!(geom::rotate(&b, 0.0, interp, &border).unwrap(), b);
            assert_eq!(
                geom::shift_scale_rotate(&b, 0.0, 0.0, 1.0, 0.0, interp, &border).unwrap(),
                b
            );
            assert_eq!(geom::resize(&b, w, h, interp).unwrap(), b);
        }
        assert_eq!(geom::crop(&b, 0, 0, w, h).unwrap(), b);
        assert_eq!(geom::pad_to_size(&b, w, h, &border).unwrap(), b);
        let mut crop_rng = RngStream::new(case);
        assert_eq!(geom::random_crop(&b, w, h, &mut crop_rng).unwrap(), b);

        let image = &b.image;
        assert_eq!(&photo::brightness(image, 1.0).unwrap(), image);
        assert_eq!(&photo::contrast(image, 1.0), image);
        assert_eq!(&photo::gamma(image, 1.0).unwrap(), image);
        assert_eq!(&photo::shift_rgb(image, 0.0, 0.0, 0.0).unwrap(), image);
        // HSV identity is exact to +-1 per channel (round-trip tolerance).
        let hsv = photo::shift_hsv(image, 0.0, 0.0, 0.0).unwrap();
        for (a, o) in hsv.data().iter().zip(image.data()) {
            assert!((*a as i16 - *o as i16).abs() <= 1, "case {case}");
        }

        // Free-form warps with degenerate parameters, on box-free bundles.
        let no_boxes = SampleBundle::new(b.image.clone(), b.masks.clone(), vec![]);
        let mut warp_rng = RngStream::new(case);
        assert_eq!(
            warp::grid_distortion(
                &no_boxes,
                &warp::GridDistortParams::new(3, 0.0),
                &mut warp_rng
            )
            .unwrap(),
            no_boxes
        );
        let mut warp_rng = RngStream::new(case);
        assert_eq!(
            warp::elastic_transform(
                &no_boxes,
                &warp::ElasticParams::new(0.0, 1.5),
                &mut warp_rng
            )
            .unwrap(),
            no_boxes
        );
        let zero = warp::DisplacementField::zero(w, h);
        assert_eq!(
            warp::remap(&no_boxes, &zero, Interpolation::Bilinear, &border).unwrap(),
            no_boxes
        );

        // D4 Cayley closure, brute-forced on a sample of square bundles.
        if case % 50 == 0 {
            let sq = random_bundle(&mut rng, 8, 8, false);
            let orbit: Vec<SampleBundle> =
                geom::D4Element::ALL.iter().map(|&e| geom::d4(&sq, e)).collect();
            for &i in &geom::D4Element::ALL {
                for &j in &geom::D4Element::ALL {
                    let composed = geom::d4(&geom::d4(&sq, i), j);
                    assert!(
                        orbit.contains(&composed),
                        "composition {i:?};{j:?} left the orbit"
                    );
                }
            }
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "algebraic suite took {elapsed:.1}s (budget 30s)");
    criterion.pass();
}

// ---------------------------------------------------------------------
// Oracle suite: box propagation vs an independent corner-mapping
// oracle, separable Gaussian vs direct 2-D convolution, gamma LUT vs
// the direct formula, and rotate(90) vs the index permutation.
// ---------------------------------------------------------------------

/// Independent forward map: translate(dx*W, dy*H) after rotation by
/// theta after scaling by s, both about ((W-1)/2, (H-1)/2). Written
/// from the geometry directly, not via AffineMap.
#[allow(clippy::too_many_arguments)]
fn oracle_forward_point(
    x: f64,
    y: f64,
    w: f64,
    h: f64,
    dx: f64,
    dy: f64,
    scale: f64,
    theta_deg: f64,
) -> (f64, f64) {
    let (cx, cy) = ((w - 1.0) / 2.0, (h - 1.0) / 2.0);
    let (sx, sy) = (cx + (x - cx) * scale, cy + (y - cy) * scale);
    let rad = theta_deg.to_radians();
    let (sin, cos) = (rad.sin(), rad.cos());
    // Counter-clockwise as displayed with y growing downward.
    let rx = cx + cos * (sx - cx) + sin * (sy - cy);
    let ry = cy - sin * (sx - cx) + cos * (sy - cy);
    (rx + dx * w, ry + dy * h)
}

fn oracle_boxes(
    boxes: &[BoundingBox],
    w: u32,
    h: u32,
    dx: f64,
    dy: f64,
    scale: f64,
    theta: f64,
) -> Vec<BoundingBox> {
    let (wf, hf) = (w as f64, h as f64);
    boxes
        .iter()
        .filter_map(|b| {
            let corners = [
                (b.x_min * wf, b.y_min * hf),
                (b.x_max * wf, b.y_min * hf),
                (b.x_min * wf, b.y_max * hf),
                (b.x_max * wf, b.y_max * hf),
            ];
            let mapped: Vec<(f64, f64)> = corners
                .iter()
                .map(|&(x, y)| oracle_forward_point(x, y, wf, hf, dx, dy, scale, theta))
                .collect();
            let x0 = mapped.iter().map(|p| p.0).fold(f64::INFINITY, f64::min).clamp(0.0, wf);
            let x1 = mapped.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max).clamp(0.0, wf);
            let y0 = mapped.iter().map(|p| p.1).fold(f64::INFINITY, f64::min).clamp(0.0, hf);
            let y1 = mapped.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max).clamp(0.0, hf);
            if x1 <= x0 || y1 <= y0 {
                return None;
            }
            BoundingBox::new(x0 / wf, y0 / hf, x1 / wf, y1 / hf, b.label).ok()
        })
        .collect()
}

#[test]
fn oracle_suite() {
    let criterion = Criterion::start("oracle suite");

    // Affine box propagation vs the corner-mapping oracle, 500 cases.
    let mut rng = RngStream::new(0x0AC1E);
    for case in 0..500 {
        let w = 8 + rng.uniform_int(56) as u32;
        let h = 8 + rng.uniform_int(56) as u32;
        let mut boxes = Vec::new();
        for label in 0..1 + rng.uniform_int(3) {
            let x0 = rng.uniform_range(0.0, 0.8);
            let y0 = rng.uniform_range(0.0, 0.8);
            let x1 = rng.uniform_range(x0 + 0.05, 1.0_f64.min(x0 + 0.9));
            let y1 = rng.uniform_range(y0 + 0.05, 1.0_f64.min(y0 + 0.9));
            boxes.push(BoundingBox::new(x0, y0, x1, y1, label as u32).unwrap());
        }
        let theta = rng.uniform_range(-200.0, 200.0);
        let dx = rng.uniform_range(-0.4, 0.4);
        let dy = rng.uniform_range(-0.4, 0.4);
        let scale = rng.uniform_range(0.3, 2.5);
        let bundle = SampleBundle::new(ImageBuffer::filled(w, h, 3, 0).unwrap(), vec![], boxes.clone());
        let out = geom::shift_scale_rotate(
            &bundle,
            dx,
            dy,
            scale,
            theta,
            Interpolation::Nearest,
            &BorderPolicy::default(),
        )
        .unwrap();
        let expected = oracle_boxes(&boxes, w, h, dx, dy, scale, theta);
        assert_eq!(out.boxes.len(), expected.len(), "case {case}: drop sets differ");
        for (got, want) in out.boxes.iter().zip(&expected) {
            assert_eq!(got.label, want.label, "case {case}");
            for (g, e) in [
                (got.x_min, want.x_min),
                (got.y_min, want.y_min),
                (got.x_max, want.x_max),
                (got.y_max, want.y_max),
            ] {
                assert!((g - e).abs() < 1e-9, "case {case}: {g} vs {e}");
            }
        }
    }

    // Separable Gaussian equals direct 2-D convolution on 9x9 fields.
    let mut rng = RngStream::new(0x0AC2E);
    for sigma in [0.6, 1.0, 1.7, 2.4] {
        let field: Vec<f64> = (0..81).map(|_| rng.uniform_range(-1.0, 1.0)).collect();
        let fast = warp::gaussian_blur_plane(&field, 9, 9, sigma);
        let slow = direct_gaussian_2d(&field, 9, 9, sigma);
        for (i, (a, b)) in fast.iter().zip(&slow).enumerate() {
            assert!((a - b).abs() < 1e-9, "sigma {sigma} index {i}: {a} vs {b}");
        }
    }

    // Gamma LUT equals the direct per-pixel formula for all 256 inputs.
    for g in [0.25, 0.5, 1.0, 1.2, 2.0, 3.3] {
        let lut = photo::gamma_lut(g).unwrap();
        for (i, &out) in lut.iter().enumerate() {
            let direct = fastaug::clip_round(255.0 * (i as f64 / 255.0).powf(g));
            assert_eq!(out, direct, "g {g} input {i}");
        }
    }

    // rotate(90, nearest) equals the rot90 index permutation, bit-exact,
    // on 100 random square images.
    let mut rng = RngStream::new(0x0AC3E);
    for case in 0..100 {
        let n = 2 + rng.uniform_int(30) as u32;
        let data: Vec<u8> = (0..(n * n * 3) as usize).map(|_| rng.next_u64() as u8).collect();
        let img = ImageBuffer::new(n, n, 3, data).unwrap();
        let rotated = geom::rotate_image(
            &img,
            90.0,
            Interpolation::Nearest,
            &BorderPolicy::default(),
        )
        .unwrap();
        assert_eq!(rotated, geom::rot90_image(&img, 1), "case {case} n {n}");
    }

    criterion.pass();
}

fn direct_gaussian_2d(plane: &[f64], w: usize, h: usize, sigma: f64) -> Vec<f64> {
    // Direct double loop over the outer-product kernel with reflect-101
    // edges; intentionally independent of the separable code path.
    let radius = (3.0 * sigma).ceil() as i64;
    let inv = 1.0 / (2.0 * sigma * sigma);
    let taps: Vec<f64> = (-radius..=radius).map(|i| (-((i * i) as f64) * inv).exp()).collect();
    let norm: f64 = taps.iter().sum();
    let taps: Vec<f64> = taps.into_iter().map(|t| t / norm).collect();
    let reflect = |i: i64, n: i64| -> usize {
        if n == 1 {
            return 0;
        }
        let period = 2 * (n - 1);
        let m = i.rem_euclid(period);
        (if m < n { m } else { period - m }) as usize
    };
    let mut out = vec![0.0; plane.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (ky, ty) in taps.iter().enumerate() {
                let sy = reflect(y as i64 + ky as i64 - radius, h as i64);
                for (kx, tx) in taps.iter().enumerate() {
                    let sx = reflect(x as i64 + kx as i64 - radius, w as i64);
                    acc += ty * tx * plane[sy * w + sx];
                }
            }
            out[y * w + x] = acc;
        }
    }
    out
}

// ---------------------------------------------------------------------
// Consistency suite: bundles whose image channel 0 equals the mask stay
// equal under every geometric and warp op with nearest interpolation.
// ---------------------------------------------------------------------
#[test]
fn consistency_suite() {
    let criterion = Criterion::start("consistency suite");
    let border = BorderPolicy::constant([7, 7, 7]).with_mask_fill(7);

    let make = |rng: &mut RngStream| -> SampleBundle {
        let w = 6 + rng.uniform_int(18) as u32;
        let h = 6 + rng.uniform_int(18) as u32;
        let mask: Vec<u8> = (0..(w * h) as usize).map(|_| rng.next_u64() as u8).collect();
        let mut data = vec![0u8; (w * h * 3) as usize];
        for (i, px) in data.chunks_mut(3).enumerate() {
            px[0] = mask[i];
            px[1] = rng.next_u64() as u8;
            px[2] = rng.next_u64() as u8;
        }
        SampleBundle::new(
            ImageBuffer::new(w, h, 3, data).unwrap(),
            vec![MaskBuffer::new(w, h, mask).unwrap()],
            vec![],
        )
    };

    let check = |out: &SampleBundle, op: &str, case: u64| {
        let img = &out.image;
        let mask = &out.masks[0];
        assert_eq!(
            (img.width(), img.height()),
            (mask.width(), mask.height()),
            "{op} case {case}: shape drift"
        );
        for y in 0..img.height() {
            for x in 0..img.width() {
                assert_eq!(
                    img.get(x, y, 0),
                    mask.get(x, y),
                    "{op} case {case}: mismatch at ({x}, {y})"
                );
            }
        }
    };

    type Op = (&'static str, fn(&SampleBundle, &BorderPolicy, &mut RngStream) -> SampleBundle);
    let ops: &[Op] = &[
        ("hflip", |b, _, _| geom::hflip(b)),
        ("vflip", |b, _, _| geom::vflip(b)),
        ("rot90", |b, _, rng| geom::rot90(b, rng.uniform_int(4) as u32)),
        ("d4", |b, _, rng| {
            let e = geom::D4Element::from_index(rng.uniform_int(8) as u8).unwrap();
            geom::d4(b, e)
        }),
        ("rotate", |b, border, rng| {
            geom::rotate(b, rng.uniform_range(-180.0, 180.0), Interpolation::Nearest, border)
                .unwrap()
        }),
        ("shift_scale_rotate", |b, border, rng| {
            geom::shift_scale_rotate(
                b,
                rng.uniform_range(-0.3, 0.3),
                rng.uniform_range(-0.3, 0.3),
                rng.uniform_range(0.4, 2.2),
                rng.uniform_range(-180.0, 180.0),
                Interpolation::Nearest,
                border,
            )
            .unwrap()
        }),
        ("crop", |b, _, rng| {
            let w = 1 + rng.uniform_int(b.image.width() as u64 / 2) as u32;
            let h = 1 + rng.uniform_int(b.image.height() as u64 / 2) as u32;
            geom::crop(b, 1, 1, w, h).unwrap()
        }),
        ("random_crop", |b, _, rng| {
            let w = 1 + rng.uniform_int(b.image.width() as u64) as u32;
            let h = 1 + rng.uniform_int(b.image.height() as u64) as u32;
            geom::random_crop(b, w, h, rng).unwrap()
        }),
        ("pad_to_size", |b, border, rng| {
            let w = b.image.width() + rng.uniform_int(10) as u32;
            let h = b.image.height() + rng.uniform_int(10) as u32;
            geom::pad_to_size(b, w, h, border).unwrap()
        }),
        ("pad_reflect", |b, _, rng| {
            let w = b.image.width() + rng.uniform_int(10) as u32;
            let h = b.image.height() + rng.uniform_int(10) as u32;
            geom::pad_to_size(b, w, h, &BorderPolicy::reflect101()).unwrap()
        }),
        ("resize", |b, _, rng| {
            let w = 1 + rng.uniform_int(40) as u32;
            let h = 1 + rng.uniform_int(40) as u32;
            geom::resize(b, w, h, Interpolation::Nearest).unwrap()
        }),
        ("random_sized_crop", |b, _, rng| {
            geom::random_sized_crop(b, 0.3, 1.0, 15, 11, Interpolation::Nearest, rng).unwrap()
        }),
        ("remap", |b, border, rng| {
            let (w, h) = (b.image.width(), b.image.height());
            let len = (w * h) as usize;
            let dx: Vec<f64> = (0..len).map(|_| rng.uniform_range(-3.0, 3.0)).collect();
            let dy: Vec<f64> = (0..len).map(|_| rng.uniform_range(-3.0, 3.0)).collect();
            let field = warp::DisplacementField::new(w, h, dx, dy).unwrap();
            warp::remap(b, &field, Interpolation::Nearest, border).unwrap()
        }),
        ("grid_distortion", |b, border, rng| {
            let params = warp::GridDistortParams::new(1 + rng.uniform_int(5) as u32, 0.5)
                .with_interp(Interpolation::Nearest)
                .with_border(*border);
            warp::grid_distortion(b, &params, rng).unwrap()
        }),
        ("elastic_transform", |b, border, rng| {
            let params = warp::ElasticParams::new(rng.uniform_range(0.0, 5.0), 1.2)
                .with_interp(Interpolation::Nearest)
                .with_border(*border);
            warp::elastic_transform(b, &params, rng).unwrap()
        }),
    ];

    for (name, op) in ops {
        let mut rng = RngStream::new(0xC0 ^ name.len() as u64);
        for case in 0..200u64 {
            let bundle = make(&mut rng);
            let out = op(&bundle, &border, &mut rng);
            check(&out, name, case);
        }
    }
    criterion.pass();
}

// ---------------------------------------------------------------------
// Determinism suite: bit-identical replays across process boundaries
// and config round trips.
// ---------------------------------------------------------------------

const CHILD_ENV: &str = "FASTAUG_ACCEPTANCE_CHILD";

fn determinism_pipeline() -> Pipeline {
    Pipeline::new(vec![
        TransformSpec::new(TransformKind::HorizontalFlip, 0.5).unwrap(),
        TransformSpec::new(TransformKind::VerticalFlip, 0.5).unwrap(),
        TransformSpec::new(TransformKind::D4, 1.0).unwrap(),
        TransformSpec::new(TransformKind::RandomCrop { w: 40, h: 40 }, 1.0).unwrap(),
        TransformSpec::new(
            TransformKind::Rotate {
                theta: 33.0,
                interp: Interpolation::Bilinear,
                border: BorderPolicy::reflect101(),
            },
            0.7,
        )
        .unwrap(),
        TransformSpec::new(
            TransformKind::GridDistortion {
                num_steps: 3,
                distort_limit: 0.3,
                interp: Interpolation::Bilinear,
                border: BorderPolicy::default(),
            },
            1.0,
        )
        .unwrap(),
        TransformSpec::new(
            TransformKind::ElasticTransform {
                alpha: 3.0,
                sigma: 1.5,
                interp: Interpolation::Bilinear,
                border: BorderPolicy::default(),
            },
            1.0,
        )
        .unwrap(),
        TransformSpec::new(TransformKind::Brightness { beta: 1.25 }, 0.5).unwrap(),
        TransformSpec::new(
            TransformKind::ShiftHsv {
                dh: 15.0,
                ds: 0.05,
                dv: -0.05,
            },
            0.4,
        )
        .unwrap(),
        TransformSpec::new(
            TransformKind::RandomSizedCrop {
                min_scale: 0.5,
                max_scale: 1.0,
                out_w: 32,
                out_h: 32,
                interp: Interpolation::Nearest,
            },
            1.0,
        )
        .unwrap(),
    ])
}

fn fnv1a(h: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(h, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// 50 seeded images through the 10-transform pipeline, digested.
fn pipeline_digest() -> u64 {
    let pipeline = determinism_pipeline();
    let mut corpus_rng = RngStream::new(0xD16E57);
    let mut digest = 0xcbf29ce484222325u64;
    for i in 0..50u64 {
        let data: Vec<u8> = (0..48 * 64 * 3).map(|_| corpus_rng.next_u64() as u8).collect();
        let mask: Vec<u8> = (0..48 * 64).map(|_| corpus_rng.next_u64() as u8).collect();
        let bundle = SampleBundle::new(
            ImageBuffer::new(48, 64, 3, data).unwrap(),
            vec![MaskBuffer::new(48, 64, mask).unwrap()],
            vec![],
        );
        let out = pipeline.apply(&bundle, Some(1000 + i)).unwrap();
        digest = fnv1a(digest, &out.bundle.image.width().to_le_bytes());
        digest = fnv1a(digest, &out.bundle.image.height().to_le_bytes());
        digest = fnv1a(digest, out.bundle.image.data());
        for m in &out.bundle.masks {
            digest = fnv1a(digest, m.data());
        }
    }
    digest
}

/// Helper target for the cross-process check; inert unless spawned by
/// `determinism_suite` with the env marker set.
#[test]
#[ignore = "spawned by determinism_suite"]
fn child_pipeline_digest() {
    if std::env::var(CHILD_ENV).is_err() {
        return;
    }
    println!("PIPELINE_DIGEST={:016x}", pipeline_digest());
}

fn spawn_child_digest() -> u64 {
    let exe = std::env::current_exe().expect("test binary path");
    let out = std::process::Command::new(exe)
        .args([
            "--exact",
            "child_pipeline_digest",
            "--include-ignored",
            "--nocapture",
            "--test-threads=1",
        ])
        .env(CHILD_ENV, "1")
        .output()
        .expect("spawn child process");
    assert!(out.status.success(), "child run failed: {out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    // The harness may print the digest on the same line as the test
    // header, so match the marker anywhere.
    let hex = stdout
        .split("PIPELINE_DIGEST=")
        .nth(1)
        .map(|rest| rest.chars().take(16).collect::<String>())
        .unwrap_or_else(|| {
            panic!(
                "child printed no digest; stdout:\n{stdout}\nstderr:\n{}",
                String::from_utf8_lossy(&out.stderr)
            )
        });
    u64::from_str_radix(&hex, 16).expect("digest parses")
}

#[test]
fn determinism_suite() {
    let criterion = Criterion::start("determinism suite");

    // Bit-identical across in-process replays and two fresh processes.
    let local = pipeline_digest();
    assert_eq!(local, pipeline_digest(), "in-process replay diverged");
    for run in 0..2 {
        let child = spawn_child_digest();
        assert_eq!(local, child, "process run {run} diverged");
    }

    // Config round trips: the documented example configs and the full
    // determinism pipeline itself.
    let examples = [
        r#"{"transforms": []}"#,
        r#"{"transforms": [{"name": "Gamma", "p": 1, "params": {"g": 2.0}}]}"#,
        r#"{"seed": 7, "transforms": [
            {"name": "HorizontalFlip", "p": 0.5, "params": {}},
            {"name": "RandomCrop", "p": 1, "params": {"w": 8, "h": 8}},
            {"name": "ShiftHSV", "p": 0.3, "params": {"dh": 20, "ds": 0.1, "dv": -0.1}}
        ]}"#,
    ];
    for text in examples {
        let parsed = Pipeline::from_json(text).unwrap();
        let round = Pipeline::from_json(&parsed.to_json()).unwrap();
        assert_eq!(parsed, round);
    }
    let p = determinism_pipeline().with_seed(5);
    assert_eq!(Pipeline::from_json(&p.to_json()).unwrap(), p);

    criterion.pass();
}

// ---------------------------------------------------------------------
// Statistical suite: gate rates and crop offset coverage.
// ---------------------------------------------------------------------
#[test]
fn statistical_suite() {
    let criterion = Criterion::start("statistical suite");

    // A p = 0.5 gate fires 5000 +- 200 times over 10000 seeds.
    let b = SampleBundle::from_image(ImageBuffer::new(2, 1, 3, vec![1, 2, 3, 4, 5, 6]).unwrap());
    let flip = Pipeline::new(vec![
        TransformSpec::new(TransformKind::HorizontalFlip, 0.5).unwrap()
    ]);
    let mut fired = 0u32;
    for seed in 0..10_000u64 {
        if flip.apply(&b, Some(seed)).unwrap().bundle != b {
            fired += 1;
        }
    }
    assert!(
        (4800..=5200).contains(&fired),
        "p=0.5 gate fired {fired} times in 10000"
    );

    // Random crop offset coverage is exhaustive on the 8x8 -> 4x4 sweep:
    // all 25 (x0, y0) cells occur. Pixel values encode their position.
    let data: Vec<u8> = (0..64).map(|i| i as u8).collect();
    let b = SampleBundle::from_image(ImageBuffer::new(8, 8, 1, data).unwrap());
    let mut seen = [[false; 5]; 5];
    for seed in 0..10_000u64 {
        let mut rng = RngStream::new(seed);
        let out = geom::random_crop(&b, 4, 4, &mut rng).unwrap();
        let origin = out.image.get(0, 0, 0);
        let (x0, y0) = ((origin % 8) as usize, (origin / 8) as usize);
        assert!(x0 < 5 && y0 < 5, "offset ({x0}, {y0}) out of range");
        seen[y0][x0] = true;
    }
    for (y, row) in seen.iter().enumerate() {
        for (x, hit) in row.iter().enumerate() {
            assert!(hit, "offset ({x}, {y}) never drawn in 10000 seeds");
        }
    }

    criterion.pass();
}

// ---------------------------------------------------------------------
// Benchmark ordering on the 1000-image 512x512 corpus: RandomCrop64
// within 1/50 of Rotate, HorizontalFlip no slower than Rotate.
// ---------------------------------------------------------------------
#[test]
fn benchmark_ordering() {
    let criterion = Criterion::start("benchmark ordering");
    let started = Instant::now();

    let corpus = bench::synthesize_corpus(1000, 512, 512, 0);
    let tasks = [
        BenchTask::by_name("RandomCrop64").unwrap(),
        BenchTask::by_name("HorizontalFlip").unwrap(),
        BenchTask::by_name("Rotate").unwrap(),
    ];
    let opts = BenchOptions {
        warmup: 1,
        repeats: 3,
        seed: 0,
        threads: 1,
    };
    let report = bench::run(&tasks, &corpus, &opts).unwrap();
    let secs = |name: &str| {
        report
            .entries
            .iter()
            .find(|e| e.task == name)
            .map(|e| e.seconds)
            .unwrap()
    };
    let crop = secs("RandomCrop64");
    let flip = secs("HorizontalFlip");
    let rotate = secs("Rotate");
    println!(
        "benchmark ordering: RandomCrop64 {crop:.6}s, HorizontalFlip {flip:.6}s, Rotate {rotate:.6}s"
    );
    assert!(
        crop <= rotate / 50.0,
        "RandomCrop64 ({crop:.6}s) not at least 50x faster than Rotate ({rotate:.6}s)"
    );
    assert!(
        flip <= rotate,
        "HorizontalFlip ({flip:.6}s) slower than Rotate ({rotate:.6}s)"
    );

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "ordering run took {elapsed:.0}s (budget 300s)");
    criterion.pass();
}

// ---------------------------------------------------------------------
// Throughput smoke: the full task menu completes and all report formats
// carry identical numbers. Gates only on completion.
// ---------------------------------------------------------------------
#[test]
fn throughput_smoke() {
    let criterion = Criterion::start("throughput smoke");

    let corpus = bench::synthesize_corpus(32, 128, 128, 1);
    let tasks = BenchTask::all();
    assert_eq!(tasks.len(), 11);
    let opts = BenchOptions {
        warmup: 0,
        repeats: 1,
        seed: 0,
        threads: 1,
    };
    let report = bench::run(&tasks, &corpus, &opts).unwrap();
    assert_eq!(report.entries.len(), 11);

    let text = bench::emit_report(&report, ReportFormat::Text);
    let csv = bench::emit_report(&report, ReportFormat::Csv);
    let json = bench::emit_report(&report, ReportFormat::Json);
    for e in &report.entries {
        let secs = format!("{:.6}", e.seconds);
        let ips = format!("{:.6}", e.images_per_second);
        for (fmt, body) in [("text", &text), ("csv", &csv), ("json", &json)] {
            assert!(body.contains(&e.task), "{fmt} missing row {}", e.task);
            assert!(body.contains(&secs), "{fmt} missing seconds for {}", e.task);
            assert!(body.contains(&ips), "{fmt} missing rate for {}", e.task);
        }
    }
    // The json-like body parses as real JSON with the same values.
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed["results"].as_array().unwrap().len(), 11);
    assert_eq!(parsed["corpus"]["images"], 32);

    criterion.pass();
}

// ---------------------------------------------------------------------
// HSV round trip: over 10^6 sampled RGB values, rgb -> hsv -> rgb
// deviates at most 1 per channel. The exhaustive sweep is available as
// an extended (ignored) test.
// ---------------------------------------------------------------------
#[test]
fn hsv_round_trip_sampled() {
    let criterion = Criterion::start("hsv round trip");
    let mut rng = RngStream::new(0x45);
    for _ in 0..1_000_000u32 {
        let bits = rng.next_u64();
        let (r, g, b) = (bits as u8, (bits >> 8) as u8, (bits >> 16) as u8);
        let (r2, g2, b2) = photo::hsv_to_rgb(photo::rgb_to_hsv(r, g, b));
        let ok = (r as i16 - r2 as i16).abs() <= 1
            && (g as i16 - g2 as i16).abs() <= 1
            && (b as i16 - b2 as i16).abs() <= 1;
        assert!(ok, "({r},{g},{b}) -> ({r2},{g2},{b2})");
    }
    criterion.pass();
}

#[test]
#[ignore = "exhaustive 2^24 sweep; run with --ignored"]
fn hsv_round_trip_exhaustive() {
    for r in 0..=255u16 {
        for g in 0..=255u16 {
            for b in 0..=255u16 {
                let (r, g, b) = (r as u8, g as u8, b as u8);
                let (r2, g2, b2) = photo::hsv_to_rgb(photo::rgb_to_hsv(r, g, b));
                let ok = (r as i16 - r2 as i16).abs() <= 1
                    && (g as i16 - g2 as i16).abs() <= 1
                    && (b as i16 - b2 as i16).abs() <= 1;
                assert!(ok, "({r},{g},{b}) -> ({r2},{g2},{b2})");
            }
        }
    }
}
