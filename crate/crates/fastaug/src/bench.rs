//! Benchmark harness: time named transform tasks over an image corpus
//! and report per-op seconds.
//!
//! Protocol: per task, run `warmup` untimed passes, then `repeats` timed
//! passes over the full corpus on a monotonic wall clock, and report the
//! median pass time (robust to OS jitter). Every pass reseeds the same
//! fixed seed so the work is constant. The timing loop is
//! single-threaded by contract so per-op numbers stay interpretable; an
//! opt-in thread count exists for throughput exploration.

use crate::error::{Error, Result};
use crate::geom;
use crate::image::ImageBuffer;
use crate::photo;
use crate::pnm;
use crate::rng::RngStream;
use crate::sampler::{BorderPolicy, Interpolation};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Table row names, each bound to one fixed-parameter transform task.
pub const TASK_NAMES: [&str; 11] = [
    "RandomCrop64",
    "PadToSize512",
    "HorizontalFlip",
    "VerticalFlip",
    "Rotate",
    "ShiftScaleRotate",
    "Brightness",
    "ShiftHSV",
    "ShiftRGB",
    "Gamma",
    "Grayscale",
];

type TaskFn = fn(&ImageBuffer, &mut RngStream) -> Result<ImageBuffer>;

/// A named benchmark task: one transform with pinned parameters.
///
/// The parameters are fixed so numbers are comparable across machines:
/// Rotate is 45 degrees bilinear with constant border, ShiftScaleRotate
/// is (dx 0.06, dy 0.06, scale 1.1, theta 15), Brightness 1.5,
/// Gamma 1.2, ShiftRGB +20 per channel, ShiftHSV (+20 deg, +0.1, +0.1).
#[derive(Clone, Copy)]
pub struct BenchTask {
    pub name: &'static str,
    runner: TaskFn,
}

impl BenchTask {
    pub fn all() -> Vec<BenchTask> {
        TASK_NAMES
            .iter()
            .map(|n| BenchTask::by_name(n).expect("canonical names always resolve"))
            .collect()
    }

    pub fn by_name(name: &str) -> Result<BenchTask> {
        let runner: TaskFn = match name {
            "RandomCrop64" => |img, rng| geom::random_crop_image(img, 64, 64, rng),
            "PadToSize512" => {
                |img, _| geom::pad_to_size_image(img, 512, 512, &BorderPolicy::default())
            }
            "HorizontalFlip" => |img, _| Ok(geom::hflip_image(img)),
            "VerticalFlip" => |img, _| Ok(geom::vflip_image(img)),
            "Rotate" => |img, _| {
                geom::rotate_image(img, 45.0, Interpolation::Bilinear, &BorderPolicy::default())
            },
            "ShiftScaleRotate" => |img, _| {
                geom::shift_scale_rotate_image(
                    img,
                    0.06,
                    0.06,
                    1.1,
                    15.0,
                    Interpolation::Bilinear,
                    &BorderPolicy::default(),
                )
            },
            "Brightness" => |img, _| photo::brightness(img, 1.5),
            "ShiftHSV" => |img, _| photo::shift_hsv(img, 20.0, 0.1, 0.1),
            "ShiftRGB" => |img, _| photo::shift_rgb(img, 20.0, 20.0, 20.0),
            "Gamma" => |img, _| photo::gamma(img, 1.2),
            "Grayscale" => |img, _| photo::grayscale(img),
            other => {
                return Err(Error::UnknownTask {
                    name: other.to_string(),
                })
            }
        };
        let name = TASK_NAMES
            .iter()
            .find(|n| **n == name)
            .expect("resolved names are canonical");
        Ok(BenchTask { name, runner })
    }

    pub fn apply(&self, img: &ImageBuffer, rng: &mut RngStream) -> Result<ImageBuffer> {
        (self.runner)(img, rng)
    }
}

impl std::fmt::Debug for BenchTask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BenchTask({})", self.name)
    }
}

/// Harness knobs. `seed` feeds every pass identically; `threads > 1`
/// opts out of the single-threaded contract.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub warmup: u32,
    pub repeats: u32,
    pub seed: u64,
    pub threads: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            warmup: 1,
            repeats: 5,
            seed: 0,
            threads: 1,
        }
    }
}

/// One timed row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchEntry {
    pub task: String,
    /// Median over repeats of the total wall-clock seconds per pass.
    pub seconds: f64,
    pub images_per_second: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub corpus_images: usize,
    pub corpus_dims: String,
    pub warmup: u32,
    pub repeats: u32,
    pub entries: Vec<BenchEntry>,
}

/// Observer called after every image of every pass: `(task, index)`.
pub type ImageHook<'a> = Box<dyn FnMut(&str, usize) + 'a>;

/// Replacement clock: a monotone "now" in seconds.
pub type ClockFn<'a> = Box<dyn FnMut() -> f64 + 'a>;

/// Test hooks. Only valid with `threads == 1`.
#[derive(Default)]
pub struct Instrumentation<'a> {
    pub on_image: Option<ImageHook<'a>>,
    pub clock: Option<ClockFn<'a>>,
}

fn corpus_dims(corpus: &[ImageBuffer]) -> String {
    let first = &corpus[0];
    let same = corpus
        .iter()
        .all(|i| (i.width(), i.height(), i.channels()) == (first.width(), first.height(), first.channels()));
    if same {
        format!("{}x{}x{}", first.width(), first.height(), first.channels())
    } else {
        "mixed".into()
    }
}

fn median(sorted: &mut [f64]) -> f64 {
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("pass times are finite"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Run the selected tasks over an in-memory corpus.
pub fn run(tasks: &[BenchTask], corpus: &[ImageBuffer], opts: &BenchOptions) -> Result<BenchReport> {
    run_instrumented(tasks, corpus, opts, &mut Instrumentation::default())
}

pub fn run_instrumented(
    tasks: &[BenchTask],
    corpus: &[ImageBuffer],
    opts: &BenchOptions,
    instr: &mut Instrumentation,
) -> Result<BenchReport> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("benchmark corpus is empty".into()));
    }
    if opts.repeats < 1 {
        return Err(Error::InvalidParameter("repeats must be at least 1".into()));
    }
    if opts.threads > 1 && (instr.on_image.is_some() || instr.clock.is_some()) {
        return Err(Error::InvalidParameter(
            "instrumentation hooks require a single-threaded run".into(),
        ));
    }
    let epoch = Instant::now();
    let mut entries = Vec::with_capacity(tasks.len());
    for task in tasks {
        for _ in 0..opts.warmup {
            run_pass(task, corpus, opts, instr)?;
        }
        let mut times = Vec::with_capacity(opts.repeats as usize);
        for _ in 0..opts.repeats {
            let before = now_seconds(instr, epoch);
            run_pass(task, corpus, opts, instr)?;
            let after = now_seconds(instr, epoch);
            times.push((after - before).max(1e-9));
        }
        let seconds = median(&mut times);
        entries.push(BenchEntry {
            task: task.name.to_string(),
            seconds,
            images_per_second: corpus.len() as f64 / seconds,
        });
    }
    Ok(BenchReport {
        corpus_images: corpus.len(),
        corpus_dims: corpus_dims(corpus),
        warmup: opts.warmup,
        repeats: opts.repeats,
        entries,
    })
}

fn now_seconds(instr: &mut Instrumentation, epoch: Instant) -> f64 {
    match &mut instr.clock {
        Some(clock) => clock(),
        None => epoch.elapsed().as_secs_f64(),
    }
}

fn run_pass(
    task: &BenchTask,
    corpus: &[ImageBuffer],
    opts: &BenchOptions,
    instr: &mut Instrumentation,
) -> Result<()> {
    if opts.threads <= 1 {
        let mut rng = RngStream::new(opts.seed);
        for (i, img) in corpus.iter().enumerate() {
            std::hint::black_box(task.apply(img, &mut rng)?);
            if let Some(hook) = &mut instr.on_image {
                hook(task.name, i);
            }
        }
        return Ok(());
    }
    // Opt-in parallel pass: each chunk gets its own deterministic stream.
    let chunk_len = corpus.len().div_ceil(opts.threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = corpus
            .chunks(chunk_len)
            .enumerate()
            .map(|(idx, chunk)| {
                scope.spawn(move || -> Result<()> {
                    let mut rng =
                        RngStream::new(opts.seed ^ (idx as u64).wrapping_mul(0x9E3779B97F4A7C15));
                    for img in chunk {
                        std::hint::black_box(task.apply(img, &mut rng)?);
                    }
                    Ok(())
                })
            })
            .collect();
        for h in handles {
            h.join().expect("benchmark worker panicked")?;
        }
        Ok(())
    })
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    /// Hand-emitted JSON so all formats carry identical number strings.
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<ReportFormat> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json-like" | "json" => Ok(ReportFormat::Json),
            other => Err(Error::InvalidParameter(format!(
                "unknown format \"{other}\"; expected text, csv, or json-like"
            ))),
        }
    }
}

fn fmt_secs(v: f64) -> String {
    format!("{v:.6}")
}

/// Render the report. All formats carry identical numbers.
pub fn emit_report(report: &BenchReport, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Text => {
            let _ = writeln!(out, "{:<18} {:>12} {:>18}", "task", "seconds", "images_per_second");
            for e in &report.entries {
                let _ = writeln!(
                    out,
                    "{:<18} {:>12} {:>18}",
                    e.task,
                    fmt_secs(e.seconds),
                    fmt_secs(e.images_per_second)
                );
            }
            let _ = writeln!(
                out,
                "\ncorpus: {} images ({}); warmup: {}; repeats: {}",
                report.corpus_images, report.corpus_dims, report.warmup, report.repeats
            );
        }
        ReportFormat::Csv => {
            out.push_str("task,seconds,images_per_second\n");
            for e in &report.entries {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    e.task,
                    fmt_secs(e.seconds),
                    fmt_secs(e.images_per_second)
                );
            }
        }
        ReportFormat::Json => {
            let _ = writeln!(out, "{{");
            let _ = writeln!(
                out,
                "  \"corpus\": {{\"images\": {}, \"dims\": \"{}\"}},",
                report.corpus_images, report.corpus_dims
            );
            let _ = writeln!(out, "  \"warmup\": {},", report.warmup);
            let _ = writeln!(out, "  \"repeats\": {},", report.repeats);
            let _ = writeln!(out, "  \"results\": [");
            for (i, e) in report.entries.iter().enumerate() {
                let comma = if i + 1 < report.entries.len() { "," } else { "" };
                let _ = writeln!(
                    out,
                    "    {{\"task\": \"{}\", \"seconds\": {}, \"images_per_second\": {}}}{comma}",
                    e.task,
                    fmt_secs(e.seconds),
                    fmt_secs(e.images_per_second)
                );
            }
            let _ = writeln!(out, "  ]");
            let _ = writeln!(out, "}}");
        }
    }
    out
}

/// Deterministic random RGB corpus, in memory.
pub fn synthesize_corpus(n: usize, width: u32, height: u32, seed: u64) -> Vec<ImageBuffer> {
    let mut rng = RngStream::new(seed);
    let len = width as usize * height as usize * 3;
    (0..n)
        .map(|_| {
            let mut data = vec![0u8; len];
            for chunk in data.chunks_mut(8) {
                let bytes = rng.next_u64().to_le_bytes();
                chunk.copy_from_slice(&bytes[..chunk.len()]);
            }
            ImageBuffer::new(width, height, 3, data).expect("synthesized shape is valid")
        })
        .collect()
}

/// Write a deterministic corpus of `n` random PPM images into `dir`.
pub fn generate_corpus(
    dir: impl AsRef<Path>,
    n: usize,
    width: u32,
    height: u32,
    seed: u64,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    if n == 0 {
        return Err(Error::InvalidParameter("corpus size must be at least 1".into()));
    }
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths = Vec::with_capacity(n);
    for (i, img) in synthesize_corpus(n, width, height, seed).into_iter().enumerate() {
        let path = dir.join(format!("corpus_{i:05}.ppm"));
        pnm::save(&path, &img)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Load every `.ppm`/`.pnm` file in `dir`, sorted by file name. Only
/// 3-channel (P6) rasters are accepted as benchmark input.
pub fn load_corpus(dir: impl AsRef<Path>) -> Result<Vec<ImageBuffer>> {
    let dir = dir.as_ref();
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("ppm" | "pnm")
            )
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no .ppm images found in {}",
            dir.display()
        )));
    }
    paths
        .into_iter()
        .map(|p| match pnm::load(&p)? {
            pnm::PnmImage::Rgb(img) => Ok(img),
            pnm::PnmImage::Gray(_) => Err(Error::UnsupportedTarget(format!(
                "{}: benchmark corpus must be 3-channel P6",
                p.display()
            ))),
        })
        .collect()
}
