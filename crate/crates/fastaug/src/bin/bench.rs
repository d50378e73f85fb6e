//! Benchmark CLI: time the transform task menu over an image corpus.
//!
//! ```text
//! bench run [--tasks a,b,...] [--corpus DIR | --generate N]
//!           [--width W --height H] [--warmup K] [--repeats R]
//!           [--seed S] [--threads T] [--format text|csv|json-like]
//!           [--out FILE]
//! ```
//!
//! Exit codes: 0 on success, 2 on usage error, 1 on runtime failure.

use fastaug::bench::{
    self, emit_report, load_corpus, synthesize_corpus, BenchOptions, BenchTask, ReportFormat,
};
use std::process::ExitCode;

const USAGE: &str = "\
usage: bench run [options]

options:
  --tasks a,b,...      comma-separated task names (default: all)
  --corpus DIR         load a .ppm corpus from DIR
  --generate N         synthesize an N-image random corpus instead
  --width W            generated image width (default 512)
  --height H           generated image height (default 512)
  --warmup K           untimed passes per task (default 1)
  --repeats R          timed passes per task, median reported (default 5)
  --seed S             seed for corpus synthesis and per-pass randomness (default 0)
  --threads T          worker threads per pass (default 1; timing contract is single-threaded)
  --format FMT         text | csv | json-like (default text)
  --out FILE           write the report to FILE instead of stdout

tasks:
  RandomCrop64 PadToSize512 HorizontalFlip VerticalFlip Rotate
  ShiftScaleRotate Brightness ShiftHSV ShiftRGB Gamma Grayscale";

struct Args {
    tasks: Vec<BenchTask>,
    corpus_dir: Option<String>,
    generate: Option<usize>,
    width: u32,
    height: u32,
    opts: BenchOptions,
    format: ReportFormat,
    out: Option<String>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}\n\n{USAGE}");
    ExitCode::from(2)
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut args = Args {
        tasks: BenchTask::all(),
        corpus_dir: None,
        generate: None,
        width: 512,
        height: 512,
        opts: BenchOptions::default(),
        format: ReportFormat::Text,
        out: None,
    };
    let mut it = argv.iter();
    while let Some(flag) = it.next() {
        let mut value = || {
            it.next()
                .map(String::as_str)
                .ok_or_else(|| format!("{flag} needs a value"))
        };
        match flag.as_str() {
            "--tasks" => {
                let list = value()?;
                args.tasks = list
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(BenchTask::by_name)
                    .collect::<fastaug::Result<_>>()
                    .map_err(|e| e.to_string())?;
            }
            "--corpus" => args.corpus_dir = Some(value()?.to_string()),
            "--generate" => {
                args.generate = Some(parse_num(flag, value()?)?);
            }
            "--width" => args.width = parse_num(flag, value()?)?,
            "--height" => args.height = parse_num(flag, value()?)?,
            "--warmup" => args.opts.warmup = parse_num(flag, value()?)?,
            "--repeats" => args.opts.repeats = parse_num(flag, value()?)?,
            "--seed" => args.opts.seed = parse_num(flag, value()?)?,
            "--threads" => args.opts.threads = parse_num(flag, value()?)?,
            "--format" => args.format = ReportFormat::parse(value()?).map_err(|e| e.to_string())?,
            "--out" => args.out = Some(value()?.to_string()),
            other => return Err(format!("unknown option {other}")),
        }
    }
    if args.corpus_dir.is_some() && args.generate.is_some() {
        return Err("--corpus and --generate are mutually exclusive".into());
    }
    if args.opts.repeats < 1 {
        return Err("--repeats must be at least 1".into());
    }
    if args.width < 1 || args.height < 1 {
        return Err("--width and --height must be at least 1".into());
    }
    if args.generate == Some(0) {
        return Err("--generate needs at least 1 image".into());
    }
    Ok(args)
}

fn parse_num<T: std::str::FromStr>(flag: &str, raw: &str) -> Result<T, String> {
    raw.parse()
        .map_err(|_| format!("{flag}: invalid value \"{raw}\""))
}

fn run(args: Args) -> fastaug::Result<String> {
    let corpus = match (&args.corpus_dir, args.generate) {
        (Some(dir), None) => {
            eprintln!("loading corpus from {dir} ...");
            load_corpus(dir)?
        }
        (None, generate) => {
            let n = generate.unwrap_or(1000);
            eprintln!(
                "generating {n} random {}x{} images (seed {}) ...",
                args.width, args.height, args.opts.seed
            );
            synthesize_corpus(n, args.width, args.height, args.opts.seed)
        }
        (Some(_), Some(_)) => unreachable!("rejected during parsing"),
    };
    eprintln!(
        "timing {} task(s): {} warmup + {} repeats over {} images",
        args.tasks.len(),
        args.opts.warmup,
        args.opts.repeats,
        corpus.len()
    );
    let report = bench::run(&args.tasks, &corpus, &args.opts)?;
    Ok(emit_report(&report, args.format))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match argv.first().map(String::as_str) {
        Some("run") => {}
        Some("--help") | Some("-h") | Some("help") => {
            println!("{USAGE}");
            return ExitCode::SUCCESS;
        }
        Some(other) => return usage_error(&format!("unknown subcommand \"{other}\"")),
        None => return usage_error("missing subcommand"),
    }
    let args = match parse_args(&argv[1..]) {
        Ok(args) => args,
        Err(msg) => return usage_error(&msg),
    };
    let out_path = args.out.clone();
    match run(args) {
        Ok(rendered) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, rendered) {
                    eprintln!("error: {path}: {e}");
                    return ExitCode::FAILURE;
                }
                eprintln!("report written to {path}");
            } else {
                print!("{rendered}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
