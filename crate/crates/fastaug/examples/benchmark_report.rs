//! Drive the benchmark harness from code (the `bench` binary wraps the
//! same API) and render one report in all three formats.
//!
//! ```bash
//! cargo run --release --example benchmark_report
//! ```

use fastaug::bench::{emit_report, run, synthesize_corpus, BenchOptions, BenchTask, ReportFormat};

fn main() -> fastaug::Result<()> {
    // Small corpus so the example finishes quickly; the CLI defaults to
    // 1000 images at 512x512.
    let corpus = synthesize_corpus(32, 256, 256, 0);
    let tasks = [
        BenchTask::by_name("RandomCrop64")?,
        BenchTask::by_name("HorizontalFlip")?,
        BenchTask::by_name("Rotate")?,
        BenchTask::by_name("Gamma")?,
    ];
    let opts = BenchOptions {
        warmup: 1,
        repeats: 3,
        seed: 0,
        threads: 1,
    };
    let report = run(&tasks, &corpus, &opts)?;

    println!("{}", emit_report(&report, ReportFormat::Text));
    println!("--- csv ---\n{}", emit_report(&report, ReportFormat::Csv));
    println!("--- json-like ---\n{}", emit_report(&report, ReportFormat::Json));
    Ok(())
}
