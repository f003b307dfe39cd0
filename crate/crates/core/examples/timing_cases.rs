//! Reruns the eight size/degree cases of the timing table with both
//! recursions. Each case is gated on the two outputs being identical.
//!
//! ```text
//! cargo run --release --example timing_cases -- [trials]
//! ```

use wmpinv::bench::{run_case, write_header, write_record, OutputFormat, BENCH_NOTE, TIMING_CASES};

fn main() -> wmpinv::error::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|t| t.parse().ok())
        .unwrap_or(3);
    eprintln!("{BENCH_NOTE}");
    let mut out = std::io::stdout().lock();
    write_header(&mut out, OutputFormat::Tsv)?;
    for (rows, cols, degree) in TIMING_CASES {
        for rec in run_case(rows, cols, degree, None, trials, 0)? {
            write_record(&mut out, &rec, OutputFormat::Tsv)?;
        }
    }
    Ok(())
}
