//! Runs every numbered reproduction check and prints one PASS/FAIL line per
//! check. Exits nonzero if any check fails or errors.
//!
//! Every comparison is exact (integer or rational arithmetic), so there are
//! no floating tolerances to pin.

use std::process::ExitCode;
use std::time::Instant;

use cliffweil::reproduce::{run, Config, CRITERIA};

fn main() -> ExitCode {
    // `cargo test -- <filter>` runs only criteria whose number or group matches
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let cfg = Config::default();
    let mut failed = Vec::new();
    let mut ran = 0;
    for c in CRITERIA {
        if !filters.is_empty() && !filters.iter().any(|f| *f == c.id.to_string() || f == c.group) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        match run(c.id, &cfg) {
            Ok(r) => {
                println!("{}  [{:.1}s]", r.line(), start.elapsed().as_secs_f64());
                if !r.passed {
                    failed.push(c.id);
                }
            }
            Err(e) => {
                println!("criterion {:>2} FAIL  {}: error: {e}", c.id, c.name);
                failed.push(c.id);
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}
