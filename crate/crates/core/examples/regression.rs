//! Runs the numbered regression checks through the library, as the
//! `verify-paper` subcommand does, and prints one line per check.
//!
//! Pass check ids to run a subset: `cargo run --release --example regression -- 1 4`.

use svlie::suite::{run_criterion, SuiteConfig, CRITERIA};

fn main() {
    let cfg = SuiteConfig::default();
    let ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=CRITERIA.len() as u8).collect() } else { ids };
    for id in ids {
        let r = run_criterion(id, &cfg);
        println!("{} {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail);
    }
}
