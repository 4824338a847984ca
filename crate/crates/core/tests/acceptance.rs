//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test --test acceptance -- 6 8` runs a subset.

use fatsph::cli::accept;

fn main() {
    let mut ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if ids.is_empty() {
        ids = accept::ALL.to_vec();
    }
    let results = accept::run(&ids, &mut |r| println!("{}", r.line()));
    let failed: Vec<u8> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if let Some(kib) = accept::peak_rss_kib() {
        println!("peak RSS {:.0} MiB", kib as f64 / 1024.0);
    }
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria pass", results.len(), results.len());
    } else {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
