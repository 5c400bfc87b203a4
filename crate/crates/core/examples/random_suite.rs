//! Runs the randomized battery and prints per-check pass counts.
//!
//! cargo run --release --example random_suite -- [trials] [seed]

use nf_pairing::suite::run_suite;
use nf_pairing::symplectic::Ring;

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let summary = run_suite(seed, trials, Ring::Integers, 1);
    for (check, passes) in &summary.check_passes {
        println!("{check:<12} {passes}/{trials}");
    }
    println!(
        "passed {}/{} in {:.0} ms (p50 {:.1} ms, p90 {:.1} ms)",
        summary.passed, trials, summary.timing.total_ms, summary.timing.p50_ms, summary.timing.p90_ms
    );
}
