//! Exhaustive search for one-type WDR circulants, compared with the known
//! families, using a resumable cache.
//!
//! cargo run --release --example classify -- 3 20

use circulant_wdr::classify::{verify_main2, SearchOptions};

fn main() -> circulant_wdr::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>());
    let n_min = args.next().and_then(|a| a.ok()).unwrap_or(3);
    let n_max = args.next().and_then(|a| a.ok()).unwrap_or(16);
    let cache = std::env::temp_dir().join("wdr-classify-example.jsonl");
    let opts = SearchOptions {
        jobs: 0,
        cache: Some(cache.clone()),
        ..SearchOptions::default()
    };
    let reports = verify_main2(n_min, n_max, &opts)?;
    for r in &reports {
        print!("{r}");
    }
    let hits: u64 = reports.iter().map(|r| r.cache_hits).sum();
    println!("cache {} ({hits} hits)", cache.display());
    println!("all pass: {}", reports.iter().all(|r| r.passed()));
    Ok(())
}
