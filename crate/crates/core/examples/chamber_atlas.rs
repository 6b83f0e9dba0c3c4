//! Sample chambers for n = 6, save them as JSON lines and report the extremes.

use std::io::BufReader;

use polyspace::atlas::{atlas_extremes, sample_atlas, Atlas};

fn main() -> polyspace::Result<()> {
    let mut atlas = sample_atlas(6, 50_000, 30, 42)?;
    atlas.seed_extremal()?;
    let path = std::env::temp_dir().join("polyspace-atlas-6.jsonl");
    atlas.write_jsonl(std::fs::File::create(&path)?)?;
    let reloaded = Atlas::read_jsonl(BufReader::new(std::fs::File::open(&path)?))?;
    let report = atlas_extremes(&reloaded)?;
    println!("{} chambers written to {}", reloaded.len(), path.display());
    println!(
        "max total {} at {} (bound {})",
        report.max_total, report.argmax, report.bound
    );
    if let (Some(t), Some(v), Some(b)) = (
        &report.max_generic_total,
        &report.argmax_generic,
        &report.bound_generic,
    ) {
        println!("max generic total {t} at {v} (bound {b})");
    }
    println!("bound violations: {}", report.violations.len());
    Ok(())
}
