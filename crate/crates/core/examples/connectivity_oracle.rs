//! Monte-Carlo component count compared with the exact criterion.

use polyspace::numeric::sample_closed_configurations;
use polyspace::{component_count, sample_components, LengthVector};

fn main() -> polyspace::Result<()> {
    for text in ["3,2,2,1,1", "1,1,3,3,3", "1,1,1,9", "1,1,1,1", "1,2,2,2,4"] {
        let l = LengthVector::parse(text)?;
        let report = sample_closed_configurations(&l, 2000, 1e-3, 7)?;
        let sampled = sample_components(&l, 2000, 1e-3, 1.0, 7)?;
        println!(
            "{text:>12}: exact {}  sampled {sampled}  ({} closed, {} stalled)",
            component_count(&l),
            report.closed.len(),
            report.stalled
        );
    }
    Ok(())
}
