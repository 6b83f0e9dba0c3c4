//! Sharp upper bounds on the total Betti number, with the asymptotic estimate.

use num_traits::ToPrimitive;
use polyspace::{bound_asymptotic, bound_total, bound_total_generic_even};

fn main() -> polyspace::Result<()> {
    println!(
        "{:>4} {:>24} {:>24} {:>10}",
        "n", "all vectors", "generic (n even)", "estimate"
    );
    for n in (4..=40).step_by(4).chain([64, 128]) {
        let b = bound_total(n)?;
        let g = bound_total_generic_even(n)?;
        let ratio = bound_asymptotic(n) / b.to_f64().unwrap_or(f64::INFINITY);
        println!("{n:>4} {b:>24} {g:>24} {ratio:>10.6}");
    }
    Ok(())
}
