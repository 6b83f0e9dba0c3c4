//! Equilateral polygon spaces: Betti vectors and their totals.

use polyspace::{bound_total, equilateral_betti, LengthVector};

fn main() -> polyspace::Result<()> {
    for n in 3..=14 {
        let b = equilateral_betti(n)?;
        let direct = polyspace::betti_vector(&LengthVector::equilateral(n)?)?;
        assert_eq!(b, direct);
        println!(
            "n = {n:>2}  total {:>5} (bound {:>5})  {b}",
            b.total(),
            bound_total(n)?
        );
    }
    Ok(())
}
