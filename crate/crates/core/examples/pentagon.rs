//! Betti numbers, Poincaré polynomial and topology of a few pentagon spaces.

use polyspace::{betti_vector, component_count, is_empty, pentagon_genus, poincare, LengthVector};

fn main() -> polyspace::Result<()> {
    for text in [
        "3,2,2,1,1",
        "1,1,1,1,1",
        "1,1,1,1,3",
        "1,1,3,3,3",
        "1,1,1,1,9",
    ] {
        let l = LengthVector::parse(text)?;
        let b = betti_vector(&l)?;
        let p = poincare(&l)?;
        let genus = pentagon_genus(&l).map_or("-".to_string(), |g| g.to_string());
        println!(
            "{text:>10}  betti {b:<9} p(t) = {:<14} components {}  empty {}  genus {genus}",
            p.render(),
            component_count(&l),
            is_empty(&l),
        );
    }
    Ok(())
}
