//! Enumeration vs subset-sum dynamic programming, and a large DP run.

use std::time::Instant;

use polyspace::census::{census_dp, census_naive};
use polyspace::{betti_vector, LengthVector};

fn main() -> polyspace::Result<()> {
    let l = LengthVector::parse("7,11,13,17,19,23,29,31,37,41,43,47,53,59,61,67,71,73,79,83")?;
    let t = Instant::now();
    let naive = census_naive(&l)?;
    let naive_time = t.elapsed();
    let t = Instant::now();
    let dp = census_dp(&l)?;
    println!(
        "n = 20 primes: naive {naive_time:?}, dp {:?}, agree {}",
        t.elapsed(),
        naive == dp
    );

    let t = Instant::now();
    let big = betti_vector(&LengthVector::equilateral(301)?)?;
    println!(
        "n = 301 equilateral: total Betti number has {} digits ({:?})",
        big.total().to_string().len(),
        t.elapsed()
    );
    println!("middle rank: {}", big.ranks[149]);
    Ok(())
}
