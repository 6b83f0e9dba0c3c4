//! Betti numbers rebuilt from critical points of the robot-arm distance map.

use polyspace::morse::{betti_from_decomposition, critical_points, decomposition, wa_homology};
use polyspace::{betti_vector, LengthVector};

fn main() -> polyspace::Result<()> {
    let l = LengthVector::parse("3,2,2,1,1")?;
    println!("critical points of f on the torus (long subsets J):");
    for p in critical_points(&l)? {
        println!(
            "  J = {:<12} index {}  value {}",
            p.subset.to_string(),
            p.index,
            p.value
        );
    }
    let wa = wa_homology(&l)?;
    let d = decomposition(&l)?;
    println!("i_max = {}", d.i_max);
    println!("grading  W^a  A  B  C  D  ker  coker");
    for i in 0..l.n() {
        println!(
            "{i:>7} {:>4} {:>2} {:>2} {:>2} {:>2} {:>4} {:>6}",
            wa.ranks[i],
            d.a[i],
            d.b[i],
            d.c[i],
            d.d[i],
            d.kernel_rank(i),
            d.cokernel_rank(i)
        );
    }
    let pipeline = betti_from_decomposition(&d);
    println!("pipeline {pipeline}, formula {}", betti_vector(&l)?);
    Ok(())
}
