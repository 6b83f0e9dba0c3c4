//! Gradients, Hessian signatures and critical values at collinear configurations.

use polyspace::model::SubsetClass;
use polyspace::numeric::{collinear_config, f_arm, grad_f, morse_index_numeric};
use polyspace::LengthVector;

fn main() -> polyspace::Result<()> {
    let l = LengthVector::parse("4,3,3,2,1,1")?;
    let scale = (l.total() as f64).powi(2);
    println!(
        "{:<16} {:>5} {:>10} {:>12} {:>12}",
        "J", "index", "n-|J|", "f(p_J)", "|grad|/S^2"
    );
    for m in l.all_masks()? {
        if l.classify_subset(m) != SubsetClass::Long {
            continue;
        }
        let c = collinear_config(m);
        let g = grad_f(&l, &c).iter().fold(0.0f64, |a, x| a.max(x.abs()));
        println!(
            "{:<16} {:>5} {:>10} {:>12.3} {:>12.1e}",
            m.to_string(),
            morse_index_numeric(&l, m)?,
            l.n() - m.cardinality(),
            f_arm(&l, &c),
            g / scale
        );
    }
    Ok(())
}
