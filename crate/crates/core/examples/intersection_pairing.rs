//! The 0/1 pairing between complementary bases containing a longest link.

use polyspace::morse::{basis_with, is_permutation_matrix, pairing_matrix};

fn main() -> polyspace::Result<()> {
    let (n, i_max) = (5, 5);
    for size in 1..=n {
        let m = pairing_matrix(n, i_max, size)?;
        let rows = basis_with(n, i_max, size);
        let cols = basis_with(n, i_max, n + 1 - size);
        println!(
            "|J| = {size}: {}x{} permutation {}",
            rows.len(),
            cols.len(),
            is_permutation_matrix(&m)
        );
        if size == 2 {
            for (j, row) in rows.iter().zip(&m) {
                let partner = cols.iter().zip(row).find(|(_, &x)| x == 1).map(|(k, _)| *k);
                println!(
                    "  {j} <-> {}",
                    partner.map_or("-".into(), |k| k.to_string())
                );
            }
        }
    }
    Ok(())
}
