//! Betti numbers re-derived through the Morse theory of the robot-arm
//! distance map.
//!
//! The critical points of `f_ℓ = −|Σ l_i u_i|²` away from the polygon space
//! are the collinear configurations `p_J` of long subsets `J`, with Morse
//! index `n − |J|`. The torus `W` of arm shapes has the basis `[W_J]`
//! (`J ∋ i_max`); the sublevel set `W^a` below every critical value has the
//! basis `[W_J]` (`J` long). Grading both bases by `n − |J|` and sorting them
//! into long-with / long-without / short / median classes gives the kernel
//! and cokernel ranks of `H_*(W^a) → H_*(W)`, hence the Betti numbers, with
//! no reference to the census code.

use num_bigint::{BigInt, BigUint};

use crate::betti::BettiVector;
use crate::error::{Error, Result};
use crate::model::{LengthVector, SubsetClass, SubsetMask};

/// Largest `n` accepted by the enumeration in this module.
pub const MORSE_MAX_LINKS: usize = 25;

/// A collinear critical configuration `p_J` for a long subset `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub subset: SubsetMask,
    /// Morse index `n − |J|`.
    pub index: usize,
    /// `L_J = Σ_{i∈J} l_i − Σ_{i∉J} l_i`, positive for long `J`.
    pub excess: u128,
    /// `f_ℓ(p_J) = −L_J²`.
    pub value: BigInt,
}

fn check_budget(lengths: &LengthVector) -> Result<()> {
    if lengths.n() > MORSE_MAX_LINKS {
        return Err(Error::Budget {
            what: "morse pipeline",
            detail: format!("n = {} exceeds {MORSE_MAX_LINKS}", lengths.n()),
        });
    }
    Ok(())
}

/// All critical points off the polygon space, sorted by `(index, mask)`.
pub fn critical_points(lengths: &LengthVector) -> Result<Vec<CriticalPoint>> {
    check_budget(lengths)?;
    let n = lengths.n();
    let mut points: Vec<CriticalPoint> = lengths
        .all_masks()?
        .filter(|&m| lengths.classify_subset(m) == SubsetClass::Long)
        .map(|m| {
            let excess = lengths.signed_excess(m) as u128;
            let l = BigInt::from(excess);
            CriticalPoint {
                subset: m,
                index: n - m.cardinality(),
                excess,
                value: -(&l * &l),
            }
        })
        .collect();
    points.sort_by_key(|p| (p.index, p.subset.bits()));
    Ok(points)
}

/// Ranks of `H_i(W^a; Z)`, `i = 0..n-1`: the number of long subsets of
/// cardinality `n − i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaHomology {
    pub ranks: Vec<u64>,
}

pub fn wa_homology(lengths: &LengthVector) -> Result<WaHomology> {
    let mut ranks = vec![0u64; lengths.n()];
    for p in critical_points(lengths)? {
        ranks[p.index] += 1;
    }
    Ok(WaHomology { ranks })
}

/// Per-grading ranks of the four basis classes, graded by `i = n − |J|`.
///
/// * `a[i]`: long `J ∋ i_max`
/// * `b[i]`: long `J ∌ i_max`
/// * `c[i]`: short `J ∋ i_max`
/// * `d[i]`: median `J ∋ i_max`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRanks {
    pub i_max: usize,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
}

impl DecompositionRanks {
    /// Rank of the kernel of `H_i(W^a) → H_i(W)`.
    pub fn kernel_rank(&self, i: usize) -> u64 {
        self.b[i]
    }

    /// Rank of the cokernel of `H_i(W^a) → H_i(W)`.
    pub fn cokernel_rank(&self, i: usize) -> u64 {
        self.c[i] + self.d[i]
    }
}

pub fn decomposition(lengths: &LengthVector) -> Result<DecompositionRanks> {
    check_budget(lengths)?;
    let n = lengths.n();
    let i_max = lengths.max_index();
    let mut ranks = DecompositionRanks {
        i_max,
        a: vec![0; n],
        b: vec![0; n],
        c: vec![0; n],
        d: vec![0; n],
    };
    for m in lengths.all_masks()? {
        let grading = n - m.cardinality();
        // The empty set has grading n, outside W; it never contains i_max and is short.
        if grading == n {
            continue;
        }
        let slot = match (lengths.classify_subset(m), m.contains(i_max)) {
            (SubsetClass::Long, true) => &mut ranks.a,
            (SubsetClass::Long, false) => &mut ranks.b,
            (SubsetClass::Short, true) => &mut ranks.c,
            (SubsetClass::Median, true) => &mut ranks.d,
            (_, false) => continue,
        };
        slot[grading] += 1;
    }
    Ok(ranks)
}

/// `rank H^j(M_ℓ) = rk coker φ_{n-1-j} + rk ker φ_{n-2-j}`.
pub fn betti_via_pipeline(lengths: &LengthVector) -> Result<BettiVector> {
    let ranks = decomposition(lengths)?;
    Ok(betti_from_decomposition(&ranks))
}

pub fn betti_from_decomposition(ranks: &DecompositionRanks) -> BettiVector {
    let n = ranks.a.len();
    BettiVector {
        ranks: (0..=n - 3)
            .map(|j| BigUint::from(ranks.cokernel_rank(n - 1 - j) + ranks.kernel_rank(n - 2 - j)))
            .collect(),
    }
}

/// Absolute intersection number `|[W_J] · [W_J']|` of two basis classes of
/// complementary dimension: 1 if `J ∩ J' = {i_max}`, otherwise 0.
pub fn intersection_pairing(
    n: usize,
    i_max: usize,
    first: SubsetMask,
    second: SubsetMask,
) -> Result<u8> {
    if i_max == 0 || i_max > n {
        return Err(Error::Precondition(format!(
            "i_max = {i_max} outside 1..={n}"
        )));
    }
    if first.n() != n || second.n() != n {
        return Err(Error::Precondition(
            "subset masks built for a different n".into(),
        ));
    }
    if !first.contains(i_max) || !second.contains(i_max) {
        return Err(Error::Precondition(format!(
            "both subsets must contain i_max = {i_max}"
        )));
    }
    if first.cardinality() + second.cardinality() != n + 1 {
        return Err(Error::Precondition(format!(
            "|J| + |J'| = {} but complementary dimensions need {}",
            first.cardinality() + second.cardinality(),
            n + 1
        )));
    }
    let meet = first.intersection(second);
    Ok(u8::from(meet.cardinality() == 1))
}

/// The dual basis element `CJ ∪ {i_max}`.
pub fn dual_subset(i_max: usize, subset: SubsetMask) -> SubsetMask {
    subset.complement().with(i_max)
}

/// Subsets of cardinality `size` containing `i_max`, in mask order.
pub fn basis_with(n: usize, i_max: usize, size: usize) -> Vec<SubsetMask> {
    (0u64..1 << n)
        .filter(|b| b.count_ones() as usize == size && b >> (i_max - 1) & 1 == 1)
        .map(|b| SubsetMask::new(n, b).expect("within n"))
        .collect()
}

/// The 0/1 pairing matrix between the bases of cardinality `size` and
/// `n + 1 − size`, both containing `i_max`.
pub fn pairing_matrix(n: usize, i_max: usize, size: usize) -> Result<Vec<Vec<u8>>> {
    if n > 20 || size == 0 || size > n {
        return Err(Error::Precondition(format!(
            "pairing matrix needs 1 <= size <= n <= 20, got size {size}, n {n}"
        )));
    }
    let rows = basis_with(n, i_max, size);
    let cols = basis_with(n, i_max, n + 1 - size);
    rows.iter()
        .map(|&j| {
            cols.iter()
                .map(|&k| intersection_pairing(n, i_max, j, k))
                .collect()
        })
        .collect()
}

pub fn is_permutation_matrix(matrix: &[Vec<u8>]) -> bool {
    let size = matrix.len();
    let rows_ok = matrix.iter().all(|row| {
        row.len() == size
            && row.iter().filter(|&&x| x == 1).count() == 1
            && row.iter().all(|&x| x <= 1)
    });
    let cols_ok = (0..size).all(|c| matrix.iter().filter(|row| row[c] == 1).count() == 1);
    rows_ok && cols_ok
}
