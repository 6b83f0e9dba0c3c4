//! Counting short and median subsets that contain a longest link.
//!
//! Two independent backends produce the same [`Census`]: a direct
//! enumeration over all `2^(n-1)` subsets containing the longest link, and a
//! subset-sum dynamic program over `(cardinality, sum)` pairs that scales to
//! hundreds of links. The prefix-constrained counts `S_i`, `M_i` used by the
//! total-Betti bounds live here as well.

use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{LengthVector, SubsetClass};

/// Largest `n` accepted by the enumeration backends.
pub const NAIVE_MAX_LINKS: usize = 30;

/// Default cap on `n² · total` for the dynamic program.
pub const DEFAULT_CELL_CAP: u128 = 1_000_000_000;

/// Which census implementation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    Naive,
    #[default]
    Dp,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Backend::Naive),
            "dp" => Ok(Backend::Dp),
            other => Err(Error::Precondition(format!("unknown backend {other:?}"))),
        }
    }
}

/// Counts of short (`a`) and median (`b`) subsets containing `i_max`.
///
/// Slot `k` holds subsets of cardinality `k + 1`, for `k = 0..=n-3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// 1-based index of the chosen longest link.
    pub i_max: usize,
    pub a: Vec<BigUint>,
    pub b: Vec<BigUint>,
    /// Short / median subsets of cardinality `n - 1` or `n` containing
    /// `i_max`. These fall outside the window and are zero for every `n >= 3`.
    pub overflow_short: BigUint,
    pub overflow_median: BigUint,
    /// Long subsets containing `i_max`, over all cardinalities.
    pub long: BigUint,
}

impl Census {
    pub fn total_short(&self) -> BigUint {
        self.a.iter().sum::<BigUint>() + &self.overflow_short
    }

    pub fn total_median(&self) -> BigUint {
        self.b.iter().sum::<BigUint>() + &self.overflow_median
    }
}

pub fn census(lengths: &LengthVector, backend: Backend) -> Result<Census> {
    match backend {
        Backend::Naive => census_naive(lengths),
        Backend::Dp => census_dp(lengths),
    }
}

/// Census by enumeration of every subset containing the longest link.
pub fn census_naive(lengths: &LengthVector) -> Result<Census> {
    let n = lengths.n();
    if n > NAIVE_MAX_LINKS {
        return Err(Error::Budget {
            what: "census_naive",
            detail: format!("n = {n} exceeds {NAIVE_MAX_LINKS}; use census_dp"),
        });
    }
    let i_max = lengths.max_index();
    let pinned = lengths.length(i_max);
    let others: Vec<u64> = (1..=n)
        .filter(|&i| i != i_max)
        .map(|i| lengths.length(i))
        .collect();

    let tallies = enumerate_classes(&others, pinned, lengths.total());
    let mut census = Census {
        n,
        i_max,
        a: vec![BigUint::zero(); n - 2],
        b: vec![BigUint::zero(); n - 2],
        overflow_short: BigUint::zero(),
        overflow_median: BigUint::zero(),
        long: BigUint::zero(),
    };
    for (extra, t) in tallies.iter().enumerate() {
        // `extra` links besides i_max: cardinality extra + 1, slot k = extra.
        if extra <= n - 3 {
            census.a[extra] = BigUint::from(t.short);
            census.b[extra] = BigUint::from(t.median);
        } else {
            census.overflow_short += t.short;
            census.overflow_median += t.median;
        }
        census.long += t.long;
    }
    Ok(census)
}

#[derive(Debug, Clone, Copy, Default)]
struct ClassTally {
    short: u64,
    median: u64,
    long: u64,
}

/// Tallies classes of `{pinned} ∪ K` for every `K ⊂ others`, indexed by `|K|`.
///
/// The range of `K` is split into fixed-size blocks whose per-block tallies
/// are summed, so the result does not depend on the worker count.
fn enumerate_classes(others: &[u64], pinned: u64, total: u64) -> Vec<ClassTally> {
    let m = others.len();
    let low = m.min(12);
    let low_sums = partial_sums(&others[..low]);
    let high = &others[low..];
    let blocks = 1u64 << (m - low);
    let total = total as u128;

    let merge = |mut x: Vec<ClassTally>, y: Vec<ClassTally>| {
        for (a, b) in x.iter_mut().zip(y) {
            a.short += b.short;
            a.median += b.median;
            a.long += b.long;
        }
        x
    };
    (0..blocks)
        .into_par_iter()
        .map(|h| {
            let mut out = vec![ClassTally::default(); m + 1];
            let mut high_sum = pinned as u128;
            for (j, &w) in high.iter().enumerate() {
                if h >> j & 1 == 1 {
                    high_sum += w as u128;
                }
            }
            let high_card = h.count_ones() as usize;
            for (lo, &s) in low_sums.iter().enumerate() {
                let card = high_card + (lo as u64).count_ones() as usize;
                let t = &mut out[card];
                match SubsetClass::from_doubled(2 * (high_sum + s as u128), total) {
                    SubsetClass::Short => t.short += 1,
                    SubsetClass::Median => t.median += 1,
                    SubsetClass::Long => t.long += 1,
                }
            }
            out
        })
        .reduce(|| vec![ClassTally::default(); m + 1], merge)
}

/// Sum of every subset of `weights`, indexed by bitmask.
fn partial_sums(weights: &[u64]) -> Vec<u64> {
    let mut sums = vec![0u64; 1 << weights.len()];
    for mask in 1..sums.len() {
        let bit = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + weights[bit];
    }
    sums
}

/// Counter type for the dynamic program; `u128` whenever counts cannot
/// exceed `2^127`, arbitrary precision otherwise.
trait Tally: Clone + Zero + One + for<'a> AddAssign<&'a Self> + Into<BigUint> {}
impl Tally for u128 {}
impl Tally for BigUint {}

/// `table[c][s]` = number of sub-multisets of `weights` with `c` elements
/// and sum exactly `s`, for `s <= max_sum`.
fn cardinality_sum_table<C: Tally>(weights: &[u64], max_sum: usize) -> Vec<Vec<C>> {
    let m = weights.len();
    let mut table = vec![vec![C::zero(); max_sum + 1]; m + 1];
    table[0][0] = C::one();
    for (seen, &w) in weights.iter().enumerate() {
        if w as u128 > max_sum as u128 {
            continue;
        }
        let w = w as usize;
        for c in (0..=seen).rev() {
            let (lower, upper) = table.split_at_mut(c + 1);
            let (src, dst) = (&lower[c], &mut upper[0]);
            for s in (0..=max_sum - w).rev() {
                if !src[s].is_zero() {
                    dst[s + w] += &src[s];
                }
            }
        }
    }
    table
}

/// Census by subset-sum dynamic programming (default cell cap).
pub fn census_dp(lengths: &LengthVector) -> Result<Census> {
    census_dp_with_cap(lengths, DEFAULT_CELL_CAP)
}

/// Census by dynamic programming over `(cardinality, sum)` of the links
/// other than `i_max`.
///
/// `{i_max} ∪ K` is short iff `2 (Σ_K + l_max) < total`, median iff equal.
/// Sums past that threshold are long and never stored.
pub fn census_dp_with_cap(lengths: &LengthVector, cell_cap: u128) -> Result<Census> {
    let n = lengths.n();
    let total = lengths.total() as u128;
    let cells = (n as u128) * (n as u128) * total;
    if cells > cell_cap {
        return Err(Error::Budget {
            what: "census_dp",
            detail: format!("n²·total = {cells} exceeds cell cap {cell_cap}"),
        });
    }
    let i_max = lengths.max_index();
    let pinned = lengths.length(i_max) as u128;
    let others: Vec<u64> = (1..=n)
        .filter(|&i| i != i_max)
        .map(|i| lengths.length(i))
        .collect();

    let mut census = Census {
        n,
        i_max,
        a: vec![BigUint::zero(); n - 2],
        b: vec![BigUint::zero(); n - 2],
        overflow_short: BigUint::zero(),
        overflow_median: BigUint::zero(),
        long: BigUint::zero(),
    };

    if 2 * pinned <= total {
        let max_sum = ((total - 2 * pinned) / 2) as usize;
        let rows: Vec<Vec<BigUint>> = if n <= 127 {
            into_big(cardinality_sum_table::<u128>(&others, max_sum))
        } else {
            cardinality_sum_table::<BigUint>(&others, max_sum)
        };
        for (extra, row) in rows.iter().enumerate() {
            let mut short = BigUint::zero();
            let mut median = BigUint::zero();
            for (s, count) in row.iter().enumerate() {
                match SubsetClass::from_doubled(2 * (s as u128 + pinned), total) {
                    SubsetClass::Short => short += count,
                    SubsetClass::Median => median += count,
                    SubsetClass::Long => {}
                }
            }
            if extra <= n - 3 {
                census.a[extra] = short;
                census.b[extra] = median;
            } else {
                census.overflow_short += short;
                census.overflow_median += median;
            }
        }
    }
    let all = BigUint::one() << (n - 1);
    census.long = all - census.total_short() - census.total_median();
    Ok(census)
}

fn into_big(table: Vec<Vec<u128>>) -> Vec<Vec<BigUint>> {
    table
        .into_iter()
        .map(|row| row.into_iter().map(BigUint::from).collect())
        .collect()
}

/// Short and median counts among subsets of the ascending-sorted vector
/// containing its last `i` links `{n-i+1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCensus {
    pub i: usize,
    pub short: BigUint,
    pub median: BigUint,
}

/// `r = ⌊(n-1)/2⌋`.
pub fn half_rank(n: usize) -> usize {
    (n - 1) / 2
}

pub fn prefix_census(lengths: &LengthVector, i: usize) -> Result<PrefixCensus> {
    let (sorted, free, fixed) = prefix_split(lengths, i)?;
    if free.len() <= NAIVE_MAX_LINKS {
        let tallies = enumerate_classes(&free, fixed, sorted.total());
        let short: u64 = tallies.iter().map(|t| t.short).sum();
        let median: u64 = tallies.iter().map(|t| t.median).sum();
        Ok(PrefixCensus {
            i,
            short: short.into(),
            median: median.into(),
        })
    } else {
        prefix_census_dp(lengths, i)
    }
}

/// Same counts as [`prefix_census`], always via dynamic programming.
pub fn prefix_census_dp(lengths: &LengthVector, i: usize) -> Result<PrefixCensus> {
    let (sorted, free, fixed) = prefix_split(lengths, i)?;
    let total = sorted.total() as u128;
    let fixed = fixed as u128;
    let mut out = PrefixCensus {
        i,
        short: BigUint::zero(),
        median: BigUint::zero(),
    };
    if 2 * fixed > total {
        return Ok(out);
    }
    let max_sum = ((total - 2 * fixed) / 2) as usize;
    for row in cardinality_sum_table::<BigUint>(&free, max_sum) {
        for (s, count) in row.iter().enumerate() {
            match SubsetClass::from_doubled(2 * (s as u128 + fixed), total) {
                SubsetClass::Short => out.short += count,
                SubsetClass::Median => out.median += count,
                SubsetClass::Long => {}
            }
        }
    }
    Ok(out)
}

fn prefix_split(lengths: &LengthVector, i: usize) -> Result<(LengthVector, Vec<u64>, u64)> {
    let n = lengths.n();
    let r = half_rank(n);
    if i == 0 || i > r + 1 {
        return Err(Error::Precondition(format!(
            "prefix index i = {i} outside 1..={}",
            r + 1
        )));
    }
    let (sorted, _) = lengths.sorted();
    let (free, fixed) = sorted.lengths().split_at(n - i);
    Ok((sorted.clone(), free.to_vec(), fixed.iter().sum()))
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Right-hand side of `2·S_i + M_i <= 2^(n-i) − Σ_{j=r-i+1}^{r} C(n-i, j)`.
pub fn prefix_bound(n: usize, i: usize) -> BigUint {
    let r = half_rank(n);
    let sub: BigUint = (r + 1 - i..=r).map(|j| binomial(n - i, j)).sum();
    (BigUint::one() << (n - i)) - sub
}

/// Right-hand side of `2·S_i <= 2^(n-i) − 2 Σ_{j=r-i+1}^{r} C(n-i-1, j)`,
/// valid for generic vectors with `n` even.
pub fn prefix_bound_generic_even(n: usize, i: usize) -> BigUint {
    let r = half_rank(n);
    let sub: BigUint = (r + 1 - i..=r).map(|j| binomial(n - i - 1, j)).sum();
    (BigUint::one() << (n - i)) - (sub << 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[u64]) -> LengthVector {
        LengthVector::new(v.to_vec()).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn pentagon_census() {
        for backend in [Backend::Naive, Backend::Dp] {
            let c = census(&lv(&[3, 2, 2, 1, 1]), backend).unwrap();
            assert_eq!(c.i_max, 1);
            assert_eq!(c.a, big(&[1, 2, 0]));
            assert_eq!(c.b, big(&[0, 0, 0]));
            assert_eq!(c.long, BigUint::from(13u32));
        }
    }

    #[test]
    fn equilateral_census() {
        let c = census_naive(&lv(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(c.a, big(&[1, 4, 0]));
        assert_eq!(c.b, big(&[0, 0, 0]));
        let c = census_naive(&lv(&[1, 1, 1, 1])).unwrap();
        assert_eq!(c.a, big(&[1, 0]));
        assert_eq!(c.b, big(&[0, 3]));
        let c = census_dp(&LengthVector::equilateral(7).unwrap()).unwrap();
        assert_eq!(c.a, big(&[1, 6, 15, 0, 0]));
    }

    #[test]
    fn empty_space_census() {
        for backend in [Backend::Naive, Backend::Dp] {
            let c = census(&lv(&[1, 1, 1, 9]), backend).unwrap();
            assert!(c.a.iter().chain(&c.b).all(Zero::is_zero));
            assert_eq!(c.long, BigUint::from(8u32));
        }
    }

    #[test]
    fn overflow_is_always_empty() {
        for v in [
            &[1u64, 1, 2][..],
            &[3, 4, 5],
            &[1, 1, 1, 1],
            &[2, 2, 2, 2, 2, 10],
        ] {
            let c = census_naive(&lv(v)).unwrap();
            assert!(c.overflow_short.is_zero() && c.overflow_median.is_zero());
        }
    }

    #[test]
    fn naive_refuses_large_n() {
        let big_vec = LengthVector::equilateral(31).unwrap();
        assert!(matches!(census_naive(&big_vec), Err(Error::Budget { .. })));
    }

    #[test]
    fn dp_respects_cell_cap() {
        let l = lv(&[1000, 1000, 1000, 1000]);
        assert!(matches!(
            census_dp_with_cap(&l, 10_000),
            Err(Error::Budget { .. })
        ));
        assert!(census_dp_with_cap(&l, 100_000).is_ok());
    }

    #[test]
    fn dp_big_integer_path_matches_closed_form() {
        // n = 131 forces the arbitrary-precision table.
        let n = 131;
        let c = census_dp(&LengthVector::equilateral(n).unwrap()).unwrap();
        let r = half_rank(n);
        for k in 0..n - 2 {
            let expected = if k < r {
                binomial(n - 1, k)
            } else {
                BigUint::zero()
            };
            assert_eq!(c.a[k], expected, "k = {k}");
        }
        assert!(c.a[r - 1] > BigUint::from(u64::MAX));
    }

    #[test]
    fn prefix_census_examples() {
        let five = LengthVector::equilateral(5).unwrap();
        let p = prefix_census(&five, 1).unwrap();
        assert_eq!((p.short, p.median), (5u32.into(), 0u32.into()));
        let p = prefix_census(&five, 3).unwrap();
        assert_eq!((p.short, p.median), (0u32.into(), 0u32.into()));
        let p = prefix_census(&LengthVector::equilateral(4).unwrap(), 2).unwrap();
        assert_eq!((p.short, p.median), (0u32.into(), 1u32.into()));
        assert!(prefix_census(&five, 0).is_err());
        assert!(prefix_census(&five, 4).is_err());
    }

    #[test]
    fn prefix_backends_agree() {
        for v in [
            &[3u64, 2, 2, 1, 1][..],
            &[5, 1, 4, 4, 2, 7],
            &[1, 1, 1, 1, 1, 1, 1, 1],
        ] {
            let l = lv(v);
            for i in 1..=half_rank(l.n()) + 1 {
                assert_eq!(
                    prefix_census(&l, i).unwrap(),
                    prefix_census_dp(&l, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn prefix_bounds_at_base_case() {
        assert_eq!(prefix_bound(5, 3), BigUint::zero());
        assert_eq!(prefix_bound(6, 3), BigUint::one());
        assert_eq!(prefix_bound(5, 1), BigUint::from(10u32));
        assert_eq!(prefix_bound_generic_even(6, 3), BigUint::zero());
        assert_eq!(prefix_bound_generic_even(6, 1), BigUint::from(20u32));
    }
}
