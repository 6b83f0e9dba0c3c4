//! Length vectors, subset masks and the short / median / long trichotomy.
//!
//! Lengths are exact positive integers. Every classification compares the
//! doubled subset sum against the total, so no halving or floating point is
//! ever involved. Link indices are 1-based in the public API; a mask stores
//! index `i` at bit `i - 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest number of links a [`SubsetMask`] can describe.
pub const MAX_MASK_LINKS: usize = 64;

/// Exact side lengths `(l_1, ..., l_n)` of a planar polygon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthVector {
    lengths: Vec<u64>,
    total: u64,
}

impl LengthVector {
    pub fn new(lengths: Vec<u64>) -> Result<Self> {
        if lengths.len() < 3 {
            return Err(Error::TooFewLinks(lengths.len()));
        }
        if let Some(&l) = lengths.iter().find(|&&l| l == 0) {
            return Err(Error::InvalidLength {
                token: l.to_string(),
                reason: "lengths must be positive".into(),
            });
        }
        let total = lengths
            .iter()
            .try_fold(0u64, |acc, &l| acc.checked_add(l))
            .ok_or(Error::LengthOverflow)?;
        Ok(Self { lengths, total })
    }

    /// The equilateral vector `(1, ..., 1)`.
    pub fn equilateral(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    /// Parses a comma- and/or whitespace-separated list of decimal lengths.
    ///
    /// Decimals are read as exact rationals and cleared to integers by their
    /// common denominator, then divided by the gcd of the result, so
    /// `"1.5,1,1,1"` becomes `(3, 2, 2, 2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() < 3 {
            return Err(Error::TooFewLinks(tokens.len()));
        }
        let parsed = tokens
            .iter()
            .map(|t| parse_decimal(t))
            .collect::<Result<Vec<_>>>()?;
        let scale = parsed.iter().map(|(_, d)| *d).max().unwrap_or(0);
        let ten = BigUint::from(10u32);
        let mut ints: Vec<BigUint> = parsed
            .into_iter()
            .map(|(m, d)| m * num_traits::pow(ten.clone(), scale - d))
            .collect();
        let g = ints.iter().fold(BigUint::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        let lengths = ints
            .iter()
            .zip(&tokens)
            .map(|(x, t)| {
                x.to_u64().ok_or_else(|| Error::InvalidLength {
                    token: t.to_string(),
                    reason: "too large after clearing denominators".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lengths)
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    /// Length of link `i` (1-based).
    pub fn length(&self, i: usize) -> u64 {
        self.lengths[i - 1]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn subset_sum(&self, mask: SubsetMask) -> u128 {
        mask.indices().map(|i| self.lengths[i - 1] as u128).sum()
    }

    /// `L_J = Σ_{i∈J} l_i − Σ_{i∉J} l_i`.
    pub fn signed_excess(&self, mask: SubsetMask) -> i128 {
        2 * self.subset_sum(mask) as i128 - self.total as i128
    }

    pub fn classify_subset(&self, mask: SubsetMask) -> SubsetClass {
        debug_assert_eq!(mask.n(), self.n());
        SubsetClass::from_doubled(2 * self.subset_sum(mask), self.total as u128)
    }

    /// Index (1-based) of a longest link; ties resolve to the largest index.
    pub fn max_index(&self) -> usize {
        let mut best = 0;
        for (i, &l) in self.lengths.iter().enumerate() {
            if l >= self.lengths[best] {
                best = i;
            }
        }
        best + 1
    }

    /// True iff no subset is median, i.e. no signed sum `Σ ±l_i` vanishes.
    pub fn is_generic(&self) -> bool {
        if self.total % 2 == 1 {
            return true;
        }
        !subset_sum_reachable(&self.lengths, self.total / 2)
    }

    /// Ascending stable sort; `permutation[k]` is the original 1-based index
    /// of sorted position `k + 1`.
    pub fn sorted(&self) -> (LengthVector, Vec<usize>) {
        let mut permutation: Vec<usize> = (1..=self.n()).collect();
        permutation.sort_by_key(|&i| self.lengths[i - 1]);
        let lengths = permutation.iter().map(|&i| self.lengths[i - 1]).collect();
        (
            LengthVector {
                lengths,
                total: self.total,
            },
            permutation,
        )
    }

    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let lengths = self
            .lengths
            .iter()
            .map(|&l| l.checked_mul(factor).ok_or(Error::LengthOverflow))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lengths)
    }

    /// Reorders links so that new position `k` holds old link `order[k]` (0-based).
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n());
        LengthVector {
            lengths: order.iter().map(|&k| self.lengths[k]).collect(),
            total: self.total,
        }
    }

    /// Iterates over every subset mask of `{1, ..., n}`.
    pub fn all_masks(&self) -> Result<impl Iterator<Item = SubsetMask>> {
        let n = self.n();
        if n >= MAX_MASK_LINKS {
            return Err(Error::Budget {
                what: "subset enumeration",
                detail: format!("n = {n} is too large to enumerate"),
            });
        }
        Ok((0u64..1u64 << n).map(move |bits| SubsetMask { bits, n: n as u32 }))
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for LengthVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Parses `digits[.digits]` into `(mantissa, decimal places)`.
fn parse_decimal(token: &str) -> Result<(BigUint, usize)> {
    let bad = |reason: &str| Error::InvalidLength {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let (int_part, frac_part) = match token.split_once('.') {
        Some((a, b)) => (a, b),
        None => (token, ""),
    };
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(int_part)
        || !digits_ok(frac_part)
        || (int_part.is_empty() && frac_part.is_empty())
    {
        return Err(bad("not a non-negative decimal number"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa = BigUint::parse_bytes(digits.as_bytes(), 10).unwrap_or_default();
    if mantissa.is_zero() {
        return Err(bad("lengths must be positive"));
    }
    Ok((mantissa, frac_part.len()))
}

/// Whether some sub-multiset of `weights` sums exactly to `target`.
fn subset_sum_reachable(weights: &[u64], target: u64) -> bool {
    const BITSET_CAP: u64 = 1 << 31;
    if target <= BITSET_CAP || weights.len() > 40 {
        bitset_reachable(weights, target)
    } else {
        meet_in_middle_reachable(weights, target)
    }
}

fn bitset_reachable(weights: &[u64], target: u64) -> bool {
    let size = target as usize + 1;
    let mut words = vec![0u64; size.div_ceil(64)];
    words[0] = 1;
    for &w in weights {
        if w > target {
            continue;
        }
        let w = w as usize;
        let (word_shift, bit_shift) = (w / 64, w % 64);
        for k in (word_shift..words.len()).rev() {
            let src = k - word_shift;
            let mut v = words[src] << bit_shift;
            if bit_shift > 0 && src > 0 {
                v |= words[src - 1] >> (64 - bit_shift);
            }
            words[k] |= v;
        }
        if words[target as usize / 64] >> (target % 64) & 1 == 1 {
            return true;
        }
    }
    words[target as usize / 64] >> (target % 64) & 1 == 1
}

fn meet_in_middle_reachable(weights: &[u64], target: u64) -> bool {
    let (left, right) = weights.split_at(weights.len() / 2);
    let sums = |part: &[u64]| -> Vec<u128> {
        let mut out = vec![0u128];
        for &w in part {
            let extra: Vec<u128> = out.iter().map(|s| s + w as u128).collect();
            out.extend(extra);
        }
        out
    };
    let mut right_sums = sums(right);
    right_sums.sort_unstable();
    sums(left)
        .into_iter()
        .any(|s| s <= target as u128 && right_sums.binary_search(&(target as u128 - s)).is_ok())
}

/// A subset `J ⊂ {1, ..., n}` stored as a bitmask (index `i` at bit `i - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u64,
    n: u32,
}

impl SubsetMask {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_MASK_LINKS {
            return Err(Error::Mask(format!("n = {n} exceeds {MAX_MASK_LINKS}")));
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::Mask(format!(
                "bits {bits:#x} set beyond position {n}"
            )));
        }
        Ok(Self { bits, n: n as u32 })
    }

    /// Builds a mask from 1-based indices.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::Mask(format!("index {i} outside 1..={n}")));
            }
            bits |= 1 << (i - 1);
        }
        Self::new(n, bits)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            bits: 0,
            n: n as u32,
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            bits: low_bits(n),
            n: n as u32,
        }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn cardinality(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits >> (i - 1) & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Self {
            bits: self.bits | 1 << (i - 1),
            ..self
        }
    }

    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & low_bits(self.n()),
            ..self
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        Self {
            bits: self.bits & other.bits,
            ..self
        }
    }

    /// 1-based member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    /// Lowercase hexadecimal of the bit pattern.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.bits)
    }

    pub fn from_hex(n: usize, text: &str) -> Result<Self> {
        let bits = u64::from_str_radix(text, 16)
            .map_err(|e| Error::Mask(format!("bad hex mask {text:?}: {e}")))?;
        Self::new(n, bits)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Short, median or long, relative to the complementary sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubsetClass {
    Short,
    Median,
    Long,
}

impl SubsetClass {
    /// Classifies from `2 · Σ_J l_i` and the total length.
    pub fn from_doubled(doubled_sum: u128, total: u128) -> Self {
        match doubled_sum.cmp(&total) {
            std::cmp::Ordering::Less => SubsetClass::Short,
            std::cmp::Ordering::Equal => SubsetClass::Median,
            std::cmp::Ordering::Greater => SubsetClass::Long,
        }
    }

    /// The class of the complementary subset.
    pub fn dual(self) -> Self {
        match self {
            SubsetClass::Short => SubsetClass::Long,
            SubsetClass::Median => SubsetClass::Median,
            SubsetClass::Long => SubsetClass::Short,
        }
    }
}
