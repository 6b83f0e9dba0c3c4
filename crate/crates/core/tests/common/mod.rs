//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's counting code.
#![allow(dead_code)]

use num_bigint::BigUint;
use rand::Rng;

pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut row = vec![BigUint::from(1u32)];
    for m in 1..=n {
        let mut next = vec![BigUint::from(1u32); m + 1];
        for j in 1..m {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k].clone()
}

pub fn pow2(e: usize) -> BigUint {
    BigUint::from(1u32) << e
}

/// -1 short, 0 median, 1 long.
pub fn class_of(lengths: &[u64], bits: u64) -> i8 {
    let total: u128 = lengths.iter().map(|&x| x as u128).sum();
    let inside: u128 = (0..lengths.len())
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| lengths[i] as u128)
        .sum();
    (2 * inside).cmp(&total) as i8
}

/// 1-based index of a longest link, largest index on ties.
pub fn longest(lengths: &[u64]) -> usize {
    let max = *lengths.iter().max().unwrap();
    lengths.iter().rposition(|&x| x == max).unwrap() + 1
}

/// Betti ranks straight from the subset definition.
pub fn brute_betti(lengths: &[u64]) -> Vec<BigUint> {
    let n = lengths.len();
    let pin = longest(lengths) - 1;
    let mut a = vec![0u64; n - 2];
    let mut b = vec![0u64; n - 2];
    for bits in 0u64..1 << n {
        if bits >> pin & 1 == 0 {
            continue;
        }
        let k = bits.count_ones() as usize - 1;
        if k > n - 3 {
            continue;
        }
        match class_of(lengths, bits) {
            -1 => a[k] += 1,
            0 => b[k] += 1,
            _ => {}
        }
    }
    (0..n - 2)
        .map(|k| BigUint::from(a[k] + b[k] + a[n - 3 - k]))
        .collect()
}

pub fn brute_generic(lengths: &[u64]) -> bool {
    (0u64..1 << lengths.len()).all(|bits| class_of(lengths, bits) != 0)
}

/// Closed-form Betti ranks of the equilateral polygon space.
pub fn equilateral_closed_form(n: usize) -> Vec<BigUint> {
    (0..=n - 3)
        .map(|k| {
            if n % 2 == 1 {
                let r = (n - 1) / 2;
                if k + 1 < r {
                    binom(n - 1, k)
                } else if k + 1 == r {
                    binom(n - 1, r - 1) * 2u32
                } else {
                    binom(n - 1, k + 2)
                }
            } else {
                let r = (n - 2) / 2;
                if k < r {
                    binom(n - 1, k)
                } else if k == r {
                    binom(n, r)
                } else {
                    binom(n - 1, k + 2)
                }
            }
        })
        .collect()
}

pub fn total_bound(n: usize) -> BigUint {
    pow2(n - 1) - binom(n - 1, (n - 1) / 2)
}

/// Short and median subsets containing the last `i` links of `sorted`.
pub fn brute_prefix(sorted: &[u64], i: usize) -> (u64, u64) {
    let n = sorted.len();
    let fixed: u64 = ((1u64 << i) - 1) << (n - i);
    let (mut s, mut m) = (0, 0);
    for free in 0u64..1 << (n - i) {
        match class_of(sorted, free | fixed) {
            -1 => s += 1,
            0 => m += 1,
            _ => {}
        }
    }
    (s, m)
}

pub fn random_lengths<R: Rng>(rng: &mut R, n: usize, max_len: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=max_len)).collect()
}
