//! Betti numbers and Poincaré polynomials of planar polygon spaces.
//!
//! `rank H_k(M_ℓ) = a_k + b_k + a_{n-3-k}` for `k = 0..=n-3`, where `a_k`,
//! `b_k` come from a [`Census`]. Also here: emptiness and connectivity,
//! closed forms for the equilateral vector, and the sharp upper bounds on
//! the total Betti number.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::census::{binomial, census, half_rank, Backend, Census};
use crate::error::{Error, Result};
use crate::model::{LengthVector, SubsetClass, SubsetMask};

/// `ranks[k] = rank H_k(M_ℓ; Z)` for `k = 0..=n-3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiVector {
    pub ranks: Vec<BigUint>,
}

impl BettiVector {
    /// Applies `a_k + b_k + a_{n-3-k}` to a census.
    pub fn from_census(census: &Census) -> Self {
        let top = census.n - 3;
        let ranks = (0..=top)
            .map(|k| &census.a[k] + &census.b[k] + &census.a[top - k])
            .collect();
        Self { ranks }
    }

    pub fn from_u64(ranks: &[u64]) -> Self {
        Self {
            ranks: ranks.iter().map(|&r| BigUint::from(r)).collect(),
        }
    }

    pub fn total(&self) -> BigUint {
        self.ranks.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(Zero::is_zero)
    }

    /// `ranks[k] == ranks[n-3-k]` for all `k`.
    pub fn is_palindromic(&self) -> bool {
        self.ranks.iter().eq(self.ranks.iter().rev())
    }

    pub fn euler_characteristic(&self) -> num_bigint::BigInt {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let r = num_bigint::BigInt::from(r.clone());
                if k % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(BigUint::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `p(t) = q(t) + t^{n-3} q(1/t) + r(t)`, all as ascending coefficient lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    pub q: Vec<BigUint>,
    pub r: Vec<BigUint>,
    pub p: Vec<BigUint>,
}

impl PoincarePolynomial {
    /// Renders `p` as e.g. `1 + 4t + t^2`.
    pub fn render(&self) -> String {
        render_polynomial(&self.p)
    }
}

pub fn render_polynomial(coeffs: &[BigUint]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let coeff = if c.is_one() && k > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match k {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{k}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn betti_vector(lengths: &LengthVector) -> Result<BettiVector> {
    betti_vector_with(lengths, Backend::Dp)
}

pub fn betti_vector_with(lengths: &LengthVector, backend: Backend) -> Result<BettiVector> {
    Ok(BettiVector::from_census(&census(lengths, backend)?))
}

pub fn poincare(lengths: &LengthVector) -> Result<PoincarePolynomial> {
    poincare_with(lengths, Backend::Dp)
}

pub fn poincare_with(lengths: &LengthVector, backend: Backend) -> Result<PoincarePolynomial> {
    let c = census(lengths, backend)?;
    let top = c.n - 3;
    let p: Vec<BigUint> = (0..=top)
        .map(|k| &c.a[k] + &c.a[top - k] + &c.b[k])
        .collect();
    assert_eq!(p, BettiVector::from_census(&c).ranks);
    Ok(PoincarePolynomial { q: c.a, r: c.b, p })
}

/// `M_ℓ = ∅` iff the longest link alone is long.
pub fn is_empty(lengths: &LengthVector) -> bool {
    let single = SubsetMask::from_indices(lengths.n(), &[lengths.max_index()])
        .expect("max index is in range");
    lengths.classify_subset(single) == SubsetClass::Long
}

/// Number of connected components (0, 1 or 2), read off the ascending sort:
/// none if `{n}` is long, two iff `{n}` is short and `{n-2, n-1}` is long,
/// otherwise one.
pub fn component_count(lengths: &LengthVector) -> u32 {
    let (sorted, _) = lengths.sorted();
    let n = sorted.n();
    let top = SubsetMask::from_indices(n, &[n]).expect("in range");
    match sorted.classify_subset(top) {
        SubsetClass::Long => 0,
        SubsetClass::Median => 1,
        SubsetClass::Short => {
            let pair = SubsetMask::from_indices(n, &[n - 2, n - 1]).expect("in range");
            if sorted.classify_subset(pair) == SubsetClass::Long {
                2
            } else {
                1
            }
        }
    }
}

/// Closed-form Betti vector of the equilateral `n`-gon space.
pub fn equilateral_betti(n: usize) -> Result<BettiVector> {
    if n < 3 {
        return Err(Error::TooFewLinks(n));
    }
    let r = half_rank(n);
    let ranks = (0..=n - 3)
        .map(|k| {
            if n % 2 == 1 {
                match (k + 1).cmp(&r) {
                    std::cmp::Ordering::Less => binomial(n - 1, k),
                    std::cmp::Ordering::Equal => binomial(n - 1, r - 1) * 2u32,
                    std::cmp::Ordering::Greater => binomial(n - 1, k + 2),
                }
            } else if k < r {
                binomial(n - 1, k)
            } else if k == r {
                binomial(n, r)
            } else {
                binomial(n - 1, k + 2)
            }
        })
        .collect();
    Ok(BettiVector { ranks })
}

/// `B_n = 2^{n-1} − C(n-1, r)`, the maximal total Betti number over all
/// length vectors with `n` links.
pub fn bound_total(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::TooFewLinks(n));
    }
    Ok((BigUint::one() << (n - 1)) - binomial(n - 1, half_rank(n)))
}

/// `B'_n = 2 B_{n-1}`, the maximum over generic vectors with `n` even.
pub fn bound_total_generic_even(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::TooFewLinks(n));
    }
    if n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "the generic bound needs an even number of links, got {n}"
        )));
    }
    Ok(bound_total(n - 1)? * 2u32)
}

/// Asymptotic estimate `2^{n-1} (1 − sqrt(2 / (n π)))` of `B_n`.
pub fn bound_asymptotic(n: usize) -> f64 {
    let n = n as f64;
    (n - 1.0).exp2() * (1.0 - (2.0 / (n * std::f64::consts::PI)).sqrt())
}

/// Genus of a generic connected pentagon space, `b_1 / 2`.
pub fn pentagon_genus(lengths: &LengthVector) -> Result<u32> {
    if lengths.n() != 5 {
        return Err(Error::Precondition(format!(
            "pentagon_genus needs 5 links, got {}",
            lengths.n()
        )));
    }
    if !lengths.is_generic() {
        return Err(Error::Precondition(
            "pentagon_genus needs a generic length vector".into(),
        ));
    }
    let components = component_count(lengths);
    if components != 1 {
        return Err(Error::Precondition(format!(
            "pentagon_genus needs a connected space, found {components} components"
        )));
    }
    let b1 = &betti_vector(lengths)?.ranks[1];
    Ok((b1 / 2u32)
        .to_u32()
        .expect("genus of a pentagon space is at most 4"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[u64]) -> LengthVector {
        LengthVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pentagon_example() {
        let l = lv(&[3, 2, 2, 1, 1]);
        assert_eq!(betti_vector(&l).unwrap(), BettiVector::from_u64(&[1, 4, 1]));
        let p = poincare(&l).unwrap();
        assert_eq!(p.render(), "1 + 4t + t^2");
        assert_eq!(p.q, BettiVector::from_u64(&[1, 2, 0]).ranks);
        assert!(p.r.iter().all(Zero::is_zero));
    }

    #[test]
    fn triangles() {
        assert_eq!(
            betti_vector(&lv(&[3, 4, 5])).unwrap(),
            BettiVector::from_u64(&[2])
        );
        assert_eq!(
            betti_vector(&lv(&[1, 1, 2])).unwrap(),
            BettiVector::from_u64(&[1])
        );
        assert_eq!(
            betti_vector(&lv(&[1, 1, 3])).unwrap(),
            BettiVector::from_u64(&[0])
        );
    }

    #[test]
    fn non_generic_pentagon_matches_naive_census() {
        let l = lv(&[1, 1, 2, 2, 2]);
        assert!(!l.is_generic());
        let naive = betti_vector_with(&l, Backend::Naive).unwrap();
        assert_eq!(betti_vector(&l).unwrap(), naive);
        let c = crate::census::census_naive(&l).unwrap();
        assert!(c.b.iter().any(|b| !b.is_zero()));
    }

    #[test]
    fn disconnected_example() {
        let l = lv(&[1, 1, 3, 3, 3]);
        let p = poincare(&l).unwrap();
        assert_eq!(p.p, BettiVector::from_u64(&[2, 4, 2]).ranks);
        assert_eq!(component_count(&l), 2);
    }

    #[test]
    fn square_poincare() {
        assert_eq!(poincare(&lv(&[1, 1, 1, 1])).unwrap().render(), "1 + 4t");
    }

    #[test]
    fn emptiness() {
        assert!(is_empty(&lv(&[1, 1, 1, 9])));
        assert!(!is_empty(&lv(&[1, 1, 2])));
        assert!(!is_empty(&lv(&[3, 4, 5])));
        assert!(betti_vector(&lv(&[1, 1, 1, 9])).unwrap().is_zero());
    }

    #[test]
    fn components() {
        assert_eq!(component_count(&lv(&[1, 1, 3, 3, 3])), 2);
        assert_eq!(component_count(&lv(&[3, 2, 2, 1, 1])), 1);
        assert_eq!(component_count(&lv(&[1, 1, 1, 9])), 0);
        assert_eq!(component_count(&lv(&[1, 1, 2])), 1);
        assert_eq!(component_count(&lv(&[3, 4, 5])), 2);
    }

    #[test]
    fn equilateral_closed_forms() {
        assert_eq!(
            equilateral_betti(5).unwrap(),
            BettiVector::from_u64(&[1, 8, 1])
        );
        assert_eq!(
            equilateral_betti(4).unwrap(),
            BettiVector::from_u64(&[1, 4])
        );
        assert_eq!(
            equilateral_betti(6).unwrap(),
            BettiVector::from_u64(&[1, 5, 15, 1])
        );
        assert_eq!(equilateral_betti(3).unwrap(), BettiVector::from_u64(&[2]));
        assert!(equilateral_betti(2).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_total(5).unwrap(), 10u32.into());
        assert_eq!(bound_total(6).unwrap(), 22u32.into());
        assert_eq!(bound_total_generic_even(6).unwrap(), 20u32.into());
        assert!(matches!(
            bound_total_generic_even(7),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn asymptotic_estimate() {
        let est = bound_asymptotic(5);
        let expected = 16.0 * (1.0 - (2.0 / (5.0 * std::f64::consts::PI)).sqrt());
        assert!((est - expected).abs() < 1e-12);
        for (n, tol) in [(21usize, 0.1), (101, 0.01)] {
            let exact = bound_total(n).unwrap().to_f64().unwrap();
            let ratio = bound_asymptotic(n) / exact;
            assert!((ratio - 1.0).abs() <= tol, "n = {n}: ratio {ratio}");
        }
    }

    #[test]
    fn pentagon_genera() {
        assert_eq!(pentagon_genus(&lv(&[3, 2, 2, 1, 1])).unwrap(), 2);
        assert_eq!(pentagon_genus(&lv(&[1, 1, 1, 1, 1])).unwrap(), 4);
        // a = (1,0,0): Betti (1,0,1), a sphere.
        assert_eq!(
            betti_vector(&lv(&[1, 1, 1, 1, 3])).unwrap(),
            BettiVector::from_u64(&[1, 0, 1])
        );
        assert_eq!(pentagon_genus(&lv(&[1, 1, 1, 1, 3])).unwrap(), 0);
        assert!(pentagon_genus(&lv(&[1, 1, 1, 1])).is_err());
        assert!(pentagon_genus(&lv(&[1, 1, 2, 2, 2])).is_err());
        assert!(pentagon_genus(&lv(&[1, 1, 3, 3, 3])).is_err());
    }
}
