//! Candidate scalars for witness searches.
//!
//! Order: divisors of the relevant exponent, then its first four
//! multiples, then `1..=64`; duplicates dropped, everything above the cap
//! discarded.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::divisors;

/// Fallback range and minimum default cap.
pub const FALLBACK: i64 = 64;

/// `max(4·exponent, 64)`.
pub fn default_cap(exponent: &BigInt) -> BigInt {
    let four: BigInt = exponent.abs() * 4;
    four.max(BigInt::from(FALLBACK))
}

/// The candidate ladder for a torsion exponent (0 when torsion-free).
pub fn ladder(exponent: &BigInt, cap: Option<&BigInt>) -> Vec<BigInt> {
    let cap = cap.cloned().unwrap_or_else(|| default_cap(exponent));
    let e = exponent.abs();
    let mut out: Vec<BigInt> = Vec::new();
    let mut push = |x: BigInt| {
        if x.is_positive() && x <= cap && !out.contains(&x) {
            out.push(x);
        }
    };
    if !e.is_zero() {
        for d in divisors(&e) {
            push(d);
        }
        for k in 1..=4 {
            push(&e * k);
        }
    }
    let mut k = BigInt::one();
    while k <= BigInt::from(FALLBACK) {
        push(k.clone());
        k += 1;
    }
    out
}

/// Largest candidate, or zero for an empty ladder.
pub fn bound(candidates: &[BigInt]) -> BigInt {
    candidates.iter().max().cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_cap() {
        let l = ladder(&BigInt::from(12), None);
        let head: Vec<i64> = l.iter().take(10).map(|x| x.try_into().unwrap()).collect();
        assert_eq!(head, vec![1, 2, 3, 4, 6, 12, 24, 36, 48, 5]);
        assert_eq!(l.len(), 64);
        assert_eq!(ladder(&BigInt::from(8), Some(&BigInt::one())), vec![BigInt::one()]);
        assert_eq!(default_cap(&BigInt::from(100)), BigInt::from(400));
        assert_eq!(ladder(&BigInt::zero(), None).len(), 64);
    }
}
