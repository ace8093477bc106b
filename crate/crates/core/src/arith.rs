//! Small integer helpers: factorisation, divisors, generalized CRT.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Distinct prime factors of `|n|` by trial division, ascending.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Positive divisors of `|n|`, ascending. Empty for zero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Largest divisor of `d` all of whose prime factors divide `n`.
pub fn coprime_split(d: &BigInt, n: &BigInt) -> BigInt {
    let mut e = BigInt::one();
    let mut rest = d.abs();
    for p in prime_factors(n) {
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e *= &p;
        }
    }
    e
}

/// Solutions of `r ≡ a1 (mod m1)` and `r ≡ a2 (mod m2)` as one class
/// `r ≡ a (mod lcm)`, or `None` when incompatible. Moduli must be positive.
pub fn crt(a1: &BigInt, m1: &BigInt, a2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = m1.gcd(m2);
    let diff = a2 - a1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let l = m1.lcm(m2);
    // a1 + m1·t ≡ a2 (mod m2)  ⇒  (m1/g)·t ≡ diff/g (mod m2/g)
    let m2g = m2 / &g;
    let t = if m2g.is_one() {
        BigInt::zero()
    } else {
        let inv = mod_inverse(&(m1 / &g), &m2g).expect("coprime after dividing by gcd");
        ((&diff / &g) * inv).mod_floor(&m2g)
    };
    Some(((a1 + m1 * t).mod_floor(&l), l))
}

/// Inverse of `a` modulo `m > 0`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `usize` view of a small nonnegative integer.
pub fn small(n: &BigInt) -> Option<usize> {
    n.to_usize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn factor_and_divisors() {
        assert_eq!(prime_factors(&b(12)), vec![b(2), b(3)]);
        assert_eq!(prime_factors(&b(1)), Vec::<BigInt>::new());
        assert_eq!(divisors(&b(12)), vec![b(1), b(2), b(3), b(4), b(6), b(12)]);
        assert_eq!(coprime_split(&b(12), &b(2)), b(4));
        assert_eq!(coprime_split(&b(12), &b(1)), b(1));
    }

    #[test]
    fn crt_cases() {
        assert_eq!(crt(&b(1), &b(2), &b(2), &b(3)), Some((b(5), b(6))));
        assert_eq!(crt(&b(1), &b(4), &b(3), &b(6)), Some((b(9), b(12))));
        assert_eq!(crt(&b(0), &b(2), &b(1), &b(4)), None);
    }
}
