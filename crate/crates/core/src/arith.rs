//! Small-integer helpers: factorization, divisors, exact divisors.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime factorization as ascending (p, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Ascending positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut hi: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|q| q * q != n).collect();
    out.append(&mut hi);
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_exact_divisor(e: u64, n: u64) -> bool {
    e > 0 && n % e == 0 && gcd(e, n / e) == 1
}

/// Ascending exact divisors of n.
pub fn exact_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&e| is_exact_divisor(e, n)).collect()
}

/// e*f / gcd(e,f)^2, the label of W_e W_f.
pub fn al_product(e: u64, f: u64) -> u64 {
    let g = gcd(e, f);
    e / g * (f / g)
}

/// Largest power of p dividing n.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

pub fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(x.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(exact_divisors(12), vec![1, 3, 4, 12]);
        assert_eq!(al_product(2, 6), 3);
        assert_eq!(p_part(72, 2), 8);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }
}
