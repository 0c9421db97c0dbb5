//! Small-integer number theory: trial-division primality and factorisation,
//! multiplicative orders.

use crate::error::{input, Result};
use num_integer::Integer;

/// Deterministic trial division; only used for the tiny primes in scope.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Smallest `i >= 1` with `target | ell^i - 1`, i.e. the multiplicative order
/// of `ell` modulo `target`.
pub fn min_extension_degree(ell: u64, target: u64) -> Result<u32> {
    if target == 0 || ell < 2 {
        return input("min_extension_degree needs ell >= 2 and target >= 1");
    }
    if ell.gcd(&target) != 1 {
        return input(format!(
            "gcd({ell}, {target}) != 1: no power of {ell} is 1 modulo {target}"
        ));
    }
    if target == 1 {
        return Ok(1);
    }
    let mut acc = ell % target;
    let mut i = 1;
    while acc != 1 {
        acc = (acc as u128 * ell as u128 % target as u128) as u64;
        i += 1;
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_degrees() {
        assert_eq!(min_extension_degree(5, 4).unwrap(), 1);
        assert_eq!(min_extension_degree(7, 4).unwrap(), 2);
        assert_eq!(min_extension_degree(5, 12).unwrap(), 2);
        assert_eq!(min_extension_degree(7, 12).unwrap(), 2);
        assert_eq!(min_extension_degree(13, 12).unwrap(), 1);
        assert!(min_extension_degree(3, 6).is_err());
    }

    #[test]
    fn factoring() {
        assert_eq!(factorize(1152), vec![(2, 7), (3, 2)]);
        assert_eq!(factorize(48), vec![(2, 4), (3, 1)]);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(49));
    }
}
