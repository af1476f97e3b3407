//! Modular helpers for the quasisymmetric-design nonexistence tests.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("psi is undefined at zero")]
    ZeroInput,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && is_prime(p)
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Whether `a` is a square modulo the odd prime `p`, by Euler's criterion.
/// Multiples of `p` count as squares.
pub fn is_quadratic_residue(a: i128, p: u64) -> Result<bool, NumberTheoryError> {
    if !is_odd_prime(p) {
        return Err(NumberTheoryError::InvalidPrime(p));
    }
    Ok(residue_unchecked(a, p))
}

pub(crate) fn residue_unchecked(a: i128, p: u64) -> bool {
    let r = a.rem_euclid(p as i128) as u64;
    r == 0 || mod_pow(r, (p - 1) / 2, p) == 1
}

/// `max{ℓ ≤ e : p^ℓ divides z}`.
pub fn psi(z: i128, p: u64, e: u32) -> Result<u32, NumberTheoryError> {
    if z == 0 {
        return Err(NumberTheoryError::ZeroInput);
    }
    Ok(valuation_capped(z, p, e))
}

/// Like [`psi`], with `z = 0` giving the cap `e`.
pub(crate) fn valuation_capped(mut z: i128, p: u64, e: u32) -> u32 {
    let p = p as i128;
    let mut l = 0;
    while l < e && z % p == 0 {
        z /= p;
        l += 1;
    }
    l
}

/// Distinct odd prime divisors of `n`, ascending.
pub fn odd_prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 && n.is_multiple_of(2) {
        n /= 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert!(is_quadratic_residue(2, 7).unwrap());
        assert!(!is_quadratic_residue(-1, 7).unwrap());
        assert!(!is_quadratic_residue(3, 5).unwrap());
        assert!(is_quadratic_residue(10, 5).unwrap());
        assert_eq!(
            is_quadratic_residue(1, 9),
            Err(NumberTheoryError::InvalidPrime(9))
        );
        assert_eq!(
            is_quadratic_residue(1, 2),
            Err(NumberTheoryError::InvalidPrime(2))
        );
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(45, 3, 1), Ok(1));
        assert_eq!(psi(45, 3, 3), Ok(2));
        assert_eq!(psi(7, 3, 3), Ok(0));
        assert_eq!(psi(-27, 3, 5), Ok(3));
        assert_eq!(psi(0, 3, 1), Err(NumberTheoryError::ZeroInput));
        assert_eq!(valuation_capped(0, 3, 3), 3);
    }

    #[test]
    fn divisors() {
        assert_eq!(odd_prime_divisors(1), Vec::<u64>::new());
        assert_eq!(odd_prime_divisors(4), Vec::<u64>::new());
        assert_eq!(odd_prime_divisors(90), vec![3, 5]);
        assert_eq!(odd_prime_divisors(49), vec![7]);
        assert_eq!(valuation(18, 3), 2);
    }
}
