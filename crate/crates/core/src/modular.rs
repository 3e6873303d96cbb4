//! Residue arithmetic modulo small primes.

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u32, exp: u64, modulus: u32) -> u32 {
    let m = modulus as u64;
    let mut result = 1 % m;
    let mut b = base as u64 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u32
}

/// Multiplicative order of `h` modulo the prime `p`; `None` for `h ≡ 0`.
pub fn multiplicative_order(h: u32, p: u32) -> Option<u32> {
    let h = h % p;
    if h == 0 {
        return None;
    }
    let mut acc = h;
    let mut k = 1;
    while acc != 1 {
        acc = (acc as u64 * h as u64 % p as u64) as u32;
        k += 1;
    }
    Some(k)
}

/// Smallest residue in `[2, p)` of multiplicative order exactly `q`.
pub fn find_g(p: u32, q: u32) -> Result<u32> {
    if q == 0 || p < 2 || p % q != 1 {
        return Err(Error::NoSuchElement { p, q });
    }
    (2..p)
        .find(|&h| multiplicative_order(h, p) == Some(q))
        .ok_or(Error::NoSuchElement { p, q })
}

/// `a - b mod m` for residues already reduced.
#[inline]
pub fn sub_mod(a: u32, b: u32, m: u32) -> u32 {
    (a + m - b % m) % m
}

#[inline]
pub fn mul_mod(a: u32, b: u32, m: u32) -> u32 {
    (a as u64 * b as u64 % m as u64) as u32
}

/// Powers `g^0, g^1, ..., g^(q-1)` modulo `p`, so exponents can be read mod `q`.
#[derive(Clone, Debug)]
pub struct PowerTable {
    p: u32,
    q: u32,
    powers: Vec<u32>,
}

impl PowerTable {
    pub fn new(g: u32, p: u32, q: u32) -> Self {
        let powers = (0..q).map(|k| pow_mod(g, k as u64, p)).collect();
        Self { p, q, powers }
    }

    /// `g^k` for any signed exponent, reduced mod `q`.
    #[inline]
    pub fn pow(&self, k: i64) -> u32 {
        self.powers[k.rem_euclid(self.q as i64) as usize]
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_oracle(h: u32, p: u32) -> u32 {
        (1..p).find(|&k| pow_mod(h, k as u64, p) == 1).unwrap()
    }

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(4));
    }

    #[test]
    fn find_g_matches_brute_force() {
        // h^q ≡ 1 and h ≢ 1 by direct search
        for (p, q, expected) in [(3, 2, 2), (7, 3, 2), (5, 2, 4)] {
            let oracle = (2..p)
                .find(|&h| pow_mod(h, q as u64, p) == 1 && h % p != 1)
                .unwrap();
            assert_eq!(oracle, expected);
            assert_eq!(find_g(p, q).unwrap(), expected);
        }
        for (p, q) in [(13, 3), (11, 5), (31, 5)] {
            let g = find_g(p, q).unwrap();
            assert_eq!(order_oracle(g, p), q);
        }
    }

    #[test]
    fn find_g_rejects_incongruent() {
        assert!(matches!(find_g(5, 3), Err(Error::NoSuchElement { .. })));
        assert!(find_g(7, 5).is_err());
    }

    #[test]
    fn power_table_wraps_negative_exponents() {
        let t = PowerTable::new(2, 7, 3);
        assert_eq!(t.pow(0), 1);
        assert_eq!(t.pow(-1), 4);
        assert_eq!(t.pow(5), 4);
    }
}
