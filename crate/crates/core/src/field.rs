//! Arithmetic in the prime field F_p for an odd prime p < 2^31.
//!
//! Elements are canonical representatives stored as `u32` in `[0, p)`.
//! The field itself is a tiny copyable descriptor passed by value; all
//! operations reduce eagerly so every stored value stays canonical.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Accepts odd primes strictly between 2 and 2^31.
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::BadModulus(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, x: i64) -> u32 {
        let p = self.p as i64;
        let r = x % p;
        (if r < 0 { r + p } else { r }) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Inverse of 2, used when symmetrizing Gram matrices (p is odd).
    #[inline]
    pub fn inv2(self) -> u32 {
        (self.p + 1) / 2
    }

    /// Lift to the symmetric range `(-p/2, p/2]`, for cross-prime comparison
    /// of small rational data.
    #[inline]
    pub fn lift_signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Barrett reducer for hot loops where `%` on a runtime modulus is too slow.
/// Valid for inputs below 2^62 against moduli below 2^31.
#[derive(Clone, Copy, Debug)]
pub struct Barrett {
    p: u64,
    magic: u64, // floor(2^64 / p)
}

impl Barrett {
    pub fn new(field: PrimeField) -> Self {
        let p = field.modulus() as u64;
        Barrett {
            p,
            magic: u64::MAX / p,
        }
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        // q is floor(x/p) or one less (for x < 2^62), so one fixup suffices.
        let q = ((self.magic as u128 * x as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        debug_assert_eq!(r, x % self.p);
        r as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        for bad in [0u32, 1, 2, 4, 9, 15, 1 << 31] {
            assert!(PrimeField::new(bad).is_err(), "{bad} accepted");
        }
        for good in [3u32, 31, 101, 32003, 2147483647] {
            assert!(PrimeField::new(good).is_ok(), "{good} rejected");
        }
    }

    #[test]
    fn field_ops_small() {
        let f = PrimeField::new(31).unwrap();
        assert_eq!(f.add(30, 5), 4);
        assert_eq!(f.sub(3, 7), 27);
        assert_eq!(f.mul(7, 9), 63 % 31);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.inv2(), 16);
        assert_eq!(f.mul(16, 2), 1);
    }

    #[test]
    fn inverses_and_powers() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u32 {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
        }
        assert!(f.inv(0).is_err());
        assert_eq!(f.pow(3, 100), 1); // Fermat
    }

    #[test]
    fn signed_lift_round_trips() {
        let f = PrimeField::new(31).unwrap();
        assert_eq!(f.lift_signed(30), -1);
        assert_eq!(f.lift_signed(15), 15);
        assert_eq!(f.lift_signed(16), -15);
        assert_eq!(f.reduce_i64(-1), 30);
    }

    #[test]
    fn barrett_matches_modulo() {
        for p in [31u32, 101, 32003, 2147483647] {
            let b = Barrett::new(PrimeField::new(p).unwrap());
            let mut x: u64 = 0x9e3779b97f4a7c15;
            for _ in 0..10_000 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = x >> 2; // keep below 2^62
                assert_eq!(b.reduce(v), (v % p as u64) as u32);
            }
        }
    }
}
