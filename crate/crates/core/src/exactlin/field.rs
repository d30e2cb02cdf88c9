use serde::{Deserialize, Serialize};

use super::LinError;

/// The prime field `Z/ell`. Elements are plain `u32` values in `[0, ell)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    ell: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { ell: 2 }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(ell: u32) -> Result<Self, LinError> {
        if !is_prime(ell) || ell > 46_337 {
            return Err(LinError::NotPrime(ell));
        }
        Ok(PrimeField { ell })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.ell {
            s - self.ell
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.ell - a
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.ell as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.ell;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(
            !a.is_multiple_of(self.ell),
            "inverse of zero in F_{}",
            self.ell
        );
        self.pow(a, self.ell - 2)
    }

    /// Reduce a signed integer into `[0, ell)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.ell as i64) as u32
    }

    /// `(-1)^k`.
    pub fn sign(&self, k: usize) -> u32 {
        if k.is_multiple_of(2) {
            1 % self.ell
        } else {
            self.neg(1)
        }
    }
}
