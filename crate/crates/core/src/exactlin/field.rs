//! Arithmetic in the prime field `Z/pZ` for primes below `2^63`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{arg_err, Result};

/// Largest prime below `2^62`; products of two residues fit in a `u128`.
pub const DEFAULT_PRIME: u64 = (1 << 62) - 57;

/// A prime modulus. Copyable context for residue arithmetic on raw `u64`s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return arg_err(format!("modulus {p} must be below 2^63"));
        }
        if !is_prime(p) {
            return arg_err(format!("modulus {p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn reduce_u128(self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    /// `base^exp` for a possibly negative exponent.
    pub fn pow_i64(self, base: u64, exp: i64) -> Option<u64> {
        if exp >= 0 {
            Some(self.pow(base, exp as u64))
        } else {
            self.inv(base).map(|b| self.pow(b, exp.unsigned_abs()))
        }
    }

    pub fn elem(self, v: u64) -> Fp {
        Fp {
            value: v % self.p,
            field: self,
        }
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    field: PrimeField,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        self.field.inv(self.value).map(|v| self.field.elem(v))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        self.field.elem(self.field.add(self.value, rhs.value))
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        self.field.elem(self.field.sub(self.value, rhs.value))
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        self.field.elem(self.field.mul(self.value, rhs.value))
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        self.field.elem(self.field.neg(self.value))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_prime_is_prime_and_sized() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(DEFAULT_PRIME > 1 << 60);
        assert!(DEFAULT_PRIME < 1 << 62);
        // nothing prime between it and 2^62
        assert!(((DEFAULT_PRIME + 1)..(1 << 62)).all(|n| !is_prime(n)));
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(17).is_ok());
    }

    #[test]
    fn negative_powers() {
        let f = PrimeField::new(101).unwrap();
        let x = f.pow_i64(7, -2).unwrap();
        assert_eq!(f.mul(x, 49), 1);
        assert_eq!(f.pow_i64(0, -1), None);
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..DEFAULT_PRIME, b in 0u64..DEFAULT_PRIME, c in 0u64..DEFAULT_PRIME) {
            let f = PrimeField::default();
            let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
            prop_assert_eq!((a + b) * c, a * c + b * c);
            prop_assert_eq!(a - a, f.elem(0));
            prop_assert_eq!(a + (-a), f.elem(0));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), f.elem(1));
            }
        }
    }
}
