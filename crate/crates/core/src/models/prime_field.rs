use std::fmt;

use crate::primes::{is_prime, mul_mod, pow_mod};

use super::ModelError;

/// The zero-totalized prime field of order `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, ModelError> {
        // keep p + p within u64
        if is_prime(p) && p < (1 << 62) {
            Ok(PrimeField { p })
        } else {
            Err(ModelError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: u64) -> PrimeFieldElement {
        PrimeFieldElement {
            modulus: self.p,
            value: value % self.p,
        }
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, value: i64) -> PrimeFieldElement {
        self.elem((value as i128).rem_euclid(self.p as i128) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElement> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }
}

/// A residue in `[0, p)` tagged with its prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElement {
    modulus: u64,
    value: u64,
}

impl PrimeFieldElement {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn with(&self, value: u64) -> PrimeFieldElement {
        PrimeFieldElement {
            modulus: self.modulus,
            value,
        }
    }

    pub fn add(&self, rhs: &PrimeFieldElement) -> PrimeFieldElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        self.with(if s >= self.modulus { s - self.modulus } else { s })
    }

    pub fn neg(&self) -> PrimeFieldElement {
        self.with(if self.value == 0 { 0 } else { self.modulus - self.value })
    }

    pub fn mul(&self, rhs: &PrimeFieldElement) -> PrimeFieldElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.with(mul_mod(self.value, rhs.value, self.modulus))
    }

    /// `a^(p-2)`, which is the inverse for `a != 0` and `0` for `a = 0`.
    pub fn inv(&self) -> PrimeFieldElement {
        if self.value == 0 {
            return *self;
        }
        self.with(pow_mod(self.value, self.modulus - 2, self.modulus))
    }

    pub fn pow(&self, exp: u64) -> PrimeFieldElement {
        self.with(pow_mod(self.value, exp, self.modulus))
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
