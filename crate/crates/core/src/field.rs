//! Coefficient fields: the rationals and prime fields `GF(p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which exact field the homology is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u64),
}

/// Primes are kept below `2^31` so products of residues fit in a `u64`.
const MAX_PRIME: u64 = 1 << 31;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < MAX_PRIME {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidField(format!("gf:{p}")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `Q`, or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("gf:") {
            let p: u64 = rest.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
            return FieldSpec::prime(p).map_err(|_| Error::InvalidField(s.to_string()));
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Arithmetic over an exact field. The element type carries no modulus;
/// the field value does.
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `x` must be nonzero.
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < MAX_PRIME);
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.p
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        (x + self.p - y) % self.p
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.p - x) % self.p
    }
    fn inv(&self, x: &u64) -> u64 {
        assert!(*x != 0, "inverse of zero in GF({})", self.p);
        self.pow(*x, self.p - 2)
    }
}
