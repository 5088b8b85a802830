//! Scalar fields of characteristic other than two.
//!
//! A [`Field`] is a value that knows how to do arithmetic on its elements,
//! so runtime parameters such as the prime of a finite field travel with the
//! field descriptor instead of with every scalar.

use core::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + Display + PartialEq;

    /// Zero for the rationals, `p` for GF(p).
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The field of rational numbers with arbitrary-precision numerator and
/// denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Residue of a prime field, always stored reduced into `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u64);

impl Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

/// GF(p) for an odd prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// Characteristic two collapses anticommutativity into commutativity.
    CharacteristicTwo,
    NotPrime(u64),
    TooLarge(u64),
}

impl Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::CharacteristicTwo => {
                write!(f, "fields of characteristic 2 are not supported")
            }
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::TooLarge(p) => write!(f, "modulus {p} does not fit in 32 bits"),
        }
    }
}

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

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p > u32::MAX as u64 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn gf3() -> Self {
        PrimeField { p: 3 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = Residue;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> Residue {
        Residue(0)
    }

    fn one(&self) -> Residue {
        Residue(1)
    }

    fn from_i64(&self, v: i64) -> Residue {
        Residue(v.rem_euclid(self.p as i64) as u64)
    }

    fn is_zero(&self, a: &Residue) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        Residue((a.0 + b.0) % self.p)
    }

    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        Residue((a.0 + self.p - b.0) % self.p)
    }

    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(a.0 * b.0 % self.p)
    }

    fn neg(&self, a: &Residue) -> Residue {
        Residue((self.p - a.0) % self.p)
    }

    fn inv(&self, a: &Residue) -> Option<Residue> {
        if a.0 == 0 {
            None
        } else {
            Some(Residue(self.pow(a.0, self.p - 2)))
        }
    }
}
