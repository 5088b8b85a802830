//! Dense univariate polynomials in `k` over the integers, and the
//! coefficientwise certificate for the gap `E' - D'`.
//!
//! `D'` and `E'` are `D` and `E` multiplied by the positive factor
//! `(2k)!/(4k+2)! * (2k+5)! * (2k+1)(2k+2)(2k+3)`, which turns both into
//! degree-6 polynomials. Their difference factors as
//! `24 k (2k+5)(k+2)(k+1)(2k+3)^2`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Display};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::{self, factorial, CountingError};

/// Polynomial with `coeffs[i]` the coefficient of `k^i`; the highest stored
/// coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// `a k + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        IntPoly::from_coeffs(vec![BigInt::from(b), BigInt::from(a)])
    }

    /// Lowest degree first; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Product of the given polynomials; the empty product is 1.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a IntPoly>) -> Self {
        factors
            .into_iter()
            .fold(IntPoly::constant(1), |acc, f| &acc * f)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `k^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    fn zip_with(&self, rhs: &IntPoly, op: impl Fn(BigInt, BigInt) -> BigInt) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| op(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;

            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if i > 0 && !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => f.write_str("k")?,
                _ => write!(f, "k^{i}")?,
            }
        }
        Ok(())
    }
}

fn lin(a: i64, b: i64) -> IntPoly {
    IntPoly::linear(a, b)
}

fn scaled(c: i64, factors: &[IntPoly]) -> IntPoly {
    &IntPoly::constant(c) * &IntPoly::product(factors)
}

/// `D'`: each binomial term of `D` times the scaling factor, as a product of
/// linear factors. The last summand keeps its repeated `(2k+2)(2k+3)`.
pub fn build_d_prime() -> IntPoly {
    let k2 = lin(2, 0);
    let terms = [
        scaled(35, &[lin(2, 5), lin(2, 4), lin(2, 3), lin(2, 1), lin(2, 2), lin(2, 3)]),
        scaled(22, &[k2.clone(), lin(2, 5), lin(2, 4), lin(2, 1), lin(2, 2), lin(2, 3)]),
        scaled(1, &[k2.clone(), lin(2, -1), lin(2, -2), lin(2, 1), lin(2, 2), lin(2, 3)]),
        scaled(7, &[k2, lin(2, -1), lin(2, 5), lin(2, 1), lin(2, 2), lin(2, 3)]),
        scaled(28, &[lin(2, 5), lin(2, 4), lin(2, 3), lin(2, 2), lin(2, 3), lin(2, 2)]),
    ];
    terms.iter().fold(IntPoly::zero(), |acc, t| &acc + t)
}

/// `E' = (6k+13)(4k+7)(4k+6)(4k+5)(4k+4)(4k+3)`.
pub fn build_e_prime() -> IntPoly {
    IntPoly::product(&[lin(6, 13), lin(4, 7), lin(4, 6), lin(4, 5), lin(4, 4), lin(4, 3)])
}

/// Linear factors of `24 k (2k+5)(k+2)(k+1)(2k+3)^2`, without the constant.
pub fn gap_factors() -> Vec<IntPoly> {
    vec![lin(1, 0), lin(2, 5), lin(1, 2), lin(1, 1), lin(2, 3), lin(2, 3)]
}

/// Expansion of `24 k (2k+5)(k+2)(k+1)(2k+3)^2`.
pub fn build_rhs_factorization() -> IntPoly {
    scaled(24, &gap_factors())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffComparison {
    pub degree: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl CoeffComparison {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    /// `E' - D'` against the factored form, degrees `0..=6`.
    pub comparisons: Vec<CoeffComparison>,
    pub d_prime_leading: BigInt,
    pub e_prime_leading: BigInt,
    /// Every linear factor `a k + b` has `a > 0` and `a + b > 0`.
    pub factors_positive_for_k_ge_1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    CoefficientMismatch { degree: usize, lhs: BigInt, rhs: BigInt },
    NonPositiveFactor(usize),
    Counting(CountingError),
    ScalingMismatch { quantity: &'static str, k: u64 },
    NonPositiveScale(u64),
    /// `D < E` failed.
    NotBelow(u64),
}

impl From<CountingError> for PolyError {
    fn from(e: CountingError) -> Self {
        PolyError::Counting(e)
    }
}

impl Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::CoefficientMismatch { degree, lhs, rhs } => {
                write!(f, "coefficient of k^{degree} differs: {lhs} != {rhs}")
            }
            PolyError::NonPositiveFactor(i) => write!(f, "factor {i} is not positive for k >= 1"),
            PolyError::Counting(e) => Display::fmt(e, f),
            PolyError::ScalingMismatch { quantity, k } => {
                write!(f, "scaled {quantity} disagrees with its polynomial at k = {k}")
            }
            PolyError::NonPositiveScale(k) => write!(f, "scale factor not positive at k = {k}"),
            PolyError::NotBelow(k) => write!(f, "D < E fails at k = {k}"),
        }
    }
}

/// Checks `E' - D'` against the factored form coefficient by coefficient.
pub fn verify_factorization() -> Result<FactorizationReport, PolyError> {
    let (d, e) = (build_d_prime(), build_e_prime());
    let gap = &e - &d;
    let rhs = build_rhs_factorization();
    let top = gap.coeffs().len().max(rhs.coeffs().len()).max(7);
    let comparisons: Vec<CoeffComparison> = (0..top)
        .map(|degree| CoeffComparison {
            degree,
            lhs: gap.coeff(degree),
            rhs: rhs.coeff(degree),
        })
        .collect();
    if let Some(bad) = comparisons.iter().find(|c| !c.agrees()) {
        return Err(PolyError::CoefficientMismatch {
            degree: bad.degree,
            lhs: bad.lhs.clone(),
            rhs: bad.rhs.clone(),
        });
    }
    for (i, f) in gap_factors().iter().enumerate() {
        let at_one = f.eval(&BigInt::one());
        if !(f.leading_coeff().is_positive() && at_one.is_positive()) {
            return Err(PolyError::NonPositiveFactor(i));
        }
    }
    Ok(FactorizationReport {
        comparisons,
        d_prime_leading: d.leading_coeff(),
        e_prime_leading: e.leading_coeff(),
        factors_positive_for_k_ge_1: true,
    })
}

/// `(2k)!/(4k+2)! * (2k+5)! * (2k+1)(2k+2)(2k+3)`.
pub fn scaling_factor(k: u64) -> BigRational {
    let num = factorial(2 * k) * factorial(2 * k + 5) * ((2 * k + 1) * (2 * k + 2) * (2 * k + 3));
    BigRational::new(num, factorial(4 * k + 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingCheck {
    pub k: u64,
    pub scale: BigRational,
    pub d_prime: BigInt,
    pub e_prime: BigInt,
    pub d: BigInt,
    pub e: BigInt,
}

/// For each `k`, checks `D'(k) = D * s(k)` and `E'(k) = E * s(k)` exactly,
/// `s(k) > 0`, and `D < E`.
pub fn verify_scaling_chain(
    samples: impl IntoIterator<Item = u64>,
) -> Result<Vec<ScalingCheck>, PolyError> {
    let (dp, ep) = (build_d_prime(), build_e_prime());
    let mut out = Vec::new();
    for k in samples {
        let (d, e) = (counting::d_val(k)?, counting::e_val(k)?);
        let s = scaling_factor(k);
        if !s.is_positive() {
            return Err(PolyError::NonPositiveScale(k));
        }
        let kk = BigInt::from(k);
        let (d_prime, e_prime) = (dp.eval(&kk), ep.eval(&kk));
        if BigRational::from_integer(d_prime.clone()) != BigRational::from_integer(d.clone()) * &s {
            return Err(PolyError::ScalingMismatch { quantity: "D", k });
        }
        if BigRational::from_integer(e_prime.clone()) != BigRational::from_integer(e.clone()) * &s {
            return Err(PolyError::ScalingMismatch { quantity: "E", k });
        }
        if d >= e {
            return Err(PolyError::NotBelow(k));
        }
        out.push(ScalingCheck {
            k,
            scale: s,
            d_prime,
            e_prime,
            d,
            e,
        });
    }
    Ok(out)
}
