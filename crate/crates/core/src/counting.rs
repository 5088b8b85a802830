//! Exact counting quantities for `n = 4k + 9` and the identities tying them
//! together.
//!
//! With `N = 2^(4k+7)`:
//!
//! * `C1 = 7 B(4k+2, 2k) + B(4k+2, 2k+3)`
//! * `C2 = B(4k+2, 2k+5) + 7 B(4k+2, 2k+4) + 21 B(4k+2, 2k+3) + 7 B(4k+2, 2k+2)
//!   + 28 B(4k+2, 2k+1) + 21 B(4k+2, 2k)`
//! * `C3 = sum of B(4k+9, i)` over odd `i` in `2k+7..=4k+9`
//! * `A = N - (6k+13)/(2k+5) B(4k+7, 2k+3)`, which equals `C3`
//! * `D = C1 + C2`, `E = (6k+13)/(2k+5) B(4k+7, 2k+3)`
//! * `Q = (C1 + C2 + C3) / N = 1 + D/N - E/N`
//!
//! Everything is computed with arbitrary-precision integers and rationals.

use alloc::vec::Vec;
use core::fmt::{self, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountingError {
    KOutOfRange { k: u64, min: u64 },
    EmptyRange { from: u64, to: u64 },
    /// A quantity expected to be an integer kept a denominator.
    NonInteger { quantity: &'static str, k: u64 },
    /// Two routes to the same quantity disagree.
    Mismatch { identity: &'static str, k: u64 },
}

impl Display for CountingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountingError::KOutOfRange { k, min } => write!(f, "k = {k} is below the minimum {min}"),
            CountingError::EmptyRange { from, to } => write!(f, "empty range {from}..={to}"),
            CountingError::NonInteger { quantity, k } => {
                write!(f, "{quantity} is not an integer at k = {k}")
            }
            CountingError::Mismatch { identity, k } => write!(f, "{identity} fails at k = {k}"),
        }
    }
}

fn require_k(k: u64) -> Result<(), CountingError> {
    if k < 1 {
        Err(CountingError::KOutOfRange { k, min: 1 })
    } else {
        Ok(())
    }
}

/// `lo * (lo+1) * ... * (lo+count-1)` by balanced splitting.
fn rising_product(lo: &BigInt, count: u64) -> BigInt {
    match count {
        0 => BigInt::one(),
        1 => lo.clone(),
        2 => lo * (lo + 1u32),
        _ => {
            let half = count / 2;
            rising_product(lo, half) * rising_product(&(lo + half), count - half)
        }
    }
}

pub fn factorial(m: u64) -> BigInt {
    rising_product(&BigInt::one(), m)
}

/// Binomial coefficient, zero when `r < 0` or `r > n`.
pub fn binom(n: &BigInt, r: i64) -> BigInt {
    if r < 0 || BigInt::from(r) > *n {
        return BigInt::zero();
    }
    let r = BigInt::from(r).min(n - r);
    let r = u64::try_from(&r).expect("binomial lower index fits in u64");
    let top = rising_product(&(n - r + 1u32), r);
    top / factorial(r)
}

fn b(n: u64, r: i64) -> BigInt {
    binom(&BigInt::from(n), r)
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `2^(4k+7)`, the common denominator of `Q_k`.
pub fn scale(k: u64) -> BigInt {
    pow2(4 * k + 7)
}

fn exact_integer(q: BigRational, quantity: &'static str, k: u64) -> Result<BigInt, CountingError> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(CountingError::NonInteger { quantity, k })
    }
}

pub fn c1(k: u64) -> Result<BigInt, CountingError> {
    require_k(k)?;
    let (top, k) = (4 * k + 2, k as i64);
    Ok(7 * b(top, 2 * k) + b(top, 2 * k + 3))
}

pub fn c2(k: u64) -> Result<BigInt, CountingError> {
    require_k(k)?;
    let (top, k) = (4 * k + 2, k as i64);
    Ok(b(top, 2 * k + 5)
        + 7 * b(top, 2 * k + 4)
        + 21 * b(top, 2 * k + 3)
        + 7 * b(top, 2 * k + 2)
        + 28 * b(top, 2 * k + 1)
        + 21 * b(top, 2 * k))
}

/// Direct summation of `B(4k+9, i)` over odd `i >= 2k+7`.
pub fn c3_sum(k: u64) -> Result<BigInt, CountingError> {
    require_k(k)?;
    let top = 4 * k + 9;
    let mut i = 2 * k + 7;
    let mut term = b(top, i as i64);
    let mut sum = BigInt::zero();
    loop {
        sum += &term;
        if i + 2 > top {
            break;
        }
        term = term * ((top - i) * (top - i - 1)) / ((i + 1) * (i + 2));
        i += 2;
    }
    Ok(sum)
}

/// `(6k+13)/(2k+5) * B(4k+7, 2k+3)` as an exact rational.
fn e_rational(k: u64) -> BigRational {
    BigRational::new(
        BigInt::from(6 * k + 13) * b(4 * k + 7, 2 * k as i64 + 3),
        BigInt::from(2 * k + 5),
    )
}

/// Closed form `2^(4k+7) - (6k+13)/(2k+5) * B(4k+7, 2k+3)`, required to be an
/// integer.
pub fn a_closed(k: u64) -> Result<BigInt, CountingError> {
    require_k(k)?;
    let a = BigRational::from_integer(scale(k)) - e_rational(k);
    exact_integer(a, "A", k)
}

pub fn d_val(k: u64) -> Result<BigInt, CountingError> {
    require_k(k)?;
    let (top, k) = (4 * k + 2, k as i64);
    Ok(35 * b(top, 2 * k)
        + 22 * b(top, 2 * k + 3)
        + b(top, 2 * k + 5)
        + 7 * b(top, 2 * k + 4)
        + 28 * b(top, 2 * k + 1))
}

pub fn e_val(k: u64) -> Result<BigInt, CountingError> {
    require_k(k)?;
    exact_integer(e_rational(k), "E", k)
}

/// `Q_k`, computed as `(C1+C2+C3)/2^(4k+7)` and as `1 + (D-E)/2^(4k+7)`;
/// the two must agree exactly.
pub fn qk(k: u64) -> Result<BigRational, CountingError> {
    let total = c1(k)? + c2(k)? + c3_sum(k)?;
    let direct = BigRational::new(total, scale(k));
    let via_d_e = BigRational::one() + BigRational::new(d_val(k)? - e_val(k)?, scale(k));
    if direct != via_d_e {
        return Err(CountingError::Mismatch {
            identity: "Q_k = 1 + D/2^(4k+7) - E/2^(4k+7)",
            k,
        });
    }
    Ok(direct)
}

/// One checked instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub k: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// `c3_sum(k) == a_closed(k)` for `1 <= k <= k_max`.
pub fn verify_c3_identity(k_max: u64) -> Result<Vec<IdentityCheck>, CountingError> {
    require_k(k_max)?;
    (1..=k_max)
        .map(|k| {
            let (lhs, rhs) = (c3_sum(k)?, a_closed(k)?);
            if lhs != rhs {
                return Err(CountingError::Mismatch { identity: "C3 = A", k });
            }
            Ok(IdentityCheck { k, lhs, rhs })
        })
        .collect()
}

/// `1 * 3 * ... * (4k+7) == (4k+7)! / (2^(2k+3) (2k+3)!)` for
/// `0 <= k <= k_max`: the integer content of expanding `Gamma(2k + 9/2)`
/// down to `Gamma(1/2)`.
pub fn verify_gamma_identity(k_max: u64) -> Result<Vec<IdentityCheck>, CountingError> {
    let mut odd_product = BigInt::one();
    let mut next_factor = 1u64;
    let mut out = Vec::new();
    for k in 0..=k_max {
        while next_factor <= 4 * k + 7 {
            odd_product *= next_factor;
            next_factor += 2;
        }
        let denom = pow2(2 * k + 3) * factorial(2 * k + 3);
        let (rhs, rem) = factorial(4 * k + 7).div_rem(&denom);
        if !rem.is_zero() {
            return Err(CountingError::NonInteger {
                quantity: "(4k+7)!/(2^(2k+3) (2k+3)!)",
                k,
            });
        }
        if odd_product != rhs {
            return Err(CountingError::Mismatch {
                identity: "odd double factorial",
                k,
            });
        }
        out.push(IdentityCheck {
            k,
            lhs: odd_product.clone(),
            rhs,
        });
    }
    Ok(out)
}

/// Every counting quantity for one `k`, with all cross-checks already
/// passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub k: u64,
    pub c1: BigInt,
    pub c2: BigInt,
    pub c3: BigInt,
    pub d: BigInt,
    pub e: BigInt,
    /// In lowest terms.
    pub qk: BigRational,
    pub qk_lt_1: bool,
    /// Binomial terms that vanished because the lower index exceeded the
    /// upper one.
    pub zero_terms: Vec<&'static str>,
    /// `C3` agreed with the closed form `A`.
    pub c3_closed_form: bool,
    /// `E` cleared its denominator.
    pub e_integral: bool,
    /// Both routes to `Q_k` agreed.
    pub routes_agree: bool,
    /// `2^(n-1) + C1 + C2 + C3 < 3 * 2^(n-2)` with `n = 4k + 9`.
    pub dim_below_bound: bool,
}

impl CountReport {
    /// Rank of the Grassmann algebra the counts describe.
    pub fn rank(&self) -> u64 {
        4 * self.k + 9
    }
}

/// Computes and cross-checks everything for one `k`.
pub fn report(k: u64) -> Result<CountReport, CountingError> {
    require_k(k)?;
    let (c1, c2, c3) = (c1(k)?, c2(k)?, c3_sum(k)?);
    let (d, e) = (d_val(k)?, e_val(k)?);
    if &c1 + &c2 != d {
        return Err(CountingError::Mismatch { identity: "D = C1 + C2", k });
    }
    if c3 != a_closed(k)? {
        return Err(CountingError::Mismatch { identity: "C3 = A", k });
    }
    let total = &c1 + &c2 + &c3;
    if total != scale(k) + &d - &e {
        return Err(CountingError::Mismatch {
            identity: "C1 + C2 + C3 = 2^(4k+7) + D - E",
            k,
        });
    }
    let q = qk(k)?;
    let qk_lt_1 = q < BigRational::one();
    if qk_lt_1 != (d < e) {
        return Err(CountingError::Mismatch { identity: "Q_k < 1 iff D < E", k });
    }
    let n = 4 * k + 9;
    let dim = pow2(n - 1) + &total;
    let bound = 3 * pow2(n - 2);
    let dim_below_bound = dim < bound;
    if dim_below_bound != qk_lt_1 {
        return Err(CountingError::Mismatch {
            identity: "dim < 3*2^(n-2) iff Q_k < 1",
            k,
        });
    }
    let mut zero_terms = Vec::new();
    if 2 * k + 5 > 4 * k + 2 {
        zero_terms.push("B(4k+2, 2k+5)");
    }
    Ok(CountReport {
        k,
        c1,
        c2,
        c3,
        d,
        e,
        qk: q,
        qk_lt_1,
        zero_terms,
        c3_closed_form: true,
        e_integral: true,
        routes_agree: true,
        dim_below_bound,
    })
}

pub fn sweep(k_from: u64, k_to: u64) -> Result<Vec<CountReport>, CountingError> {
    require_k(k_from)?;
    if k_from > k_to {
        return Err(CountingError::EmptyRange { from: k_from, to: k_to });
    }
    (k_from..=k_to).map(report).collect()
}

/// `E - D`, positive for every `k >= 1`.
pub fn e_minus_d(k: u64) -> Result<BigInt, CountingError> {
    let gap = e_val(k)? - d_val(k)?;
    debug_assert!(gap.is_positive());
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal triangle rows `0..=rows`.
    fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = alloc::vec![alloc::vec![BigInt::one()]];
        for r in 1..=rows {
            let prev = &out[r - 1];
            let mut row = alloc::vec![BigInt::one(); r + 1];
            for i in 1..r {
                row[i] = &prev[i - 1] + &prev[i];
            }
            out.push(row);
        }
        out
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(&int(10), 4), int(210));
        assert_eq!(binom(&int(6), 9), int(0));
        assert_eq!(binom(&int(6), -1), int(0));
        assert_eq!(binom(&int(15), 7), int(6435));
        assert_eq!(binom(&int(0), 0), int(1));
    }

    #[test]
    fn binom_matches_pascal() {
        let rows = pascal(60);
        for (n, row) in rows.iter().enumerate() {
            for (r, v) in row.iter().enumerate() {
                assert_eq!(&binom(&int(n as i64), r as i64), v);
            }
        }
    }

    #[test]
    fn counts_at_small_k() {
        assert_eq!(c1(2).unwrap(), int(1590));
        assert_eq!(c1(1).unwrap(), int(111));
        assert_eq!(c2(2).unwrap(), int(15781));
        assert_eq!(c3_sum(2).unwrap(), int(14893));
        assert_eq!(c3_sum(1).unwrap(), int(794));
        assert_eq!(a_closed(2).unwrap(), int(14893));
        assert_eq!(a_closed(1).unwrap(), int(794));
        assert_eq!(d_val(2).unwrap(), int(17371));
        assert_eq!(e_val(2).unwrap(), int(17875));
        assert_eq!(e_minus_d(2).unwrap(), int(504));
        assert_eq!(qk(2).unwrap(), BigRational::new(int(4033), int(4096)));
        assert!(c1(0).is_err());
    }

    #[test]
    fn k_one() {
        // C2(1) = B(6,7) + 7 B(6,6) + 21 B(6,5) + 7 B(6,4) + 28 B(6,3) + 21 B(6,2)
        let c2_1 = 0 + 7 + 21 * 6 + 7 * 15 + 28 * 20 + 21 * 15;
        assert_eq!(c2(1).unwrap(), int(c2_1));
        let r = report(1).unwrap();
        assert_eq!(r.zero_terms, alloc::vec!["B(4k+2, 2k+5)"]);
        assert!(r.d < r.e);
        assert_eq!(r.qk, BigRational::new(int(111 + c2_1 + 794), int(2048)));
        assert!(report(2).unwrap().zero_terms.is_empty());
    }

    #[test]
    fn c3_against_pascal() {
        let rows = pascal(4 * 30 + 9);
        for k in 1..=30u64 {
            let top = (4 * k + 9) as usize;
            let expected: BigInt = (2 * k as usize + 7..=top)
                .step_by(2)
                .map(|i| rows[top][i].clone())
                .sum();
            assert_eq!(c3_sum(k).unwrap(), expected);
        }
    }

    #[test]
    fn summand_count() {
        for k in 1..=20u64 {
            let count = (2 * k + 7..=4 * k + 9).step_by(2).count() as u64;
            assert_eq!(count, k + 2);
            assert!(c3_sum(k).unwrap() < pow2(4 * k + 8));
        }
    }

    #[test]
    fn gamma_small() {
        let checks = verify_gamma_identity(1).unwrap();
        assert_eq!(checks[0].lhs, int(105));
        assert_eq!(checks[0].rhs, int(5040 / 48));
        assert_eq!(checks[1].lhs, int(10395));
    }

    #[test]
    fn c3_identity_small() {
        let checks = verify_c3_identity(2).unwrap();
        assert_eq!(checks[0].lhs, int(794));
        assert_eq!(checks[1].rhs, int(14893));
        assert!(verify_c3_identity(0).is_err());
    }

    #[test]
    fn sweep_errors() {
        assert_eq!(sweep(3, 2), Err(CountingError::EmptyRange { from: 3, to: 2 }));
        assert_eq!(sweep(0, 2), Err(CountingError::KOutOfRange { k: 0, min: 1 }));
        let r = sweep(2, 2).unwrap();
        assert_eq!(r[0].qk, BigRational::new(int(4033), int(4096)));
        assert!(r[0].qk_lt_1 && r[0].dim_below_bound);
    }
}
